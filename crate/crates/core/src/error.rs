//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("operands have different variable lists")]
    VariableMismatch,
    #[error("zero input not allowed: {0}")]
    ZeroInput(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial has degree zero in {0}")]
    DegreeZero(String),
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("generator is not of torus-fixed shape x^a p(theta) d^b")]
    NotTorusFixed,
    #[error("initial ideal is not torus-fixed; weight vector appears non-generic")]
    NonGenericWeight,
    #[error("ideal in C[theta] is not Artinian")]
    NonArtinian,
    #[error("zero set contains an irrational point")]
    IrrationalZero,
    #[error("indicial root is irrational; only rational exponents are supported")]
    IrrationalExponent,
    #[error("point is an irregular singular point of the operator")]
    IrregularSingular,
    #[error("holonomic rank is infinite")]
    InfiniteRank,
    #[error("Pfaffian integrability residual is nonzero")]
    NotIntegrable,
    #[error("singular point inside continuation segment")]
    SingularityOnPath,
    #[error("requested precision not achieved within iteration cap")]
    PrecisionUnachievable,
    #[error("initial conditions do not determine the function (rank-deficient constraints)")]
    RankDeficientConstraints,
    #[error("initial conditions are mutually inconsistent beyond tolerance")]
    InconsistentConstraints,
    #[error("closure operation needs a common anchor point for multivariate representations")]
    NoCommonAnchor,
    #[error("operator/witness combination is not supported: {0}")]
    UnsupportedWitness(&'static str),
    #[error("requested series coefficient lies beyond the known truncation order")]
    TruncationExceeded,
    #[error("function does not extend continuously to the endpoint")]
    DivergentAtEndpoint,
    #[error("waypoint too close to the denominator variety of the Pfaffian system")]
    DenominatorThreshold,
    #[error("no feasible descent step avoids the singular locus")]
    NoFeasibleStep,
    #[error("empty fiber or ambiguous root pairing at abscissa")]
    FiberPairing,
    #[error("elimination ideal is not principal univariate")]
    EliminationNotUnivariate,
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
