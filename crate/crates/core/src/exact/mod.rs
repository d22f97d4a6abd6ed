//! Exact scalar, polynomial and rational-function substrate, commutative
//! Groebner machinery, Sylvester resultants, and univariate real-root
//! isolation/refinement. Coefficients are exact rationals throughout.

pub mod algebraic;
pub mod gcd;
pub mod groebner;
pub mod order;
pub mod poly;
pub mod ratfun;
pub mod resultant;
pub mod roots;

pub use algebraic::AlgebraicPoint;
pub use groebner::{commutative_groebner, eliminate, ideal_intersection, normal_form, saturate};
pub use order::{MonomialOrder, TieBreak};
pub use poly::{MultiPoly, VarSet};
pub use ratfun::RatFun;
pub use resultant::sylvester_resultant;
pub use roots::{isolate_real_roots, refine_root, RealRootInterval};
