//! Expression witnesses: concrete symbolic function classes that operators
//! can be applied to exactly. Used to verify annihilators and to run the
//! truncated-series application oracle.

use super::{WeylElement, WeylRing};
use crate::error::{Error, Result};
use crate::exact::poly::{MultiPoly, VarSet};
use crate::exact::ratfun::RatFun;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Symbolic function families closed under the action of D (resp. D[s]).
/// All rational data lives over the combined variable set x_1..x_n followed
/// by the ring parameters, so parametric exponents are ordinary polynomials.
#[derive(Clone, Debug)]
pub enum ExprWitness {
    /// A rational function of x (coefficients may involve parameters).
    Rational(RatFun),
    /// prefactor * exp(exponent), both rational.
    Exp { exponent: RatFun, prefactor: RatFun },
    /// prefactor * prod_j f_j ^ e_j with f_j rational in x and e_j a
    /// polynomial in the parameters (affine in applications).
    PowerProduct { factors: Vec<(RatFun, MultiPoly)>, prefactor: RatFun },
    /// Truncated generalized series at a point (univariate, exact).
    Series(SeriesWitness),
}

/// Exact truncated series sum_{j,k} c_{j,k} (x - x0)^(rho + j) log(x - x0)^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWitness {
    pub x0: BigRational,
    pub rho: BigRational,
    /// coeffs[j][k]; j is the shift above rho, k the log power.
    pub coeffs: Vec<Vec<BigRational>>,
}

/// Combined variable set for witnesses of a given ring.
pub fn witness_vars(ring: &WeylRing) -> VarSet {
    let mut names: Vec<String> = (0..ring.n()).map(|i| ring.x_name(i)).collect();
    names.extend(ring.params().names().iter().cloned());
    VarSet::new(names)
}

impl ExprWitness {
    pub fn rational(r: RatFun) -> Self {
        ExprWitness::Rational(r)
    }

    pub fn exp_of(r: RatFun) -> Self {
        let one = RatFun::one(r.vars());
        ExprWitness::Exp { exponent: r, prefactor: one }
    }

    pub fn power_product(factors: Vec<(RatFun, MultiPoly)>, prefactor: RatFun) -> Self {
        ExprWitness::PowerProduct { factors, prefactor }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExprWitness::Rational(r) => r.is_zero(),
            ExprWitness::Exp { prefactor, .. } => prefactor.is_zero(),
            ExprWitness::PowerProduct { prefactor, .. } => prefactor.is_zero(),
            ExprWitness::Series(s) => s.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero())),
        }
    }

    fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ExprWitness::Rational(a), ExprWitness::Rational(b)) => {
                Ok(ExprWitness::Rational(a.add(b)))
            }
            (
                ExprWitness::Exp { exponent: ea, prefactor: pa },
                ExprWitness::Exp { exponent: eb, prefactor: pb },
            ) => {
                if ea != eb {
                    return Err(Error::UnsupportedWitness("sum of unlike exponentials"));
                }
                Ok(ExprWitness::Exp { exponent: ea.clone(), prefactor: pa.add(pb) })
            }
            (
                ExprWitness::PowerProduct { factors: fa, prefactor: pa },
                ExprWitness::PowerProduct { factors: fb, prefactor: pb },
            ) => {
                if fa != fb {
                    return Err(Error::UnsupportedWitness("sum of unlike power products"));
                }
                Ok(ExprWitness::PowerProduct { factors: fa.clone(), prefactor: pa.add(pb) })
            }
            (ExprWitness::Series(a), ExprWitness::Series(b)) => Ok(ExprWitness::Series(a.add(b)?)),
            _ => Err(Error::UnsupportedWitness("sum of unlike witnesses")),
        }
    }

    /// Derivative with respect to x_i, exact within the family.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        match self {
            ExprWitness::Rational(r) => Ok(ExprWitness::Rational(r.derivative(i))),
            ExprWitness::Exp { exponent, prefactor } => {
                let p = prefactor.derivative(i).add(&prefactor.mul(&exponent.derivative(i)));
                Ok(ExprWitness::Exp { exponent: exponent.clone(), prefactor: p })
            }
            ExprWitness::PowerProduct { factors, prefactor } => {
                // log-derivative: sum_j e_j f_j' / f_j
                let vars = prefactor.vars();
                let mut logd = RatFun::zero(vars);
                for (f, e) in factors {
                    let term = RatFun::from_poly(e.clone()).mul(&f.derivative(i).div(f)?);
                    logd = logd.add(&term);
                }
                let p = prefactor.derivative(i).add(&prefactor.mul(&logd));
                Ok(ExprWitness::PowerProduct { factors: factors.clone(), prefactor: p })
            }
            ExprWitness::Series(s) => {
                if i != 0 {
                    return Err(Error::UnsupportedWitness("series witnesses are univariate"));
                }
                Ok(ExprWitness::Series(s.derivative()))
            }
        }
    }

    /// Multiply by the coordinate x_i.
    pub fn mul_x(&self, i: usize) -> Result<Self> {
        let scale_by_x = |r: &RatFun| -> RatFun {
            let x = RatFun::from_poly(MultiPoly::var(r.vars(), i));
            r.mul(&x)
        };
        match self {
            ExprWitness::Rational(r) => Ok(ExprWitness::Rational(scale_by_x(r))),
            ExprWitness::Exp { exponent, prefactor } => Ok(ExprWitness::Exp {
                exponent: exponent.clone(),
                prefactor: scale_by_x(prefactor),
            }),
            ExprWitness::PowerProduct { factors, prefactor } => Ok(ExprWitness::PowerProduct {
                factors: factors.clone(),
                prefactor: scale_by_x(prefactor),
            }),
            ExprWitness::Series(s) => {
                if i != 0 {
                    return Err(Error::UnsupportedWitness("series witnesses are univariate"));
                }
                Ok(ExprWitness::Series(s.mul_x()))
            }
        }
    }

    /// Multiply by a polynomial in the combined (x, params) variables.
    fn mul_poly(&self, c: &MultiPoly) -> Result<Self> {
        match self {
            ExprWitness::Rational(r) => Ok(ExprWitness::Rational(r.mul(&RatFun::from_poly(c.clone())))),
            ExprWitness::Exp { exponent, prefactor } => Ok(ExprWitness::Exp {
                exponent: exponent.clone(),
                prefactor: prefactor.mul(&RatFun::from_poly(c.clone())),
            }),
            ExprWitness::PowerProduct { factors, prefactor } => Ok(ExprWitness::PowerProduct {
                factors: factors.clone(),
                prefactor: prefactor.mul(&RatFun::from_poly(c.clone())),
            }),
            ExprWitness::Series(s) => {
                let c0 = c
                    .constant_value()
                    .cloned()
                    .ok_or(Error::UnsupportedWitness("series scaled by a non-constant"))?;
                Ok(ExprWitness::Series(s.scale(&c0)))
            }
        }
    }
}

/// Apply an operator to a witness, exactly.
pub fn apply(op: &WeylElement, w: &ExprWitness) -> Result<ExprWitness> {
    let ring = op.ring();
    let cvars = witness_vars(ring);
    let n = ring.n();
    let mut acc: Option<ExprWitness> = None;
    for ((a, b), c) in op.terms() {
        // embed the parameter-coefficient into the combined variable set
        let cmap: Vec<usize> = (0..ring.params().len()).map(|i| n + i).collect();
        let c_embed = c.embed(&cvars, &cmap);
        let mut cur = w.clone();
        // d^b first
        for (i, &k) in b.iter().enumerate() {
            for _ in 0..k {
                cur = cur.derivative(i)?;
            }
        }
        // then x^a
        for (i, &k) in a.iter().enumerate() {
            for _ in 0..k {
                cur = cur.mul_x(i)?;
            }
        }
        let cur = cur.mul_poly(&c_embed)?;
        acc = Some(match acc {
            None => cur,
            Some(prev) => prev.add(&cur)?,
        });
    }
    acc.ok_or(Error::ZeroInput("applying the zero operator"))
}

/// True iff every operator annihilates the witness exactly.
pub fn annihilates(ops: &[WeylElement], w: &ExprWitness) -> Result<bool> {
    for op in ops {
        if !apply(op, w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SeriesWitness {
    pub fn new(x0: BigRational, rho: BigRational, coeffs: Vec<Vec<BigRational>>) -> Self {
        SeriesWitness { x0, rho, coeffs }
    }

    /// Number of known coefficient rows.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: usize, k: usize) -> BigRational {
        self.coeffs
            .get(j)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        if self.x0 != other.x0 {
            return Err(Error::UnsupportedWitness("series at different points"));
        }
        // align exponents: offsets must differ by an integer
        let diff = &other.rho - &self.rho;
        if !diff.is_integer() {
            return Err(Error::UnsupportedWitness("series with incompatible exponents"));
        }
        let d = diff.to_integer();
        let (base, lo_rho) = if d >= BigInt::zero() {
            (self.clone(), self.rho.clone())
        } else {
            (other.clone(), other.rho.clone())
        };
        let (hi, shift) = if d >= BigInt::zero() {
            (other, (&other.rho - &lo_rho).to_integer())
        } else {
            (self, (&self.rho - &lo_rho).to_integer())
        };
        let shift: usize = shift.try_into().unwrap();
        // truncation: keep only rows known to both
        let base_len = base.len();
        let hi_len = hi.len() + shift;
        let keep = base_len.min(hi_len);
        let mut coeffs = base.coeffs.clone();
        coeffs.truncate(keep);
        for (j, row) in hi.coeffs.iter().enumerate() {
            let jj = j + shift;
            if jj >= keep {
                break;
            }
            for (k, c) in row.iter().enumerate() {
                while coeffs[jj].len() <= k {
                    coeffs[jj].push(BigRational::zero());
                }
                coeffs[jj][k] += c;
            }
        }
        Ok(SeriesWitness { x0: base.x0, rho: lo_rho, coeffs })
    }

    fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        SeriesWitness { x0: self.x0.clone(), rho: self.rho.clone(), coeffs }
    }

    /// d/dx of sum c_{j,k} t^(rho+j) log(t)^k (t = x - x0):
    /// (rho+j) c_{j,k} + (k+1) c_{j,k+1} at exponent rho + j - 1.
    fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (j, row) in self.coeffs.iter().enumerate() {
            let e = &self.rho + BigRational::from(BigInt::from(j));
            let width = row.len();
            let mut out = vec![BigRational::zero(); width];
            for (k, item) in out.iter_mut().enumerate() {
                let mut v = &e * self.coeff(j, k);
                if k + 1 < width {
                    v += BigRational::from(BigInt::from(k as i64 + 1)) * self.coeff(j, k + 1);
                }
                *item = v;
            }
            coeffs.push(out);
        }
        SeriesWitness {
            x0: self.x0.clone(),
            rho: &self.rho - BigRational::one(),
            coeffs,
        }
    }

    /// Multiply by x = x0 + t.
    fn mul_x(&self) -> Self {
        // x0 * self keeps exponents; t * self shifts rows up by one
        let mut coeffs: Vec<Vec<BigRational>> = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|c| c * &self.x0).collect())
            .collect();
        // drop the shifted-in top row to stay within the known truncation
        for j in (1..coeffs.len()).rev() {
            let prev = self.coeffs[j - 1].clone();
            for (k, c) in prev.iter().enumerate() {
                while coeffs[j].len() <= k {
                    coeffs[j].push(BigRational::zero());
                }
                coeffs[j][k] += c;
            }
        }
        SeriesWitness { x0: self.x0.clone(), rho: self.rho.clone(), coeffs }
    }

    /// Largest j such that every coefficient with row index < j is exact.
    pub fn known_rows(&self) -> usize {
        self.coeffs.len()
    }

    /// All known coefficients vanish.
    pub fn is_zero_to_known_order(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratfun(vars: &VarSet, num: &[(i64, &[u32])], den: &[(i64, &[u32])]) -> RatFun {
        let build = |terms: &[(i64, &[u32])]| {
            let mut p = MultiPoly::zero(vars);
            for (c, e) in terms {
                p = p.add(&MultiPoly::monomial(vars, e, BigRational::from(BigInt::from(*c))));
            }
            p
        };
        RatFun::new(build(num), build(den)).unwrap()
    }

    #[test]
    fn euler_minus_one_kills_x1_over_x2() {
        // (x1 d1 - 1) . (x1/x2) = 0
        let ring = WeylRing::new(2);
        let vars = witness_vars(&ring);
        let w = ExprWitness::rational(ratfun(&vars, &[(1, &[1, 0])], &[(1, &[0, 1])]));
        let op = WeylElement::theta(&ring, 0).sub(&WeylElement::one(&ring)).unwrap();
        assert!(apply(&op, &w).unwrap().is_zero());
    }

    #[test]
    fn gaussian_annihilator() {
        // (d + 2x) . exp(-x^2) = 0
        let ring = WeylRing::new(1);
        let vars = witness_vars(&ring);
        let w = ExprWitness::exp_of(ratfun(&vars, &[(-1, &[2])], &[(1, &[0])]));
        let op = WeylElement::d(&ring, 0)
            .add(&WeylElement::scalar_term(&ring, &[1], &[0], BigRational::from(BigInt::from(2))))
            .unwrap();
        assert!(apply(&op, &w).unwrap().is_zero());
        // but d alone does not annihilate it
        let d = WeylElement::d(&ring, 0);
        assert!(!apply(&d, &w).unwrap().is_zero());
    }

    #[test]
    fn power_product_generic_derivative() {
        // d . x^s = s x^(s-1) != 0
        let params = VarSet::of(&["s1"]);
        let ring = WeylRing::with_params(1, params);
        let vars = witness_vars(&ring);
        let f = ratfun(&vars, &[(1, &[1, 0])], &[(1, &[0, 0])]);
        let e = MultiPoly::var(&vars, 1); // s1
        let w = ExprWitness::power_product(vec![(f, e)], RatFun::one(&vars));
        let d = WeylElement::d(&ring, 0);
        let out = apply(&d, &w).unwrap();
        assert!(!out.is_zero());
    }

    #[test]
    fn series_derivative_and_shift() {
        // series x^1 (1 + t) at 0: derivative has head exponent 0
        let s = SeriesWitness::new(
            BigRational::zero(),
            BigRational::one(),
            vec![vec![BigRational::one()], vec![BigRational::one()]],
        );
        let w = ExprWitness::Series(s);
        let d = w.derivative(0).unwrap();
        if let ExprWitness::Series(ds) = d {
            assert_eq!(ds.rho, BigRational::zero());
            assert_eq!(ds.coeff(0, 0), BigRational::one());
            assert_eq!(ds.coeff(1, 0), BigRational::from(BigInt::from(2)));
        } else {
            panic!("expected series");
        }
    }
}
