//! Reduced fractions of multivariate polynomials.

use super::gcd::poly_gcd;
use super::poly::{MultiPoly, VarSet};
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

/// Rational function: numerator over denominator, reduced by their gcd, with
/// the denominator primitive and positively normalized.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFun {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.check_same_vars(&den)?;
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFun { den: MultiPoly::one(num.vars()), num };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        // normalize: denominator primitive with positive lead
        let dnorm = den.normalized_primitive();
        let scale = {
            // den = c * dnorm with c rational
            let c_den = den.content();
            let neg = den.sub(&dnorm.scale(&c_den)).is_zero();
            if neg {
                c_den
            } else {
                -c_den
            }
        };
        num = num.scale(&scale.recip());
        den = dnorm;
        RatFun { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFun { den: MultiPoly::one(p.vars()), num: p }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn from_rational(vars: &VarSet, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.vars()).div(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        Self::reduced(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval_all(point);
        if d == BigRational::from_integer(0.into()) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_all(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    pub fn eval_bigfloat(&self, point: &[BigFloat], prec: u32) -> BigFloat {
        self.num.eval_bigfloat(point, prec).div(&self.den.eval_bigfloat(point, prec))
    }

    pub fn embed(&self, new_vars: &VarSet, map: &[usize]) -> Self {
        RatFun { num: self.num.embed(new_vars, map), den: self.den.embed(new_vars, map) }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.num_terms() > 1 { format!("({})", self.num) } else { format!("{}", self.num) };
            let d = if self.den.num_terms() > 1 { format!("({})", self.den) } else { format!("{}", self.den) };
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v() -> VarSet {
        VarSet::of(&["x", "y"])
    }

    fn t(c: i64, e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(&v(), e, BigRational::from(BigInt::from(c)))
    }

    #[test]
    fn reduction() {
        // (x^2 - y^2) / (x - y) = x + y
        let num = t(1, &[2, 0]).sub(&t(1, &[0, 2]));
        let den = t(1, &[1, 0]).sub(&t(1, &[0, 1]));
        let r = RatFun::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &t(1, &[1, 0]).add(&t(1, &[0, 1])));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (x/y) = 1/y
        let r = RatFun::new(t(1, &[1, 0]), t(1, &[0, 1])).unwrap();
        let d = r.derivative(0);
        assert_eq!(d, RatFun::new(t(1, &[0, 0]), t(1, &[0, 1])).unwrap());
        // d/dy (x/y) = -x/y^2
        let d = r.derivative(1);
        assert_eq!(d, RatFun::new(t(-1, &[1, 0]), t(1, &[0, 2])).unwrap());
    }

    #[test]
    fn denominator_normalization() {
        // x / (-2y) stores as (-1/2 x) / y
        let r = RatFun::new(t(1, &[1, 0]), t(-2, &[0, 1])).unwrap();
        assert_eq!(r.den(), &t(1, &[0, 1]));
        assert_eq!(r.num().coeff(&[1, 0]), BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }
}
