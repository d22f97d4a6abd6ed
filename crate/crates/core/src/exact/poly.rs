//! Exact multivariate polynomials over arbitrary-precision rationals.

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new(names: Vec<String>) -> Self {
        VarSet(Arc::new(names))
    }

    pub fn of(names: &[&str]) -> Self {
        VarSet(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    /// Scalars: the empty variable list.
    pub fn scalar() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// New set with one variable appended (for Rabinowitsch-style tricks).
    pub fn extended(&self, name: &str) -> VarSet {
        let mut v = self.0.as_ref().clone();
        v.push(name.to_string());
        VarSet(Arc::new(v))
    }
}

pub type Exponents = Vec<u32>;

/// Multivariate polynomial: a map from exponent vectors to nonzero rational
/// coefficients, stored in a canonical (structural) order.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Exponents, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn from_int(vars: &VarSet, c: i64) -> Self {
        Self::constant(vars, BigRational::from(BigInt::from(c)))
    }

    pub fn var(vars: &VarSet, idx: usize) -> Self {
        Self::monomial(vars, &{
            let mut e = vec![0; vars.len()];
            e[idx] = 1;
            e
        }, BigRational::one())
    }

    pub fn monomial(vars: &VarSet, exps: &[u32], c: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<&BigRational> {
        if self.is_zero() {
            None
        } else if self.is_constant() {
            self.terms.values().next()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    fn insert_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let ne: Exponents = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.insert_term(ne, c * BigRational::from(BigInt::from(e[var])));
        }
        out
    }

    /// Substitute variable `var` by a polynomial over the same variable set.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        let max_deg = self.degree_in(var);
        // powers of value, computed once
        let mut powers = Vec::with_capacity(max_deg as usize + 1);
        powers.push(Self::one(&self.vars));
        for k in 1..=max_deg {
            let prev = powers[(k - 1) as usize].clone();
            powers.push(prev.mul(value));
        }
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut base = e.clone();
            let d = base[var];
            base[var] = 0;
            out = out.add(&powers[d as usize].mul_monomial(&base, c));
        }
        out
    }

    /// Evaluate one variable at a rational point, producing a polynomial in
    /// the same ring with that variable eliminated in effect.
    pub fn eval_var(&self, var: usize, value: &BigRational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne[var];
            ne[var] = 0;
            let mut pow = BigRational::one();
            for _ in 0..d {
                pow *= value;
            }
            out.insert_term(ne, c * pow);
        }
        out
    }

    pub fn eval_all(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &d) in e.iter().enumerate() {
                t *= point[i].powi(d as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (i, &d) in e.iter().enumerate() {
                t *= point[i].powu(d);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_bigfloat(&self, point: &[BigFloat], prec: u32) -> BigFloat {
        let mut acc = BigFloat::zero(prec);
        for (e, c) in &self.terms {
            let mut t = BigFloat::from_rational(c, prec);
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    t = t.mul(&point[i].powi(d as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Rational content: gcd of coefficient numerators over lcm of denominators.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num_integer::gcd(num, c.numer().abs());
            den = num_integer::lcm(den, c.denom().clone());
        }
        if num.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(num, den)
        }
    }

    /// Divide by the content: integer coefficients with gcd one. Sign is kept.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Primitive with positive leading coefficient under the structural term order.
    pub fn normalized_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.primitive_part();
        let lead_negative = p.terms.iter().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_negative {
            p.neg()
        } else {
            p
        }
    }

    /// Exact division; panics if the division is not exact. Used by
    /// fraction-free elimination where exactness is guaranteed.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        self.try_div_exact(divisor).expect("division was not exact")
    }

    pub fn try_div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        let (de, dc) = divisor.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            let mut qe = vec![0u32; re.len()];
            for i in 0..re.len() {
                if re[i] < de[i] {
                    return None;
                }
                qe[i] = re[i] - de[i];
            }
            let qc = rc / &dc;
            quot.insert_term(qe.clone(), qc.clone());
            rem = rem.sub(&divisor.mul_monomial(&qe, &qc));
        }
        Some(quot)
    }

    /// Map this polynomial into a ring with more variables; `map[i]` gives the
    /// index of old variable `i` in the new set.
    pub fn embed(&self, new_vars: &VarSet, map: &[usize]) -> Self {
        let mut out = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; new_vars.len()];
            for (i, &d) in e.iter().enumerate() {
                ne[map[i]] = d;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Dense coefficient vector [c0, c1, ...] of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<BigRational>> {
        if self.vars.len() != 1 {
            // also accept polynomials that only use one variable
            let used: Vec<usize> = (0..self.vars.len())
                .filter(|&i| self.degree_in(i) > 0)
                .collect();
            if used.len() > 1 {
                return Err(Error::Unsupported("polynomial is not univariate".into()));
            }
            let var = used.first().copied().unwrap_or(0);
            let d = self.degree_in(var) as usize;
            let mut out = vec![BigRational::zero(); d + 1];
            for (e, c) in &self.terms {
                out[e[var] as usize] = c.clone();
            }
            return Ok(out);
        }
        let d = self.degree_in(0) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate_coeffs(vars: &VarSet, var: usize, coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; vars.len()];
            e[var] = i as u32;
            p.insert_term(e, c.clone());
        }
        p
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back through BigFloat for extreme magnitudes
        BigFloat::from_rational(c, 64).to_f64()
    })
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest structural term first
        for (e, c) in self.terms.iter().rev() {
            let mono = format_monomial(&self.vars, e);
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub fn format_monomial(vars: &VarSet, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &d) in exps.iter().enumerate() {
        if d == 1 {
            parts.push(vars.names()[i].clone());
        } else if d > 1 {
            parts.push(format!("{}^{}", vars.names()[i], d));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarSet {
        VarSet::of(&["x", "y"])
    }

    fn p(vars: &VarSet, terms: &[(i64, &[u32])]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (c, e) in terms {
            out = out.add(&MultiPoly::monomial(vars, e, BigRational::from(BigInt::from(*c))));
        }
        out
    }

    #[test]
    fn mul_and_eval() {
        let v = xy();
        let f = p(&v, &[(1, &[1, 0]), (2, &[0, 1])]); // x + 2y
        let g = p(&v, &[(1, &[1, 0]), (-2, &[0, 1])]); // x - 2y
        let h = f.mul(&g); // x^2 - 4y^2
        assert_eq!(h, p(&v, &[(1, &[2, 0]), (-4, &[0, 2])]));
        let val = h.eval_all(&[BigRational::from(BigInt::from(3)), BigRational::from(BigInt::from(1))]);
        assert_eq!(val, BigRational::from(BigInt::from(5)));
    }

    #[test]
    fn derivative_and_subst() {
        let v = xy();
        let f = p(&v, &[(1, &[2, 1])]); // x^2 y
        assert_eq!(f.derivative(0), p(&v, &[(2, &[1, 1])]));
        let shifted = f.substitute(0, &p(&v, &[(1, &[1, 0]), (1, &[0, 0])])); // x -> x+1
        assert_eq!(shifted, p(&v, &[(1, &[2, 1]), (2, &[1, 1]), (1, &[0, 1])]));
    }

    #[test]
    fn primitive_normalization() {
        let v = xy();
        let f = p(&v, &[(-4, &[2, 0]), (-6, &[0, 1])]);
        let g = f.normalized_primitive();
        assert_eq!(g, p(&v, &[(2, &[2, 0]), (3, &[0, 1])]));
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let f = p(&v, &[(1, &[2, 0]), (-4, &[0, 2])]);
        let g = p(&v, &[(1, &[1, 0]), (2, &[0, 1])]);
        let q = f.div_exact(&g);
        assert_eq!(q, p(&v, &[(1, &[1, 0]), (-2, &[0, 1])]));
        assert!(f.try_div_exact(&p(&v, &[(1, &[0, 1])])).is_none());
    }
}
