//! Exact arithmetic at a real algebraic point: Q[z] modulo a square-free
//! defining polynomial, with the designated root pinned by an isolating
//! interval. The modulus need not be irreducible; inversions that discover a
//! factorization deflate it on the fly (dynamic evaluation), which keeps the
//! designated root and makes every zero test exact.

use super::gcd::{poly_gcd, squarefree_part_univariate};
use super::poly::{MultiPoly, VarSet};
use super::roots::RealRootInterval;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A real algebraic number given by a square-free polynomial and an
/// isolating interval, supporting exact field arithmetic on Q-polynomial
/// expressions in it.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    /// Square-free modulus, univariate in an internal variable.
    modulus: Vec<BigRational>,
    lower: BigRational,
    upper: BigRational,
}

/// Element of Q[z]/(modulus): dense coefficient vector of degree < deg(modulus).
pub type AlgElem = Vec<BigRational>;

fn dense_of(p: &MultiPoly, var: usize) -> Vec<BigRational> {
    let d = p.degree_in(var) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] = c.clone();
    }
    out
}

fn trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
}

fn eval_dense(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn dense_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(&mut out);
    out
}

fn dense_rem(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lm = m.last().unwrap();
    while r.len() - 1 >= dm && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let q = r.last().unwrap() / lm;
        let shift = dr - dm;
        for i in 0..m.len() {
            let t = &m[i] * &q;
            r[i + shift] -= t;
        }
        trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn dense_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let vars = VarSet::of(&["z"]);
    let pa = MultiPoly::from_univariate_coeffs(&vars, 0, a);
    let pb = MultiPoly::from_univariate_coeffs(&vars, 0, b);
    dense_of(&poly_gcd(&pa, &pb), 0)
}

impl AlgebraicPoint {
    /// Build from an isolating interval; the defining polynomial is replaced
    /// by its square-free part.
    pub fn new(interval: &RealRootInterval) -> Self {
        let sf = squarefree_part_univariate(&interval.poly, interval.var);
        AlgebraicPoint {
            modulus: dense_of(&sf, interval.var),
            lower: interval.lower.clone(),
            upper: interval.upper.clone(),
        }
    }

    /// A rational number as a degenerate algebraic point (modulus z - r).
    pub fn rational(r: &BigRational) -> Self {
        AlgebraicPoint {
            modulus: vec![-r.clone(), BigRational::one()],
            lower: r - BigRational::one(),
            upper: r + BigRational::one(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn generator(&self) -> AlgElem {
        if self.degree() == 1 {
            // z = root exactly
            vec![-self.modulus[0].clone() / &self.modulus[1]]
        } else {
            vec![BigRational::zero(), BigRational::one()]
        }
    }

    pub fn from_rational_elem(&self, c: &BigRational) -> AlgElem {
        vec![c.clone()]
    }

    pub fn reduce(&self, e: &AlgElem) -> AlgElem {
        let mut r = dense_rem(e, &self.modulus);
        trim(&mut r);
        r
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(&mut out);
        out
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        a.iter().map(|c| -c.clone()).collect()
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.reduce(&dense_mul(a, b))
    }

    pub fn scale(&self, a: &AlgElem, c: &BigRational) -> AlgElem {
        let mut out: AlgElem = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    /// Exact test: does the element vanish at the designated root?
    pub fn is_zero(&self, a: &AlgElem) -> bool {
        let r = self.reduce(a);
        if r.len() == 1 {
            return r[0].is_zero();
        }
        let h = dense_gcd(&r, &self.modulus);
        if h.len() == 1 {
            return false;
        }
        self.root_of(&h)
    }

    /// Does `h` (a divisor of the modulus) have the designated root?
    fn root_of(&self, h: &[BigRational]) -> bool {
        let sl = eval_dense(h, &self.lower);
        let su = eval_dense(h, &self.upper);
        // interval endpoints are off the modulus roots, hence off h's roots
        debug_assert!(!sl.is_zero() && !su.is_zero());
        sl.is_positive() != su.is_positive()
    }

    /// Invert an element; deflates the modulus when a factor is discovered.
    pub fn invert(&mut self, a: &AlgElem) -> Result<AlgElem> {
        loop {
            let r = self.reduce(a);
            if r.len() == 1 {
                if r[0].is_zero() {
                    return Err(Error::DivisionByZero);
                }
                return Ok(vec![r[0].recip()]);
            }
            let h = dense_gcd(&r, &self.modulus);
            if h.len() == 1 {
                // coprime: extended Euclid gives the inverse
                return Ok(self.ext_gcd_inverse(&r));
            }
            if self.root_of(&h) {
                return Err(Error::DivisionByZero);
            }
            // the root lives in modulus/h: deflate and retry
            self.deflate_by(&h);
        }
    }

    fn deflate_by(&mut self, h: &[BigRational]) {
        let vars = VarSet::of(&["z"]);
        let m = MultiPoly::from_univariate_coeffs(&vars, 0, &self.modulus);
        let hh = MultiPoly::from_univariate_coeffs(&vars, 0, h);
        let q = m.div_exact(&hh);
        self.modulus = dense_of(&q, 0);
    }

    fn ext_gcd_inverse(&self, a: &AlgElem) -> AlgElem {
        // extended Euclid in Q[z] for gcd(a, modulus) = 1
        let mut r0 = self.modulus.clone();
        let mut r1 = a.clone();
        let mut s0: AlgElem = vec![BigRational::zero()];
        let mut s1: AlgElem = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            // q, rem of r0 / r1
            let (q, rem) = dense_divmod(&r0, &r1);
            let qs1 = dense_mul(&q, &s1);
            let mut ns = vec![BigRational::zero(); s0.len().max(qs1.len())];
            for (i, c) in s0.iter().enumerate() {
                ns[i] += c;
            }
            for (i, c) in qs1.iter().enumerate() {
                ns[i] -= c;
            }
            trim(&mut ns);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = ns;
        }
        // r0 = gcd (a unit); normalize
        debug_assert_eq!(r0.len(), 1);
        let inv = r0[0].recip();
        self.reduce(&s0.iter().map(|c| c * &inv).collect())
    }

    /// Refine the isolating interval until its width is below 2^-bits.
    pub fn refine(&mut self, bits: u32) {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        while &self.upper - &self.lower > target {
            let mid = (&self.lower + &self.upper) / BigRational::from(BigInt::from(2));
            let fm = eval_dense(&self.modulus, &mid);
            if fm.is_zero() {
                // land exactly on the root; shrink symmetrically
                let w = (&self.upper - &self.lower) / BigRational::from(BigInt::from(1024));
                let lo = &mid - &w;
                let hi = &mid + &w;
                if eval_dense(&self.modulus, &lo).is_positive()
                    != eval_dense(&self.modulus, &hi).is_positive()
                {
                    self.lower = lo;
                    self.upper = hi;
                    continue;
                }
                break;
            }
            if eval_dense(&self.modulus, &self.lower).is_positive() != fm.is_positive() {
                self.upper = mid;
            } else {
                self.lower = mid;
            }
        }
    }

    /// Value of the root at the requested precision.
    pub fn value(&mut self, prec: u32) -> BigFloat {
        self.refine(prec + 8);
        let mid = (&self.lower + &self.upper) / BigRational::from(BigInt::from(2));
        BigFloat::from_rational(&mid, prec)
    }

    /// Evaluate an element at the root, at the requested precision.
    pub fn eval_elem(&mut self, a: &AlgElem, prec: u32) -> BigFloat {
        let r = self.reduce(a);
        if r.len() == 1 {
            return BigFloat::from_rational(&r[0], prec);
        }
        // guard digits against cancellation in the Horner sum
        let x = self.value(prec + 64);
        let mut acc = BigFloat::zero(prec + 64);
        for c in r.iter().rev() {
            acc = acc.mul(&x).add(&BigFloat::from_rational(c, prec + 64));
        }
        acc.with_precision(prec)
    }

    /// Multiplicity of the root in an exact polynomial (dense coefficients).
    pub fn valuation_of(&self, dense: &[BigRational]) -> usize {
        let mut p = dense.to_vec();
        trim(&mut p);
        if p.len() == 1 && p[0].is_zero() {
            return usize::MAX;
        }
        let mut k = 0usize;
        loop {
            if !self.is_zero(&self.reduce(&p)) {
                return k;
            }
            k += 1;
            // derivative
            p = p
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect();
            trim(&mut p);
            if p.len() == 1 && p[0].is_zero() {
                return k;
            }
        }
    }
}

fn dense_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = r.last().unwrap() / lb;
        let shift = dr - db;
        q[shift] = c.clone();
        for i in 0..b.len() {
            let t = &b[i] * &c;
            r[i + shift] -= t;
        }
        trim(&mut r);
        if dr == db {
            break;
        }
    }
    trim(&mut q);
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::roots::isolate_real_roots;

    fn sqrt2_point() -> AlgebraicPoint {
        let v = VarSet::of(&["x"]);
        let p = MultiPoly::from_univariate_coeffs(
            &v,
            0,
            &[
                BigRational::from(BigInt::from(-2)),
                BigRational::zero(),
                BigRational::one(),
            ],
        );
        let roots = isolate_real_roots(&p).unwrap();
        AlgebraicPoint::new(&roots[1]) // positive root
    }

    #[test]
    fn field_arithmetic_at_sqrt2() {
        let mut pt = sqrt2_point();
        let z = pt.generator();
        let z2 = pt.mul(&z, &z);
        // z^2 - 2 = 0
        let two = pt.from_rational_elem(&BigRational::from(BigInt::from(2)));
        assert!(pt.is_zero(&pt.sub(&z2, &two)));
        // 1/z = z/2
        let inv = pt.invert(&z).unwrap();
        let half_z = pt.scale(&z, &BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(pt.is_zero(&pt.sub(&inv, &half_z)));
    }

    #[test]
    fn deflation_on_reducible_modulus() {
        // modulus (x^2 - 2)(x - 3), designated root sqrt(2)
        let v = VarSet::of(&["x"]);
        let p = MultiPoly::from_univariate_coeffs(
            &v,
            0,
            &[
                BigRational::from(BigInt::from(6)),
                BigRational::from(BigInt::from(-2)),
                BigRational::from(BigInt::from(-3)),
                BigRational::one(),
            ],
        );
        let roots = isolate_real_roots(&p).unwrap();
        // roots: -sqrt2, sqrt2, 3
        let mut pt = AlgebraicPoint::new(&roots[1]);
        let z = pt.generator();
        // z - 3 is invertible at sqrt2 and forces a deflation
        let three = pt.from_rational_elem(&BigRational::from(BigInt::from(3)));
        let zm3 = pt.sub(&z, &three);
        let inv = pt.invert(&zm3).unwrap();
        let prod = pt.mul(&inv, &zm3);
        let one = pt.from_rational_elem(&BigRational::one());
        assert!(pt.is_zero(&pt.sub(&prod, &one)));
        assert_eq!(pt.degree(), 2);
    }

    #[test]
    fn valuation_counts_multiplicity() {
        let pt = sqrt2_point();
        // p = (x^2 - 2)^2 (x + 1): valuation 2 at sqrt2
        let v = VarSet::of(&["x"]);
        let base = MultiPoly::from_univariate_coeffs(
            &v,
            0,
            &[
                BigRational::from(BigInt::from(-2)),
                BigRational::zero(),
                BigRational::one(),
            ],
        );
        let p = base.mul(&base).mul(&MultiPoly::from_univariate_coeffs(
            &v,
            0,
            &[BigRational::one(), BigRational::one()],
        ));
        let dense: Vec<BigRational> = (0..=p.degree_in(0))
            .map(|i| {
                let mut e = vec![0u32];
                e[0] = i;
                p.coeff(&e)
            })
            .collect();
        assert_eq!(pt.valuation_of(&dense), 2);
    }
}
