//! Exact arithmetic in the Weyl algebra D = C[x]<d> and its parametric
//! extension D[s]: normal ordering, initial forms under weight vectors, and
//! the torus-fixed shape detector x^a p(theta) d^b.
//!
//! Elements are stored in normal form, all x's to the left of all d's, as a
//! map from exponent pairs (a, b) to coefficients that are polynomials in
//! the (commuting) parameters.

pub mod witness;

use crate::error::{Error, Result};
use crate::exact::poly::{format_monomial, MultiPoly, VarSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The ambient ring: n pairs x_i, d_i plus optional commuting parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylRing {
    n: usize,
    params: VarSet,
}

impl WeylRing {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        WeylRing { n, params: VarSet::scalar() }
    }

    pub fn with_params(n: usize, params: VarSet) -> Self {
        assert!(n >= 1);
        WeylRing { n, params }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &VarSet {
        &self.params
    }

    pub fn has_params(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn x_name(&self, i: usize) -> String {
        format!("x{}", i + 1)
    }

    pub fn d_name(&self, i: usize) -> String {
        format!("d{}", i + 1)
    }

    /// Variable set of the x-coordinates (for polynomial coefficients).
    pub fn x_vars(&self) -> VarSet {
        VarSet::new((0..self.n).map(|i| self.x_name(i)).collect())
    }

    /// Variable set x_1..x_n, xi_1..xi_n for symbols and characteristic ideals.
    pub fn symbol_vars(&self) -> VarSet {
        let mut names: Vec<String> = (0..self.n).map(|i| self.x_name(i)).collect();
        names.extend((0..self.n).map(|i| format!("xi{}", i + 1)));
        VarSet::new(names)
    }

    /// Variable set t_1..t_n used for polynomials in theta_i = x_i d_i.
    pub fn theta_vars(&self) -> VarSet {
        VarSet::new((0..self.n).map(|i| format!("t{}", i + 1)).collect())
    }
}

/// Exponent pair of a normal monomial x^a d^b.
pub type NormalMono = (Vec<u32>, Vec<u32>);

/// An element of D (or D[s]) in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    ring: WeylRing,
    terms: BTreeMap<NormalMono, MultiPoly>,
}

/// Weight vector (u, v) with u + v >= 0 componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub u: Vec<BigRational>,
    pub v: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(u: Vec<BigRational>, v: Vec<BigRational>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::VariableMismatch);
        }
        for (a, b) in u.iter().zip(&v) {
            if (a + b).is_negative() {
                return Err(Error::Unsupported("weight vector needs u + v >= 0".into()));
            }
        }
        Ok(WeightVector { u, v })
    }

    /// The symbol weight (0, e).
    pub fn symbol(n: usize) -> Self {
        WeightVector {
            u: vec![BigRational::zero(); n],
            v: vec![BigRational::one(); n],
        }
    }

    /// (-w, w), the weight pair used for indicial ideals.
    pub fn torus(w: &[BigRational]) -> Self {
        WeightVector { u: w.iter().map(|x| -x.clone()).collect(), v: w.to_vec() }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn weight_of(&self, mono: &NormalMono) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &a) in mono.0.iter().enumerate() {
            if a > 0 {
                acc += &self.u[i] * BigRational::from(BigInt::from(a));
            }
        }
        for (i, &b) in mono.1.iter().enumerate() {
            if b > 0 {
                acc += &self.v[i] * BigRational::from(BigInt::from(b));
            }
        }
        acc
    }

    pub fn is_zero_sum(&self) -> bool {
        self.u.iter().zip(&self.v).all(|(a, b)| (a + b).is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.u.iter().all(|a| !a.is_negative()) && self.v.iter().all(|b| !b.is_negative())
    }
}

/// Initial form of an operator under a weight vector. Coordinates with
/// u_k + v_k > 0 become commutative (d_k turns into xi_k); coordinates with
/// u_k + v_k = 0 stay as honest differential operators. Mixed elements are
/// only constructed, never multiplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub ring: WeylRing,
    /// true where the coordinate became commutative (xi)
    pub commutative: Vec<bool>,
    pub terms: BTreeMap<NormalMono, MultiPoly>,
}

impl GradedElement {
    /// Convert to a polynomial in x, xi when every coordinate is commutative.
    pub fn as_symbol_poly(&self) -> Result<MultiPoly> {
        if !self.commutative.iter().all(|&c| c) {
            return Err(Error::Unsupported("graded element is not fully commutative".into()));
        }
        if self.ring.has_params() {
            return Err(Error::Unsupported("symbol with parameters not supported".into()));
        }
        let vars = self.ring.symbol_vars();
        let n = self.ring.n();
        let mut out = MultiPoly::zero(&vars);
        for ((a, b), c) in &self.terms {
            let mut e = vec![0u32; 2 * n];
            e[..n].copy_from_slice(a);
            e[n..].copy_from_slice(b);
            let coeff = c.constant_value().cloned().unwrap_or_else(BigRational::zero);
            out = out.add(&MultiPoly::monomial(&vars, &e, coeff));
        }
        Ok(out)
    }

    /// Convert back to an operator when no coordinate became commutative.
    pub fn as_operator(&self) -> Result<WeylElement> {
        if self.commutative.iter().any(|&c| c) {
            return Err(Error::Unsupported("graded element has commutative coordinates".into()));
        }
        Ok(WeylElement { ring: self.ring.clone(), terms: self.terms.clone() })
    }
}

impl WeylElement {
    pub fn zero(ring: &WeylRing) -> Self {
        WeylElement { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &WeylRing) -> Self {
        let zeros = vec![0; ring.n];
        Self::term(ring, &zeros, &zeros, MultiPoly::one(&ring.params))
    }

    /// Single normal monomial c(s) x^a d^b.
    pub fn term(ring: &WeylRing, a: &[u32], b: &[u32], c: MultiPoly) -> Self {
        assert_eq!(a.len(), ring.n);
        assert_eq!(b.len(), ring.n);
        let mut e = Self::zero(ring);
        if !c.is_zero() {
            e.terms.insert((a.to_vec(), b.to_vec()), c);
        }
        e
    }

    pub fn scalar_term(ring: &WeylRing, a: &[u32], b: &[u32], c: BigRational) -> Self {
        Self::term(ring, a, b, MultiPoly::constant(&ring.params, c))
    }

    pub fn x(ring: &WeylRing, i: usize) -> Self {
        let mut a = vec![0; ring.n];
        a[i] = 1;
        Self::scalar_term(ring, &a, &vec![0; ring.n], BigRational::one())
    }

    pub fn d(ring: &WeylRing, i: usize) -> Self {
        let mut b = vec![0; ring.n];
        b[i] = 1;
        Self::scalar_term(ring, &vec![0; ring.n], &b, BigRational::one())
    }

    /// theta_i = x_i d_i.
    pub fn theta(ring: &WeylRing, i: usize) -> Self {
        let mut a = vec![0; ring.n];
        a[i] = 1;
        Self::scalar_term(ring, &a.clone(), &a, BigRational::one())
    }

    pub fn constant(ring: &WeylRing, c: BigRational) -> Self {
        Self::scalar_term(ring, &vec![0; ring.n], &vec![0; ring.n], c)
    }

    pub fn param(ring: &WeylRing, idx: usize) -> Self {
        Self::term(ring, &vec![0; ring.n], &vec![0; ring.n], MultiPoly::var(&ring.params, idx))
    }

    pub fn ring(&self) -> &WeylRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMono, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: &[u32], b: &[u32]) -> MultiPoly {
        self.terms
            .get(&(a.to_vec(), b.to_vec()))
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.ring.params))
    }

    pub fn has_params(&self) -> bool {
        self.terms.values().any(|c| !c.is_constant())
    }

    /// Total order in the d-variables.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, b)| b.iter().sum()).max().unwrap_or(0)
    }

    pub(crate) fn insert(&mut self, mono: NormalMono, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k.scale(c));
        }
        out
    }

    pub fn scale_param(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, k) in &self.terms {
            out.insert(m.clone(), k.mul(c));
        }
        out
    }

    /// Normal-ordered product. Per coordinate the commutation expands as
    /// d^b x^a = sum_i binom(a,i) binom(b,i) i! x^(a-i) d^(b-i); with a
    /// homogenization variable active, each swap also carries h^(2i).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_inner(other, None)
    }

    pub(crate) fn mul_homog(&self, other: &Self, h_index: usize) -> Result<Self> {
        self.mul_inner(other, Some(h_index))
    }

    fn mul_inner(&self, other: &Self, h_index: Option<usize>) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let n = self.ring.n;
        let mut out = Self::zero(&self.ring);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                // expand d^b1 x^a2 coordinate by coordinate
                let mut expansion: Vec<(Vec<u32>, Vec<u32>, BigRational, u32)> =
                    vec![(vec![0; n], vec![0; n], BigRational::one(), 0)];
                for k in 0..n {
                    let a = a2[k];
                    let b = b1[k];
                    let imax = a.min(b);
                    let mut next = Vec::with_capacity(expansion.len() * (imax as usize + 1));
                    for i in 0..=imax {
                        let coef = swap_coefficient(a, b, i);
                        for (xa, xb, c, hh) in &expansion {
                            let mut na = xa.clone();
                            let mut nb = xb.clone();
                            na[k] = a - i;
                            nb[k] = b - i;
                            next.push((na, nb, c * &coef, hh + 2 * i));
                        }
                    }
                    expansion = next;
                }
                let coeff = c1.mul(c2);
                for (xa, xb, c, hpow) in expansion {
                    let mono_a: Vec<u32> = a1.iter().zip(&xa).map(|(p, q)| p + q).collect();
                    let mono_b: Vec<u32> = b2.iter().zip(&xb).map(|(p, q)| p + q).collect();
                    let mut term_coeff = coeff.scale(&c);
                    if let Some(h) = h_index {
                        if hpow > 0 {
                            let mut e = vec![0u32; self.ring.params.len()];
                            e[h] = hpow;
                            term_coeff = term_coeff.mul_monomial(&e, &BigRational::one());
                        }
                    }
                    out.insert((mono_a, mono_b), term_coeff);
                }
            }
        }
        Ok(out)
    }

    /// Commutator [p, q] = pq - qp.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Initial form with respect to (u, v): the terms of maximal weight,
    /// with d_k renamed xi_k exactly where u_k + v_k > 0.
    pub fn initial_form(&self, w: &WeightVector) -> Result<GradedElement> {
        if self.is_zero() {
            return Err(Error::ZeroInput("initial form of the zero operator"));
        }
        if w.n() != self.ring.n {
            return Err(Error::VariableMismatch);
        }
        let mut best: Option<BigRational> = None;
        for mono in self.terms.keys() {
            let wt = w.weight_of(mono);
            if best.as_ref().map(|b| wt > *b).unwrap_or(true) {
                best = Some(wt);
            }
        }
        let best = best.unwrap();
        let commutative: Vec<bool> =
            (0..self.ring.n).map(|k| !(&w.u[k] + &w.v[k]).is_zero()).collect();
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            if w.weight_of(mono) == best {
                terms.insert(mono.clone(), c.clone());
            }
        }
        Ok(GradedElement { ring: self.ring.clone(), commutative, terms })
    }

    /// Symbol: initial form under (0, e) as a commutative polynomial.
    pub fn symbol(&self) -> Result<MultiPoly> {
        self.initial_form(&WeightVector::symbol(self.ring.n))?.as_symbol_poly()
    }

    /// Detect the torus-fixed shape p = x^a q(theta) d^b and return
    /// (a, q, b) with q a polynomial in the theta variables. All normal
    /// monomials of such an element share the offset a - b, and
    /// x^i d^i = theta (theta-1) ... (theta-i+1) inverts the expansion
    /// exactly.
    pub fn theta_rewrite(&self) -> Result<(Vec<u32>, MultiPoly, Vec<u32>)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("theta rewrite of zero"));
        }
        if self.ring.has_params() {
            return Err(Error::Unsupported("theta rewrite with parameters".into()));
        }
        let n = self.ring.n;
        // common offset c = a - b
        let mut offset: Option<Vec<i64>> = None;
        for (a, b) in self.terms.keys() {
            let c: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
            match &offset {
                None => offset = Some(c),
                Some(prev) => {
                    if *prev != c {
                        return Err(Error::NotTorusFixed);
                    }
                }
            }
        }
        let offset = offset.unwrap();
        let a_out: Vec<u32> = offset.iter().map(|&c| c.max(0) as u32).collect();
        let b_out: Vec<u32> = offset.iter().map(|&c| (-c).max(0) as u32).collect();
        // strip x^a from the left and d^b from the right; remaining exponents
        // are diagonal x^i d^i
        let tvars = self.ring.theta_vars();
        let mut q = MultiPoly::zero(&tvars);
        for ((a, b), c) in &self.terms {
            let mut falling = MultiPoly::one(&tvars);
            for k in 0..n {
                let i = a[k] - a_out[k];
                debug_assert_eq!(i, b[k] - b_out[k]);
                // x^i d^i = prod_{j<i} (theta - j)
                for j in 0..i {
                    let factor = MultiPoly::var(&tvars, k)
                        .sub(&MultiPoly::constant(&tvars, BigRational::from(BigInt::from(j))));
                    falling = falling.mul(&factor);
                }
            }
            let cc = c.constant_value().cloned().unwrap_or_else(BigRational::zero);
            q = q.add(&falling.scale(&cc));
        }
        Ok((a_out, q, b_out))
    }

    /// Expand x^a q(theta) d^b back into normal form.
    pub fn from_theta(ring: &WeylRing, a: &[u32], q: &MultiPoly, b: &[u32]) -> Result<Self> {
        let n = ring.n;
        let mut acc = Self::zero(ring);
        for (e, c) in q.terms() {
            let mut t = Self::constant(ring, c.clone());
            for k in 0..n {
                for _ in 0..e[k] {
                    t = t.mul(&Self::theta(ring, k))?;
                }
            }
            acc = acc.add(&t)?;
        }
        let xa = Self::scalar_term(ring, a, &vec![0; n], BigRational::one());
        let db = Self::scalar_term(ring, &vec![0; n], b, BigRational::one());
        xa.mul(&acc)?.mul(&db)
    }

    /// Univariate view: dense coefficient polynomials of d^k (n must be 1,
    /// coefficients in Q[x]).
    pub fn univariate_coeff_polys(&self) -> Result<Vec<MultiPoly>> {
        if self.ring.n != 1 {
            return Err(Error::Unsupported("operator is not univariate".into()));
        }
        if self.has_params() {
            return Err(Error::Unsupported("univariate view with parameters".into()));
        }
        let xv = self.ring.x_vars();
        let ord = self.order() as usize;
        let mut out = vec![MultiPoly::zero(&xv); ord + 1];
        for ((a, b), c) in &self.terms {
            let cc = c.constant_value().cloned().unwrap_or_else(BigRational::zero);
            out[b[0] as usize] = out[b[0] as usize].add(&MultiPoly::monomial(&xv, &[a[0]], cc));
        }
        Ok(out)
    }

    /// Build a univariate operator from dense coefficient polynomials in x.
    pub fn from_univariate_coeff_polys(ring: &WeylRing, coeffs: &[MultiPoly]) -> Result<Self> {
        if ring.n != 1 {
            return Err(Error::Unsupported("ring is not univariate".into()));
        }
        let mut out = Self::zero(ring);
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in p.terms() {
                out.insert(
                    (vec![e[0]], vec![k as u32]),
                    MultiPoly::constant(&ring.params, c.clone()),
                );
            }
        }
        Ok(out)
    }

    /// Divide out the common polynomial content of all coefficients viewed
    /// in Q[x], and normalize the sign so the leading normal monomial has a
    /// positive coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() || self.has_params() {
            return self.clone();
        }
        // collect coefficients of d^b as polynomials in x
        let xv = self.ring.x_vars();
        let mut by_b: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let cc = c.constant_value().cloned().unwrap();
            let entry = by_b.entry(b.clone()).or_insert_with(|| MultiPoly::zero(&xv));
            *entry = entry.add(&MultiPoly::monomial(&xv, a, cc));
        }
        let mut g = MultiPoly::zero(&xv);
        for p in by_b.values() {
            g = crate::exact::gcd::poly_gcd(&g, p);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        let mut out = Self::zero(&self.ring);
        if g.is_constant() {
            out = self.clone();
        } else {
            for (b, p) in &by_b {
                let q = p.div_exact(&g);
                for (e, c) in q.terms() {
                    out.insert(
                        (e.clone(), b.clone()),
                        MultiPoly::constant(&self.ring.params, c.clone()),
                    );
                }
            }
        }
        // integer content and sign from the leading normal monomial
        let mut content_num = BigInt::zero();
        let mut content_den = BigInt::one();
        for c in out.terms.values() {
            let v = c.constant_value().cloned().unwrap();
            content_num = num_integer::gcd(content_num, v.numer().abs());
            content_den = num_integer::lcm(content_den, v.denom().clone());
        }
        let content = BigRational::new(content_num, content_den);
        let lead_neg = out
            .terms
            .iter()
            .next_back()
            .map(|(_, c)| c.constant_value().map(|v| v.is_negative()).unwrap_or(false))
            .unwrap_or(false);
        let scale = if lead_neg { -content.recip() } else { content.recip() };
        out.scale(&scale)
    }

    /// Taylor-shift the x-variables: x_i -> x_i + a_i (exact).
    pub fn translate(&self, shift: &[BigRational]) -> Result<Self> {
        if shift.len() != self.ring.n {
            return Err(Error::VariableMismatch);
        }
        let n = self.ring.n;
        let mut out = Self::zero(&self.ring);
        for ((a, b), c) in &self.terms {
            // expand prod (x_i + s_i)^{a_i}
            let mut expansion: Vec<(Vec<u32>, BigRational)> =
                vec![(vec![0; n], BigRational::one())];
            for k in 0..n {
                let mut next = Vec::new();
                for j in 0..=a[k] {
                    let bin = binomial(a[k], j);
                    let mut s_pow = BigRational::one();
                    for _ in 0..(a[k] - j) {
                        s_pow *= &shift[k];
                    }
                    let coef = BigRational::from(bin) * s_pow;
                    if coef.is_zero() {
                        continue;
                    }
                    for (e, c0) in &expansion {
                        let mut ne = e.clone();
                        ne[k] = j;
                        next.push((ne, c0 * &coef));
                    }
                }
                expansion = next;
            }
            for (e, c0) in expansion {
                out.insert((e, b.clone()), c.scale(&c0));
            }
        }
        Ok(out)
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// a! b! / (i! (a-i)! (b-i)!) = binom(a,i) binom(b,i) i!
fn swap_coefficient(a: u32, b: u32, i: u32) -> BigRational {
    let mut acc = binomial(a, i) * binomial(b, i);
    for j in 1..=i {
        acc *= BigInt::from(j);
    }
    BigRational::from(acc)
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.ring.n;
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            let mut mono_parts = Vec::new();
            for k in 0..n {
                if a[k] == 1 {
                    mono_parts.push(self.ring.x_name(k));
                } else if a[k] > 1 {
                    mono_parts.push(format!("{}^{}", self.ring.x_name(k), a[k]));
                }
            }
            for k in 0..n {
                if b[k] == 1 {
                    mono_parts.push(self.ring.d_name(k));
                } else if b[k] > 1 {
                    mono_parts.push(format!("{}^{}", self.ring.d_name(k), b[k]));
                }
            }
            let mono = mono_parts.join("*");
            let (sign, coeff_str, coeff_is_one) = render_coeff(c);
            if first {
                if sign == '-' {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if coeff_is_one {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff_str}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn render_coeff(c: &MultiPoly) -> (char, String, bool) {
    if let Some(v) = c.constant_value() {
        if v.is_negative() {
            let m = -v.clone();
            ('-', format!("{m}"), m.is_one())
        } else {
            ('+', format!("{v}"), v.is_one())
        }
    } else if c.num_terms() == 1 {
        let (e, v) = c.terms().next().unwrap();
        let mono = format_monomial(c.vars(), e);
        if v.is_negative() {
            let m = -v.clone();
            let s = if m.is_one() { mono } else { format!("{m}*{mono}") };
            ('-', s, false)
        } else {
            let s = if v.is_one() { mono } else { format!("{v}*{mono}") };
            ('+', s, false)
        }
    } else {
        ('+', format!("({c})"), false)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.ring.n();
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            let mut mono_parts = Vec::new();
            for k in 0..n {
                if a[k] == 1 {
                    mono_parts.push(self.ring.x_name(k));
                } else if a[k] > 1 {
                    mono_parts.push(format!("{}^{}", self.ring.x_name(k), a[k]));
                }
            }
            for k in 0..n {
                let name =
                    if self.commutative[k] { format!("xi{}", k + 1) } else { self.ring.d_name(k) };
                if b[k] == 1 {
                    mono_parts.push(name);
                } else if b[k] > 1 {
                    mono_parts.push(format!("{}^{}", name, b[k]));
                }
            }
            let mono = mono_parts.join("*");
            let (sign, coeff_str, coeff_is_one) = render_coeff(c);
            if first {
                if sign == '-' {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if coeff_is_one {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff_str}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> WeylRing {
        WeylRing::new(2)
    }

    #[test]
    fn product_rule() {
        let r = WeylRing::new(1);
        let p = WeylElement::d(&r, 0).mul(&WeylElement::x(&r, 0)).unwrap();
        // d x = x d + 1
        let expect = WeylElement::theta(&r, 0).add(&WeylElement::one(&r)).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn normal_expansion_six_terms() {
        // d1^2 d2^3 x1^4 x2 expands into six normal monomials
        let r = d2();
        let p = WeylElement::d(&r, 0)
            .pow(2)
            .unwrap()
            .mul(&WeylElement::d(&r, 1).pow(3).unwrap())
            .unwrap()
            .mul(&WeylElement::x(&r, 0).pow(4).unwrap())
            .unwrap()
            .mul(&WeylElement::x(&r, 1))
            .unwrap();
        let expect_terms: Vec<(i64, (Vec<u32>, Vec<u32>))> = vec![
            (1, (vec![4, 1], vec![2, 3])),
            (3, (vec![4, 0], vec![2, 2])),
            (8, (vec![3, 1], vec![1, 3])),
            (24, (vec![3, 0], vec![1, 2])),
            (12, (vec![2, 1], vec![0, 3])),
            (36, (vec![2, 0], vec![0, 2])),
        ];
        assert_eq!(p.num_terms(), 6);
        for (c, (a, b)) in expect_terms {
            assert_eq!(
                p.coeff(&a, &b).constant_value().unwrap(),
                &BigRational::from(BigInt::from(c))
            );
        }
    }

    #[test]
    fn commuting_subring() {
        let r = d2();
        let p = WeylElement::x(&r, 0).mul(&WeylElement::x(&r, 1)).unwrap();
        let q = WeylElement::x(&r, 1).mul(&WeylElement::x(&r, 0)).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn symbol_of_degree_dominant() {
        let r = d2();
        // x1 d1^2 + d2 has symbol x1 xi1^2
        let p = WeylElement::scalar_term(&r, &[1, 0], &[2, 0], BigRational::one())
            .add(&WeylElement::d(&r, 1))
            .unwrap();
        let s = p.symbol().unwrap();
        let sv = r.symbol_vars();
        assert_eq!(s, MultiPoly::monomial(&sv, &[1, 0, 2, 0], BigRational::one()));
    }

    #[test]
    fn torus_initial_stays_operator() {
        // in_(-1,1)(x^2 d^2 - x d + 1 - x) = x^2 d^2 - x d + 1
        let r = WeylRing::new(1);
        let p = WeylElement::scalar_term(&r, &[2], &[2], BigRational::one())
            .add(&WeylElement::scalar_term(&r, &[1], &[1], -BigRational::one()))
            .unwrap()
            .add(&WeylElement::one(&r))
            .unwrap()
            .add(&WeylElement::x(&r, 0).neg())
            .unwrap();
        let w = WeightVector::torus(&[BigRational::one()]);
        let init = p.initial_form(&w).unwrap().as_operator().unwrap();
        let expect = WeylElement::scalar_term(&r, &[2], &[2], BigRational::one())
            .add(&WeylElement::scalar_term(&r, &[1], &[1], -BigRational::one()))
            .unwrap()
            .add(&WeylElement::one(&r))
            .unwrap();
        assert_eq!(init, expect);
        // and its theta rewrite is (theta - 1)^2
        let (a, q, b) = init.theta_rewrite().unwrap();
        assert_eq!(a, vec![0]);
        assert_eq!(b, vec![0]);
        let tv = r.theta_vars();
        let expect_q = MultiPoly::var(&tv, 0).sub(&MultiPoly::one(&tv)).pow(2);
        assert_eq!(q, expect_q);
    }

    #[test]
    fn gkz_symbol() {
        let r = WeylRing::new(4);
        let p = WeylElement::d(&r, 1)
            .mul(&WeylElement::d(&r, 2))
            .unwrap()
            .sub(&WeylElement::d(&r, 0).mul(&WeylElement::d(&r, 3)).unwrap())
            .unwrap();
        let s = p.symbol().unwrap();
        let sv = r.symbol_vars();
        let expect = MultiPoly::monomial(&sv, &[0, 0, 0, 0, 0, 1, 1, 0], BigRational::one()).sub(
            &MultiPoly::monomial(&sv, &[0, 0, 0, 0, 1, 0, 0, 1], BigRational::one()),
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn theta_rewrite_roundtrip() {
        let r = WeylRing::new(1);
        // d x d = (theta + 1) d
        let p = WeylElement::d(&r, 0)
            .mul(&WeylElement::x(&r, 0))
            .unwrap()
            .mul(&WeylElement::d(&r, 0))
            .unwrap();
        let (a, q, b) = p.theta_rewrite().unwrap();
        assert_eq!(a, vec![0]);
        assert_eq!(b, vec![1]);
        let tv = r.theta_vars();
        assert_eq!(q, MultiPoly::var(&tv, 0).add(&MultiPoly::one(&tv)));
        let back = WeylElement::from_theta(&r, &a, &q, &b).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn theta_rewrite_rejects_mixed() {
        let r = WeylRing::new(1);
        let p = WeylElement::x(&r, 0).add(&WeylElement::d(&r, 0)).unwrap();
        assert!(matches!(p.theta_rewrite(), Err(Error::NotTorusFixed)));
    }

    #[test]
    fn translation() {
        let r = WeylRing::new(1);
        // x d translated by 1: (x+1) d
        let p = WeylElement::theta(&r, 0);
        let t = p.translate(&[BigRational::one()]).unwrap();
        let expect = WeylElement::theta(&r, 0).add(&WeylElement::d(&r, 0)).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn associativity_and_distributivity_randomized() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let r = WeylRing::new(2);
        let rand_elem = |rng: &mut dyn FnMut() -> u64, r: &WeylRing| {
            let mut e = WeylElement::zero(r);
            for _ in 0..3 {
                let a = vec![(rng() % 3) as u32, (rng() % 3) as u32];
                let b = vec![(rng() % 3) as u32, (rng() % 3) as u32];
                let c = BigRational::from(BigInt::from((rng() % 7) as i64 - 3));
                e = e.add(&WeylElement::scalar_term(r, &a, &b, c)).unwrap();
            }
            e
        };
        for _ in 0..50 {
            let p = rand_elem(&mut rng, &r);
            let q = rand_elem(&mut rng, &r);
            let s = rand_elem(&mut rng, &r);
            let left = p.mul(&q).unwrap().mul(&s).unwrap();
            let right = p.mul(&q.mul(&s).unwrap()).unwrap();
            assert_eq!(left, right);
            let dist = p.mul(&q.add(&s).unwrap()).unwrap();
            let split = p.mul(&q).unwrap().add(&p.mul(&s).unwrap()).unwrap();
            assert_eq!(dist, split);
        }
    }
}
