//! Annihilating ideals and holonomic representations: rational functions,
//! exponentials of rational functions, algebraic functions, closure under
//! sum/product/derivative, and verification of parametric annihilators.
//!
//! A holonomic representation is an annihilating ideal of finite rank plus
//! anchored initial conditions that pin the function down inside the
//! solution space.

use crate::bigfloat::BigFloat;
use crate::dideal::rops::{self, ROp};
use crate::dideal::DIdeal;
use crate::error::{Error, Result};
use crate::exact::gcd::poly_gcd;
use crate::exact::poly::{MultiPoly, VarSet};
use crate::exact::ratfun::RatFun;
use crate::exact::roots::RealRootInterval;
use crate::weyl::witness::{annihilates, ExprWitness, SeriesWitness};
use crate::weyl::{WeylElement, WeylRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Anchor value: exact rational or high-precision float.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(BigRational),
    Float(BigFloat),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(BigRational::zero())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        match self {
            Value::Exact(r) => BigFloat::from_rational(r, prec),
            Value::Float(f) => f.with_precision(prec),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => {
                let p = self.float_prec().max(other.float_prec()).max(128);
                Value::Float(self.to_bigfloat(p).add(&other.to_bigfloat(p)))
            }
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => {
                let p = self.float_prec().max(other.float_prec()).max(128);
                Value::Float(self.to_bigfloat(p).mul(&other.to_bigfloat(p)))
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a * c),
            Value::Float(f) => Value::Float(f.mul(&BigFloat::from_rational(c, f.precision()))),
        }
    }

    fn float_prec(&self) -> u32 {
        match self {
            Value::Exact(_) => 0,
            Value::Float(f) => f.precision(),
        }
    }
}

/// A single initial condition: the value of a mixed partial at a point.
/// Points may be rational or refined algebraic (carried as an isolating
/// interval plus a float).
#[derive(Clone, Debug)]
pub struct Anchor {
    pub point: AnchorPoint,
    pub derivative: Vec<u32>,
    pub value: Value,
}

#[derive(Clone, Debug)]
pub enum AnchorPoint {
    Rational(Vec<BigRational>),
    /// Univariate algebraic point given by an isolating interval.
    Algebraic(RealRootInterval),
}

impl AnchorPoint {
    pub fn rational1(x: BigRational) -> Self {
        AnchorPoint::Rational(vec![x])
    }
}

/// Annihilating ideal of finite holonomic rank plus anchors.
#[derive(Clone, Debug)]
pub struct HolonomicRep {
    pub ideal: DIdeal,
    pub anchors: Vec<Anchor>,
}

impl HolonomicRep {
    pub fn new(ideal: DIdeal, anchors: Vec<Anchor>) -> Self {
        HolonomicRep { ideal, anchors }
    }

    pub fn ring(&self) -> &WeylRing {
        self.ideal.ring()
    }

    /// The defining operator of a univariate representation (the single
    /// element of the reduced basis over R, cleared of denominators).
    pub fn univariate_operator(&self) -> Result<WeylElement> {
        let ring = self.ideal.ring();
        if ring.n() != 1 {
            return Err(Error::Unsupported("representation is not univariate".into()));
        }
        let gb = rops::rational_groebner(self.ideal.generators(), ring)?;
        if gb.len() != 1 {
            return Err(Error::Unsupported("univariate basis is not principal".into()));
        }
        Ok(gb[0].to_weyl(ring).primitive_normalized())
    }

    /// Exact anchor value for a derivative multi-index at a rational point.
    fn anchor_value(&self, point: &[BigRational], idx: &[u32]) -> Option<Value> {
        for a in &self.anchors {
            if let AnchorPoint::Rational(p) = &a.point {
                if p == point && a.derivative == idx {
                    return Some(a.value.clone());
                }
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// annihilators of elementary functions

/// Annihilator of a rational function r: for each variable,
/// clear denominators in r d_i - dr/dx_i.
pub fn ann_rational(ring: &WeylRing, r: &RatFun) -> Result<DIdeal> {
    if r.is_zero() {
        return Err(Error::ZeroInput("annihilator of the zero function"));
    }
    let n = ring.n();
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        // (p/q) d_i - (p_i q - p q_i)/q^2, cleared by q^2: p q d_i - (p_i q - p q_i)
        let p = r.num();
        let q = r.den();
        let pi = p.derivative(i);
        let qi = q.derivative(i);
        let lead = p.mul(q);
        let tail = pi.mul(q).sub(&p.mul(&qi));
        let mut op = WeylElement::zero(ring);
        let mut b = vec![0u32; n];
        b[i] = 1;
        for (e, c) in lead.terms() {
            op = op.add(&WeylElement::scalar_term(ring, e, &b, c.clone()))?;
        }
        let zero_b = vec![0u32; n];
        for (e, c) in tail.terms() {
            op = op.add(&WeylElement::scalar_term(ring, e, &zero_b, -c.clone()))?;
        }
        gens.push(op.primitive_normalized());
    }
    DIdeal::new(ring, gens)
}

/// Annihilator of exp(r) for rational r: clear denominators in
/// d_i - dr/dx_i.
pub fn ann_exp_rational(ring: &WeylRing, r: &RatFun) -> Result<DIdeal> {
    let n = ring.n();
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let p = r.num();
        let q = r.den();
        let pi = p.derivative(i);
        let qi = q.derivative(i);
        let q2 = q.mul(q);
        let tail = pi.mul(q).sub(&p.mul(&qi));
        let mut op = WeylElement::zero(ring);
        let mut b = vec![0u32; n];
        b[i] = 1;
        for (e, c) in q2.terms() {
            op = op.add(&WeylElement::scalar_term(ring, e, &b, c.clone()))?;
        }
        let zero_b = vec![0u32; n];
        for (e, c) in tail.terms() {
            op = op.add(&WeylElement::scalar_term(ring, e, &zero_b, -c.clone()))?;
        }
        gens.push(op.primitive_normalized());
    }
    DIdeal::new(ring, gens)
}

// ---------------------------------------------------------------------------
// algebraic functions

/// Algebraic function defined by a bivariate polynomial F(x, y), square-free
/// in y, with optional root-selection data at a rational base point.
#[derive(Clone, Debug)]
pub struct AlgebraicFunction {
    pub poly: MultiPoly,
    pub x_index: usize,
    pub y_index: usize,
    pub base: Option<(BigRational, RealRootInterval)>,
}

impl AlgebraicFunction {
    pub fn new(poly: MultiPoly, x_index: usize, y_index: usize) -> Result<Self> {
        if poly.degree_in(y_index) == 0 {
            return Err(Error::DegreeZero(poly.vars().names()[y_index].clone()));
        }
        let dy = poly.derivative(y_index);
        let g = poly_gcd(&poly, &dy);
        if g.degree_in(y_index) > 0 {
            return Err(Error::Unsupported("defining polynomial is not square-free in y".into()));
        }
        Ok(AlgebraicFunction { poly, x_index, y_index, base: None })
    }

    pub fn with_base(mut self, x0: BigRational, root: RealRootInterval) -> Self {
        self.base = Some((x0, root));
        self
    }
}

// dense polynomials in y over the field Q(x)
type YPoly = Vec<RatFun>;

fn ytrim(p: &mut YPoly) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn ymul(a: &YPoly, b: &YPoly, vars: &VarSet) -> YPoly {
    let mut out = vec![RatFun::zero(vars); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] = out[i + j].add(&ca.mul(cb));
            }
        }
    }
    ytrim(&mut out);
    out
}

fn yrem(a: &YPoly, m: &YPoly, vars: &VarSet) -> Result<YPoly> {
    // m monic
    let mut r = a.clone();
    ytrim(&mut r);
    let dm = m.len() - 1;
    while r.len() - 1 >= dm && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let q = r.last().unwrap().clone();
        let shift = dr - dm;
        for i in 0..m.len() {
            let t = m[i].mul(&q);
            r[i + shift] = r[i + shift].sub(&t);
        }
        ytrim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    Ok(r)
}

fn ydivmod(a: &YPoly, b: &YPoly, vars: &VarSet) -> Result<(YPoly, YPoly)> {
    let mut r = a.clone();
    ytrim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
        return Ok((vec![RatFun::zero(vars)], r));
    }
    let mut q = vec![RatFun::zero(vars); r.len() - db];
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = r.last().unwrap().div(lb)?;
        let shift = dr - db;
        q[shift] = c.clone();
        for i in 0..b.len() {
            let t = b[i].mul(&c);
            r[i + shift] = r[i + shift].sub(&t);
        }
        ytrim(&mut r);
        if dr == db {
            break;
        }
    }
    ytrim(&mut q);
    Ok((q, r))
}

/// Inverse of a modulo the monic m over Q(x) via extended Euclid.
fn yinverse(a: &YPoly, m: &YPoly, vars: &VarSet) -> Result<YPoly> {
    let mut r0 = m.clone();
    let mut r1 = a.clone();
    ytrim(&mut r1);
    let mut s0 = vec![RatFun::zero(vars)];
    let mut s1 = vec![RatFun::one(vars)];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, rem) = ydivmod(&r0, &r1, vars)?;
        let qs1 = ymul(&q, &s1, vars);
        let mut ns = vec![RatFun::zero(vars); s0.len().max(qs1.len())];
        for (i, c) in s0.iter().enumerate() {
            ns[i] = ns[i].add(c);
        }
        for (i, c) in qs1.iter().enumerate() {
            ns[i] = ns[i].sub(c);
        }
        ytrim(&mut ns);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = ns;
    }
    if r0.len() != 1 {
        return Err(Error::Unsupported("element not invertible in the quotient".into()));
    }
    let inv = r0[0].recip()?;
    let out: YPoly = s0.iter().map(|c| c.mul(&inv)).collect();
    Ok(out)
}

/// Minimal-order annihilating operator of the algebraic function: take
/// derivatives of y in Q(x)[y]/(F) by implicit differentiation and return
/// the first C(x)-linear dependency, cleared to a primitive operator.
pub fn algebraic_to_ode(f: &AlgebraicFunction) -> Result<WeylElement> {
    let poly = &f.poly;
    let yv = f.y_index;
    let xv = f.x_index;
    // coefficients as rational functions of x alone
    let xvars = VarSet::new(vec![poly.vars().names()[xv].clone()]);
    let d = poly.degree_in(yv) as usize;
    let mut coeffs: YPoly = vec![RatFun::zero(&xvars); d + 1];
    for (e, c) in poly.terms() {
        let k = e[yv] as usize;
        let xe = [e[xv]];
        coeffs[k] =
            coeffs[k].add(&RatFun::from_poly(MultiPoly::monomial(&xvars, &xe, c.clone())));
    }
    // monicize in y
    let lead = coeffs[d].clone();
    let fpoly: YPoly = coeffs.iter().map(|c| c.div(&lead).unwrap()).collect();
    // formal y-derivative and x-derivative
    let fy: YPoly = {
        let mut out = vec![RatFun::zero(&xvars); d];
        for k in 1..=d {
            out[k - 1] = fpoly[k].scale(&BigRational::from(BigInt::from(k as i64)));
        }
        ytrim(&mut out);
        out
    };
    let fx: YPoly = {
        let mut out: YPoly = fpoly.iter().map(|c| c.derivative(0)).collect();
        ytrim(&mut out);
        out
    };
    let fy_inv = yinverse(&fy, &fpoly, &xvars)?;
    // y' = -F_x / F_y in the quotient
    let yprime = {
        let p = ymul(&fx, &fy_inv, &xvars);
        let p = yrem(&p, &fpoly, &xvars)?;
        p.iter().map(|c| c.neg()).collect::<YPoly>()
    };
    // derivation on the quotient
    let derive = |g: &YPoly| -> Result<YPoly> {
        let gx: YPoly = g.iter().map(|c| c.derivative(0)).collect();
        let mut gy = vec![RatFun::zero(&xvars); g.len().max(2) - 1];
        for k in 1..g.len() {
            gy[k - 1] = g[k].scale(&BigRational::from(BigInt::from(k as i64)));
        }
        let chain = ymul(&gy, &yprime, &xvars);
        let chain = yrem(&chain, &fpoly, &xvars)?;
        let mut out = vec![RatFun::zero(&xvars); gx.len().max(chain.len())];
        for (i, c) in gx.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in chain.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        ytrim(&mut out);
        Ok(out)
    };

    let mut kernel = IncrementalKernel::new(d, &xvars);
    let y_raw: YPoly = vec![RatFun::zero(&xvars), RatFun::one(&xvars)];
    let mut v: YPoly = yrem(&y_raw, &fpoly, &xvars)?;
    let mut k = 0usize;
    loop {
        let mut row = vec![RatFun::zero(&xvars); d];
        for (i, c) in v.iter().enumerate() {
            row[i] = c.clone();
        }
        if let Some(dep) = kernel.push(row) {
            // dep has length k+1: operator sum dep[j] d^j
            let ring = WeylRing::new(1);
            return clear_to_operator(&ring, &dep);
        }
        v = derive(&v)?;
        k += 1;
        if k > d + 1 {
            return Err(Error::Unsupported("no dependency found within degree bound".into()));
        }
    }
}

/// Turn rational-function coefficients into a primitive operator in D.
fn clear_to_operator(ring: &WeylRing, coeffs: &[RatFun]) -> Result<WeylElement> {
    let xvars = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.vars().clone())
        .ok_or(Error::ZeroInput("zero operator"))?;
    // common denominator via lcm
    let mut den = MultiPoly::one(&xvars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let g = poly_gcd(&den, c.den());
        den = den.div_exact(&g).mul(c.den());
    }
    let mut polys: Vec<MultiPoly> = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.is_zero() {
            polys.push(MultiPoly::zero(&xvars));
        } else {
            polys.push(c.num().mul(&den.div_exact(c.den())));
        }
    }
    let op = WeylElement::from_univariate_coeff_polys(ring, &polys)?;
    Ok(op.primitive_normalized())
}

// ---------------------------------------------------------------------------
// incremental left-kernel over Q(x)

/// Incremental detection of the first linear dependency among pushed rows
/// over the rational function field.
pub struct IncrementalKernel {
    width: usize,
    vars: VarSet,
    /// (echelon row, combination over originally pushed rows)
    basis: Vec<(Vec<RatFun>, Vec<RatFun>)>,
    pushed: usize,
}

impl IncrementalKernel {
    pub fn new(width: usize, vars: &VarSet) -> Self {
        IncrementalKernel { width, vars: vars.clone(), basis: Vec::new(), pushed: 0 }
    }

    /// Push a row; when it is dependent on the previous rows, return the
    /// coefficients alpha_0..alpha_k with sum alpha_i row_i = 0 and
    /// alpha_k = 1.
    pub fn push(&mut self, row: Vec<RatFun>) -> Option<Vec<RatFun>> {
        assert_eq!(row.len(), self.width);
        let mut r = row;
        let mut combo = vec![RatFun::zero(&self.vars); self.pushed + 1];
        combo[self.pushed] = RatFun::one(&self.vars);
        for (b, bc) in &self.basis {
            // eliminate b's pivot from r
            let pivot = b.iter().position(|c| !c.is_zero()).unwrap();
            if r[pivot].is_zero() {
                continue;
            }
            let f = r[pivot].clone();
            for i in 0..self.width {
                let t = b[i].mul(&f);
                r[i] = r[i].sub(&t);
            }
            for (i, c) in bc.iter().enumerate() {
                let t = c.mul(&f);
                combo[i] = combo[i].sub(&t);
            }
        }
        self.pushed += 1;
        if r.iter().all(|c| c.is_zero()) {
            return Some(combo);
        }
        // normalize pivot to 1
        let pivot = r.iter().position(|c| !c.is_zero()).unwrap();
        let inv = r[pivot].recip().unwrap();
        for c in r.iter_mut() {
            *c = c.mul(&inv);
        }
        let mut cb = combo;
        for c in cb.iter_mut() {
            *c = c.mul(&inv);
        }
        cb.resize(self.pushed, RatFun::zero(&self.vars));
        self.basis.push((r, cb));
        None
    }
}

// ---------------------------------------------------------------------------
// closure operations

/// Dense coefficients (over Q(x)) of an operator in d_i annihilating the
/// represented function, found from the rational Groebner basis.
pub fn variable_operator(ideal: &DIdeal, var: usize) -> Result<Vec<RatFun>> {
    let ring = ideal.ring();
    let gb = rops::rational_groebner(ideal.generators(), ring)?;
    let standard = rops::standard_monomial_exponents(&gb, ring.n()).ok_or(Error::InfiniteRank)?;
    let xvars = ring.x_vars();
    let m = standard.len();
    let mut kernel = IncrementalKernel::new(m, &xvars);
    let mut k = 0u32;
    loop {
        let mut target = vec![0u32; ring.n()];
        target[var] = k;
        let nf = rops::rational_normal_form(&target, &gb, &standard)?;
        let mut row = vec![RatFun::zero(&xvars); m];
        for (mono, c) in nf {
            let idx = standard.iter().position(|s| s == &mono).ok_or_else(|| {
                Error::Unsupported("normal form escaped the standard monomials".into())
            })?;
            row[idx] = c;
        }
        if let Some(dep) = kernel.push(row) {
            return Ok(dep);
        }
        k += 1;
        if k as usize > m + 1 {
            return Err(Error::Unsupported("no cyclic relation within rank bound".into()));
        }
    }
}

struct Companion {
    /// order n: d^n f = sum_j comp[j] d^j f
    comp: Vec<RatFun>,
}

fn companion_from(coeffs: &[RatFun]) -> Result<Companion> {
    let n = coeffs.len() - 1;
    let lead = &coeffs[n];
    if lead.is_zero() {
        return Err(Error::ZeroInput("operator with zero leading coefficient"));
    }
    let mut comp = Vec::with_capacity(n);
    for c in coeffs.iter().take(n) {
        comp.push(c.div(lead)?.neg());
    }
    Ok(Companion { comp })
}

/// Common rational anchor point of two representations, if any.
fn common_anchor_point(f: &HolonomicRep, g: &HolonomicRep) -> Option<Vec<BigRational>> {
    for a in &f.anchors {
        if let AnchorPoint::Rational(p) = &a.point {
            for b in &g.anchors {
                if let AnchorPoint::Rational(q) = &b.point {
                    if p == q {
                        return Some(p.clone());
                    }
                }
            }
        }
    }
    None
}

/// Derivative values d_i^k f(x0) for a univariate-in-i slice, extended by
/// the cyclic relation when k reaches the operator order.
pub fn derivative_values(
    rep: &HolonomicRep,
    point: &[BigRational],
    var: usize,
    count: usize,
) -> Result<Vec<Value>> {
    let ring = rep.ideal.ring();
    let coeffs = variable_operator(&rep.ideal, var)?;
    let n = coeffs.len() - 1;
    let mut out: Vec<Value> = Vec::with_capacity(count);
    for k in 0..count.min(n) {
        let mut idx = vec![0u32; ring.n()];
        idx[var] = k as u32;
        let v = rep
            .anchor_value(point, &idx)
            .ok_or(Error::RankDeficientConstraints)?;
        out.push(v);
    }
    // extend by the relation d^n f = sum comp_j d^j f and its derivatives
    let comp0 = companion_from(&coeffs)?;
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    rows.push(comp0.comp.clone());
    while out.len() < count {
        let k = out.len();
        // expression of d^k f over the basis: maintained incrementally
        while rows.len() < k - n + 1 {
            let prev = rows.last().unwrap().clone();
            let mut next: Vec<RatFun> = prev.iter().map(|c| c.derivative(var)).collect();
            for j in 0..n {
                // shift: c_j d^j -> c_j d^(j+1), reduce the top
                let c = prev[j].clone();
                if j + 1 < n {
                    next[j + 1] = next[j + 1].add(&c);
                } else {
                    for (t, comp_t) in comp0.comp.iter().enumerate() {
                        next[t] = next[t].add(&c.mul(comp_t));
                    }
                }
            }
            rows.push(next);
        }
        let row = &rows[k - n];
        let mut acc = Value::zero();
        for (j, c) in row.iter().enumerate() {
            let cv = c.eval(point)?;
            acc = acc.add(&out[j].scale(&cv));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Annihilator and anchors of f + g.
pub fn closure_sum(f: &HolonomicRep, g: &HolonomicRep) -> Result<HolonomicRep> {
    closure_binary(f, g, true)
}

/// Annihilator and anchors of f * g.
pub fn closure_product(f: &HolonomicRep, g: &HolonomicRep) -> Result<HolonomicRep> {
    closure_binary(f, g, false)
}

fn closure_binary(f: &HolonomicRep, g: &HolonomicRep, sum: bool) -> Result<HolonomicRep> {
    let ring = f.ideal.ring();
    if g.ideal.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let n = ring.n();
    let xvars = ring.x_vars();
    let mut ops: Vec<WeylElement> = Vec::new();
    let mut orders: Vec<usize> = Vec::new();
    for var in 0..n {
        let cf = variable_operator(&f.ideal, var)?;
        let cg = variable_operator(&g.ideal, var)?;
        let dep = if sum {
            dependency_sum(&cf, &cg, &xvars, var)?
        } else {
            dependency_product(&cf, &cg, &xvars, var)?
        };
        orders.push(dep.len() - 1);
        ops.push(clear_to_operator_nvar(ring, &dep, var)?);
    }
    let ideal = DIdeal::new(ring, ops)?;
    // anchors at a common rational point
    let anchors = match common_anchor_point(f, g) {
        Some(p) => build_anchors(f, g, &p, &orders, sum)?,
        None => {
            if n == 1 {
                return Err(Error::NoCommonAnchor);
            }
            return Err(Error::NoCommonAnchor);
        }
    };
    Ok(HolonomicRep::new(ideal, anchors))
}

fn build_anchors(
    f: &HolonomicRep,
    g: &HolonomicRep,
    point: &[BigRational],
    orders: &[usize],
    sum: bool,
) -> Result<Vec<Anchor>> {
    let ring = f.ideal.ring();
    let n = ring.n();
    if n == 1 {
        let count = orders[0];
        let fv = derivative_values(f, point, 0, count)?;
        let gv = derivative_values(g, point, 0, count)?;
        let mut anchors = Vec::with_capacity(count);
        for k in 0..count {
            let value = if sum {
                fv[k].add(&gv[k])
            } else {
                // Leibniz
                let mut acc = Value::zero();
                for j in 0..=k {
                    let bin = binom(k as u32, j as u32);
                    acc = acc.add(&fv[j].mul(&gv[k - j]).scale(&BigRational::from(bin)));
                }
                acc
            };
            anchors.push(Anchor {
                point: AnchorPoint::Rational(point.to_vec()),
                derivative: vec![k as u32],
                value,
            });
        }
        Ok(anchors)
    } else {
        // multivariate: anchor the mixed partials up to the per-variable
        // orders, built from both representations' derivative values
        let mut idxs: Vec<Vec<u32>> = vec![Vec::new()];
        for &o in orders {
            let mut next = Vec::new();
            for p in &idxs {
                for k in 0..o.max(1) as u32 {
                    let mut q = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
            idxs = next;
        }
        let mut anchors = Vec::new();
        for idx in idxs {
            let fv = mixed_value(f, point, &idx)?;
            let gv = mixed_value(g, point, &idx)?;
            let value = if sum {
                fv.add(&gv)
            } else {
                // Leibniz per-variable is more involved; only the plain
                // value (idx = 0) multiplies directly
                if idx.iter().all(|&k| k == 0) {
                    fv.mul(&gv)
                } else {
                    return Err(Error::Unsupported(
                        "multivariate product anchors need a common zero index".into(),
                    ));
                }
            };
            anchors.push(Anchor {
                point: AnchorPoint::Rational(point.to_vec()),
                derivative: idx,
                value,
            });
        }
        Ok(anchors)
    }
}

fn mixed_value(rep: &HolonomicRep, point: &[BigRational], idx: &[u32]) -> Result<Value> {
    if let Some(v) = rep.anchor_value(point, idx) {
        return Ok(v);
    }
    // reduce d^idx against the rational basis and evaluate over anchors
    let ring = rep.ideal.ring();
    let gb = rops::rational_groebner(rep.ideal.generators(), ring)?;
    let standard = rops::standard_monomial_exponents(&gb, ring.n()).ok_or(Error::InfiniteRank)?;
    let nf = rops::rational_normal_form(idx, &gb, &standard)?;
    let mut acc = Value::zero();
    for (mono, c) in nf {
        let cv = c.eval(point)?;
        let v = rep
            .anchor_value(point, &mono)
            .ok_or(Error::RankDeficientConstraints)?;
        acc = acc.add(&v.scale(&cv));
    }
    Ok(acc)
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn dependency_sum(
    cf: &[RatFun],
    cg: &[RatFun],
    xvars: &VarSet,
    var: usize,
) -> Result<Vec<RatFun>> {
    let nf = cf.len() - 1;
    let ng = cg.len() - 1;
    let compf = companion_from(cf)?;
    let compg = companion_from(cg)?;
    let width = nf + ng;
    let mut kernel = IncrementalKernel::new(width, xvars);
    // state of d^k f over (f, .., d^(nf-1) f) and likewise for g
    let mut sf = vec![RatFun::zero(xvars); nf];
    sf[0] = RatFun::one(xvars);
    let mut sg = vec![RatFun::zero(xvars); ng];
    sg[0] = RatFun::one(xvars);
    for _k in 0..=width {
        let mut row = Vec::with_capacity(width);
        row.extend(sf.iter().cloned());
        row.extend(sg.iter().cloned());
        if let Some(dep) = kernel.push(row) {
            return Ok(dep);
        }
        sf = advance_state(&sf, &compf.comp, var);
        sg = advance_state(&sg, &compg.comp, var);
    }
    Err(Error::Unsupported("sum dependency exceeded the rank bound".into()))
}

/// One derivative step of a coefficient vector over the derivative basis.
fn advance_state(state: &[RatFun], comp: &[RatFun], var: usize) -> Vec<RatFun> {
    let n = state.len();
    let mut next: Vec<RatFun> = state.iter().map(|c| c.derivative(var)).collect();
    for j in 0..n {
        if state[j].is_zero() {
            continue;
        }
        if j + 1 < n {
            next[j + 1] = next[j + 1].add(&state[j]);
        } else {
            for (t, ct) in comp.iter().enumerate() {
                next[t] = next[t].add(&state[j].mul(ct));
            }
        }
    }
    next
}

fn dependency_product(
    cf: &[RatFun],
    cg: &[RatFun],
    xvars: &VarSet,
    var: usize,
) -> Result<Vec<RatFun>> {
    let nf = cf.len() - 1;
    let ng = cg.len() - 1;
    let compf = companion_from(cf)?;
    let compg = companion_from(cg)?;
    let width = nf * ng;
    let mut kernel = IncrementalKernel::new(width, xvars);
    // state[a*ng + b] is the coefficient of d^a f * d^b g
    let mut state = vec![RatFun::zero(xvars); width];
    state[0] = RatFun::one(xvars);
    for _k in 0..=width {
        if let Some(dep) = kernel.push(state.clone()) {
            return Ok(dep);
        }
        let mut next: Vec<RatFun> = state.iter().map(|c| c.derivative(var)).collect();
        for a in 0..nf {
            for b in 0..ng {
                let c = &state[a * ng + b];
                if c.is_zero() {
                    continue;
                }
                // f-shift
                if a + 1 < nf {
                    next[(a + 1) * ng + b] = next[(a + 1) * ng + b].add(c);
                } else {
                    for (t, ct) in compf.comp.iter().enumerate() {
                        next[t * ng + b] = next[t * ng + b].add(&c.mul(ct));
                    }
                }
                // g-shift
                if b + 1 < ng {
                    next[a * ng + b + 1] = next[a * ng + b + 1].add(c);
                } else {
                    for (t, ct) in compg.comp.iter().enumerate() {
                        next[a * ng + t] = next[a * ng + t].add(&c.mul(ct));
                    }
                }
            }
        }
        state = next;
    }
    Err(Error::Unsupported("product dependency exceeded the rank bound".into()))
}

fn clear_to_operator_nvar(ring: &WeylRing, coeffs: &[RatFun], var: usize) -> Result<WeylElement> {
    let xvars = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.vars().clone())
        .ok_or(Error::ZeroInput("zero operator"))?;
    let mut den = MultiPoly::one(&xvars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let g = poly_gcd(&den, c.den());
        den = den.div_exact(&g).mul(c.den());
    }
    let mut op = WeylElement::zero(ring);
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = c.num().mul(&den.div_exact(c.den()));
        let mut b = vec![0u32; ring.n()];
        b[var] = k as u32;
        for (e, v) in p.terms() {
            op = op.add(&WeylElement::scalar_term(ring, e, &b, v.clone()))?;
        }
    }
    Ok(op.primitive_normalized())
}

/// Annihilator of the i-th partial derivative. When the defining operator
/// has the shape P = Ptilde d_i (zero constant term) the cofactor Ptilde is
/// returned directly; in general the first dependency among the derivative
/// states of d_i f over the derivative basis of f yields the smallest
/// operator this basis supports.
pub fn closure_derivative(f: &HolonomicRep, var: usize) -> Result<HolonomicRep> {
    let ring = f.ideal.ring();
    let n = ring.n();
    let coeffs = variable_operator(&f.ideal, var)?;
    let xvars = ring.x_vars();
    let nf = coeffs.len() - 1;
    let op = if coeffs[0].is_zero() {
        // Ptilde: shift coefficients down by one
        clear_to_operator_nvar(ring, &coeffs[1..], var)?
    } else {
        let comp = companion_from(&coeffs)?;
        let mut kernel = IncrementalKernel::new(nf, &xvars);
        // state of d_i^k (d_i f) over (f, ..., d^(nf-1) f)
        let mut state = vec![RatFun::zero(&xvars); nf];
        if nf == 1 {
            state = comp.comp.clone();
        } else {
            state[1] = RatFun::one(&xvars);
        }
        let mut dep = None;
        for _ in 0..=nf {
            if let Some(d) = kernel.push(state.clone()) {
                dep = Some(d);
                break;
            }
            state = advance_state(&state, &comp.comp, var);
        }
        let dep = dep.ok_or_else(|| {
            Error::Unsupported("derivative dependency exceeded the rank bound".into())
        })?;
        clear_to_operator_nvar(ring, &dep, var)?
    };
    let ideal = DIdeal::new(ring, vec![op.clone()])?;
    // anchors: derivatives of f shifted by one in position var
    let point = f
        .anchors
        .iter()
        .find_map(|an| match &an.point {
            AnchorPoint::Rational(p) => Some(p.clone()),
            _ => None,
        })
        .ok_or(Error::NoCommonAnchor)?;
    let ord = op.order() as usize;
    let vals = derivative_values(f, &point, var, ord + 1)?;
    let mut anchors = Vec::new();
    for k in 0..ord {
        let mut idx = vec![0u32; n];
        idx[var] = k as u32;
        anchors.push(Anchor {
            point: AnchorPoint::Rational(point.clone()),
            derivative: idx,
            value: vals[k + 1].clone(),
        });
    }
    Ok(HolonomicRep::new(ideal, anchors))
}

/// True iff every operator in D[s] applied to the parametric power-product
/// witness gives exactly zero.
pub fn verify_parametric_annihilator(ops: &[WeylElement], witness: &ExprWitness) -> Result<bool> {
    match witness {
        ExprWitness::PowerProduct { .. } => annihilates(ops, witness),
        _ => Err(Error::UnsupportedWitness("expected a parametric power product")),
    }
}

// ---------------------------------------------------------------------------
// exact Taylor machinery (anchor propagation and the series oracle)

/// Taylor coefficients c_0..c_(count-1) of a solution of the operator at a
/// rational ordinary point, seeded by the derivative values at that point.
pub fn taylor_coefficients(
    op: &WeylElement,
    x0: &BigRational,
    initial_derivatives: &[BigRational],
    count: usize,
) -> Result<Vec<BigRational>> {
    let polys = op.univariate_coeff_polys()?;
    let ord = polys.len() - 1;
    if initial_derivatives.len() < ord {
        return Err(Error::RankDeficientConstraints);
    }
    // shift coefficients to the expansion point
    let xv = polys[0].vars().clone();
    let shift = MultiPoly::var(&xv, 0).add(&MultiPoly::constant(&xv, x0.clone()));
    let shifted: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let s = p.substitute(0, &shift);
            let mut dense = vec![BigRational::zero(); s.degree_in(0) as usize + 1];
            for (e, c) in s.terms() {
                dense[e[0] as usize] = c.clone();
            }
            dense
        })
        .collect();
    if shifted[ord][0].is_zero() {
        return Err(Error::SingularityOnPath);
    }
    let mut c: Vec<BigRational> = Vec::with_capacity(count);
    let mut fact = BigRational::one();
    for (k, v) in initial_derivatives.iter().take(ord).enumerate() {
        if k > 0 {
            fact *= BigRational::from(BigInt::from(k as i64));
        }
        c.push(v / &fact);
    }
    // falling factorial (m)_k = m (m-1) ... (m-k+1)
    let falling = |m: i64, k: usize| -> BigRational {
        let mut acc = BigRational::one();
        for i in 0..k as i64 {
            acc *= BigRational::from(BigInt::from(m - i));
        }
        acc
    };
    for m in ord..count {
        // coefficient of t^(m - ord) in P.f must vanish:
        // sum_k sum_i q_{k,i} (m')_k c_{m'}  with m' - k + i = m - ord
        let j = m - ord;
        let mut rhs = BigRational::zero();
        for (k, q) in shifted.iter().enumerate() {
            for (i, qc) in q.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                // m' = j + k - i
                let mp = j as i64 + k as i64 - i as i64;
                if mp < 0 || mp as usize >= m {
                    continue;
                }
                rhs += qc * falling(mp, k) * &c[mp as usize];
            }
        }
        // unknown c_m appears only through k = ord, i = 0
        let lead = &shifted[ord][0] * falling(m as i64, ord);
        c.push(-rhs / lead);
    }
    Ok(c)
}

/// Exact truncated Taylor expansion of the represented function at a
/// rational ordinary point (requires exact anchors there).
pub fn taylor_from_rep(
    rep: &HolonomicRep,
    x0: &BigRational,
    count: usize,
) -> Result<SeriesWitness> {
    let op = rep.univariate_operator()?;
    let ord = op.order() as usize;
    let vals = derivative_values(rep, std::slice::from_ref(x0), 0, ord)?;
    let mut derivs = Vec::with_capacity(ord);
    for v in &vals {
        match v {
            Value::Exact(r) => derivs.push(r.clone()),
            Value::Float(_) => {
                return Err(Error::Unsupported("exact series needs exact anchors".into()))
            }
        }
    }
    let coeffs = taylor_coefficients(&op, x0, &derivs, count)?;
    Ok(SeriesWitness::new(
        x0.clone(),
        BigRational::zero(),
        coeffs.into_iter().map(|c| vec![c]).collect(),
    ))
}

/// The truncated-series application oracle: the operator applied to the
/// expansion must vanish in every exactly-known coefficient.
pub fn series_oracle_passes(op: &WeylElement, series: &SeriesWitness) -> Result<bool> {
    let out = crate::weyl::witness::apply(op, &ExprWitness::Series(series.clone()))?;
    match out {
        ExprWitness::Series(s) => {
            // applying the operator shifts exponents down by at most its
            // order; drop the last rows, which reference unknown inputs
            let poly_deg = op
                .terms()
                .map(|((a, _), _)| a[0])
                .max()
                .unwrap_or(0) as usize;
            let safe = s.len().saturating_sub(poly_deg);
            for j in 0..safe {
                for k in 0..s.coeffs[j].len() {
                    if !s.coeff(j, k).is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        _ => Err(Error::UnsupportedWitness("series application changed family")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::witness::witness_vars;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn uni_ring() -> WeylRing {
        WeylRing::new(1)
    }

    fn exp_rep(ring: &WeylRing) -> HolonomicRep {
        // exp(x): <d - 1>, f(0) = 1
        let vars = witness_vars(ring);
        let r = RatFun::from_poly(MultiPoly::var(&vars, 0));
        let ideal = ann_exp_rational(ring, &r).unwrap();
        HolonomicRep::new(
            ideal,
            vec![Anchor {
                point: AnchorPoint::rational1(rat(0)),
                derivative: vec![0],
                value: Value::Exact(rat(1)),
            }],
        )
    }

    fn gauss_rep(ring: &WeylRing) -> HolonomicRep {
        // exp(-x^2): <d + 2x>, g(0) = 1
        let vars = witness_vars(ring);
        let r = RatFun::from_poly(MultiPoly::var(&vars, 0).pow(2).neg());
        let ideal = ann_exp_rational(ring, &r).unwrap();
        HolonomicRep::new(
            ideal,
            vec![Anchor {
                point: AnchorPoint::rational1(rat(0)),
                derivative: vec![0],
                value: Value::Exact(rat(1)),
            }],
        )
    }

    #[test]
    fn ann_rational_examples() {
        // r = x1/x2: the first operator is x1 d1 - 1
        let ring = WeylRing::new(2);
        let vars = witness_vars(&ring);
        let r = RatFun::new(MultiPoly::var(&vars, 0), MultiPoly::var(&vars, 1)).unwrap();
        let ideal = ann_rational(&ring, &r).unwrap();
        let expect = WeylElement::theta(&ring, 0).sub(&WeylElement::one(&ring)).unwrap();
        assert_eq!(ideal.generators()[0], expect);
        // every generator annihilates the witness
        let w = ExprWitness::rational(r);
        for g in ideal.generators() {
            assert!(crate::weyl::witness::apply(g, &w).unwrap().is_zero());
        }
        // r = 1 gives <d1, d2>
        let one = RatFun::one(&vars);
        let ideal = ann_rational(&ring, &one).unwrap();
        assert_eq!(ideal.generators()[0], WeylElement::d(&ring, 0));
        assert_eq!(ideal.generators()[1], WeylElement::d(&ring, 1));
    }

    #[test]
    fn ann_rational_problem_fixture() {
        // r = (x^2 + x y)/y^2
        let ring = WeylRing::new(2);
        let vars = witness_vars(&ring);
        let num = MultiPoly::var(&vars, 0)
            .pow(2)
            .add(&MultiPoly::var(&vars, 0).mul(&MultiPoly::var(&vars, 1)));
        let den = MultiPoly::var(&vars, 1).pow(2);
        let r = RatFun::new(num, den).unwrap();
        let ideal = ann_rational(&ring, &r).unwrap();
        let w = ExprWitness::rational(r);
        for g in ideal.generators() {
            assert!(crate::weyl::witness::apply(g, &w).unwrap().is_zero());
        }
        assert_eq!(ideal.holonomic_rank().unwrap(), Some(1));
    }

    #[test]
    fn ann_exp_examples() {
        let ring = uni_ring();
        let vars = witness_vars(&ring);
        // exp(x): <d - 1>
        let r = RatFun::from_poly(MultiPoly::var(&vars, 0));
        let ideal = ann_exp_rational(&ring, &r).unwrap();
        let expect = WeylElement::d(&ring, 0).sub(&WeylElement::one(&ring)).unwrap();
        assert_eq!(ideal.generators(), &[expect]);
        // exp(-x^2): <d + 2x>
        let r = RatFun::from_poly(MultiPoly::var(&vars, 0).pow(2).neg());
        let ideal = ann_exp_rational(&ring, &r).unwrap();
        let expect = WeylElement::d(&ring, 0)
            .add(&WeylElement::scalar_term(&ring, &[1], &[0], rat(2)))
            .unwrap();
        assert_eq!(ideal.generators(), &[expect]);
        // exp(0) = 1: <d>
        let r = RatFun::zero(&vars);
        let ideal = ann_exp_rational(&ring, &r).unwrap();
        assert_eq!(ideal.generators(), &[WeylElement::d(&ring, 0)]);
    }

    #[test]
    fn algebraic_sqrt() {
        // y^2 - x: 2x y' = y, operator 2x d - 1
        let v = VarSet::of(&["x", "y"]);
        let f = MultiPoly::var(&v, 1).pow(2).sub(&MultiPoly::var(&v, 0));
        let alg = AlgebraicFunction::new(f, 0, 1).unwrap();
        let op = algebraic_to_ode(&alg).unwrap();
        let ring = uni_ring();
        let expect = WeylElement::scalar_term(&ring, &[1], &[1], rat(2))
            .sub(&WeylElement::one(&ring))
            .unwrap();
        assert_eq!(op, expect);
    }

    #[test]
    fn algebraic_monomial() {
        // y - x^3: x y' = 3y, operator x d - 3
        let v = VarSet::of(&["x", "y"]);
        let f = MultiPoly::var(&v, 1).sub(&MultiPoly::var(&v, 0).pow(3));
        let alg = AlgebraicFunction::new(f, 0, 1).unwrap();
        let op = algebraic_to_ode(&alg).unwrap();
        let ring = uni_ring();
        let expect = WeylElement::theta(&ring, 0)
            .sub(&WeylElement::constant(&ring, rat(3)))
            .unwrap();
        assert_eq!(op, expect);
    }

    #[test]
    fn sum_of_exponentials_reproduces_kernel_operator() {
        // exp(x) + exp(-x^2): (2x+1) d^2 + (4x^2-3) d - 4x^2 - 2x + 2
        let ring = uni_ring();
        let f = exp_rep(&ring);
        let g = gauss_rep(&ring);
        let h = closure_sum(&f, &g).unwrap();
        let op = h.univariate_operator().unwrap();
        let xv = ring.x_vars();
        let x = MultiPoly::var(&xv, 0);
        let c = |k: i64| MultiPoly::constant(&xv, rat(k));
        let coeffs = vec![
            x.pow(2).scale(&rat(-4)).sub(&x.scale(&rat(2))).add(&c(2)),
            x.pow(2).scale(&rat(4)).sub(&c(3)),
            x.scale(&rat(2)).add(&c(1)),
        ];
        let expect = WeylElement::from_univariate_coeff_polys(&ring, &coeffs).unwrap();
        assert_eq!(op, expect);
        // anchors h(0) = 2, h'(0) = 1
        assert_eq!(h.anchors.len(), 2);
        assert_eq!(h.anchors[0].value.as_exact().unwrap(), &rat(2));
        assert_eq!(h.anchors[1].value.as_exact().unwrap(), &rat(1));
    }

    #[test]
    fn product_of_exponentials() {
        // exp(x) * exp(-x^2): <d + 2x - 1>, j(0) = 1
        let ring = uni_ring();
        let f = exp_rep(&ring);
        let g = gauss_rep(&ring);
        let j = closure_product(&f, &g).unwrap();
        let op = j.univariate_operator().unwrap();
        let expect = WeylElement::d(&ring, 0)
            .add(&WeylElement::scalar_term(&ring, &[1], &[0], rat(2)))
            .unwrap()
            .sub(&WeylElement::one(&ring))
            .unwrap();
        assert_eq!(op, expect);
        assert_eq!(j.anchors[0].value.as_exact().unwrap(), &rat(1));
    }

    #[test]
    fn sum_with_zero_keeps_operator_class() {
        // sin + cos from <d^2 + 1> each: the sum operator reduces to
        // <d^2 + 1> over R
        let ring = uni_ring();
        let d2p1 = WeylElement::scalar_term(&ring, &[0], &[2], rat(1))
            .add(&WeylElement::one(&ring))
            .unwrap();
        let ideal = DIdeal::new(&ring, vec![d2p1.clone()]).unwrap();
        let mk = |v0: i64, v1: i64| {
            HolonomicRep::new(
                ideal.clone(),
                vec![
                    Anchor {
                        point: AnchorPoint::rational1(rat(0)),
                        derivative: vec![0],
                        value: Value::Exact(rat(v0)),
                    },
                    Anchor {
                        point: AnchorPoint::rational1(rat(0)),
                        derivative: vec![1],
                        value: Value::Exact(rat(v1)),
                    },
                ],
            )
        };
        let sin = mk(0, 1);
        let cos = mk(1, 0);
        let h = closure_sum(&sin, &cos).unwrap();
        let op = h.univariate_operator().unwrap();
        assert_eq!(op, d2p1);
        assert_eq!(h.anchors[0].value.as_exact().unwrap(), &rat(1));
        assert_eq!(h.anchors[1].value.as_exact().unwrap(), &rat(1));
    }

    #[test]
    fn product_of_sines_is_order_three() {
        // sin * sin satisfies an operator of order <= 3 equivalent to
        // <d^3 + 4d> (sin^2 = (1 - cos 2x)/2)
        let ring = uni_ring();
        let d2p1 = WeylElement::scalar_term(&ring, &[0], &[2], rat(1))
            .add(&WeylElement::one(&ring))
            .unwrap();
        let ideal = DIdeal::new(&ring, vec![d2p1]).unwrap();
        let sin = HolonomicRep::new(
            ideal,
            vec![
                Anchor {
                    point: AnchorPoint::rational1(rat(0)),
                    derivative: vec![0],
                    value: Value::Exact(rat(0)),
                },
                Anchor {
                    point: AnchorPoint::rational1(rat(0)),
                    derivative: vec![1],
                    value: Value::Exact(rat(1)),
                },
            ],
        );
        let sq = closure_product(&sin, &sin).unwrap();
        let op = sq.univariate_operator().unwrap();
        assert!(op.order() <= 3);
        // d^3 + 4d must reduce to zero against the output over R
        let target = WeylElement::scalar_term(&ring, &[0], &[3], rat(1))
            .add(&WeylElement::scalar_term(&ring, &[0], &[1], rat(4)))
            .unwrap();
        let gb = rops::rational_groebner(&[op], &ring).unwrap();
        let nf = rops::rational_reduce(&ROp::from_weyl(&target).unwrap(), &gb);
        assert!(nf.is_zero());
    }

    #[test]
    fn derivative_of_exponential() {
        let ring = uni_ring();
        let f = exp_rep(&ring);
        let df = closure_derivative(&f, 0).unwrap();
        let op = df.univariate_operator().unwrap();
        let expect = WeylElement::d(&ring, 0).sub(&WeylElement::one(&ring)).unwrap();
        assert_eq!(op, expect);
    }

    #[test]
    fn derivative_of_log_solution() {
        // <x d^2 + d> annihilates log x; the derivative 1/x is annihilated
        // by x d + 1 (up to R-membership)
        let ring = uni_ring();
        let p = WeylElement::scalar_term(&ring, &[1], &[2], rat(1))
            .add(&WeylElement::d(&ring, 0))
            .unwrap();
        let ideal = DIdeal::new(&ring, vec![p]).unwrap();
        let rep = HolonomicRep::new(
            ideal,
            vec![
                Anchor {
                    point: AnchorPoint::rational1(rat(1)),
                    derivative: vec![0],
                    value: Value::Exact(rat(0)),
                },
                Anchor {
                    point: AnchorPoint::rational1(rat(1)),
                    derivative: vec![1],
                    value: Value::Exact(rat(1)),
                },
            ],
        );
        let drep = closure_derivative(&rep, 0).unwrap();
        let op = drep.univariate_operator().unwrap();
        let target = WeylElement::theta(&ring, 0).add(&WeylElement::one(&ring)).unwrap();
        let gb = rops::rational_groebner(&[op], &ring).unwrap();
        let nf = rops::rational_reduce(&ROp::from_weyl(&target).unwrap(), &gb);
        assert!(nf.is_zero());
    }

    #[test]
    fn derivative_of_sine_class() {
        let ring = uni_ring();
        let d2p1 = WeylElement::scalar_term(&ring, &[0], &[2], rat(1))
            .add(&WeylElement::one(&ring))
            .unwrap();
        let ideal = DIdeal::new(&ring, vec![d2p1.clone()]).unwrap();
        let sin = HolonomicRep::new(
            ideal,
            vec![
                Anchor {
                    point: AnchorPoint::rational1(rat(0)),
                    derivative: vec![0],
                    value: Value::Exact(rat(0)),
                },
                Anchor {
                    point: AnchorPoint::rational1(rat(0)),
                    derivative: vec![1],
                    value: Value::Exact(rat(1)),
                },
            ],
        );
        let dsin = closure_derivative(&sin, 0).unwrap();
        let op = dsin.univariate_operator().unwrap();
        assert_eq!(op, d2p1);
    }

    #[test]
    fn taylor_series_and_oracle() {
        let ring = uni_ring();
        let f = exp_rep(&ring);
        let s = taylor_from_rep(&f, &rat(0), 8).unwrap();
        // 1 + x + x^2/2 + x^3/6 + x^4/24 + x^5/120 + ...
        assert_eq!(s.coeff(0, 0), rat(1));
        assert_eq!(s.coeff(1, 0), rat(1));
        assert_eq!(s.coeff(2, 0), BigRational::new(1.into(), 2.into()));
        assert_eq!(s.coeff(3, 0), BigRational::new(1.into(), 6.into()));
        assert_eq!(s.coeff(4, 0), BigRational::new(1.into(), 24.into()));
        assert_eq!(s.coeff(5, 0), BigRational::new(1.into(), 120.into()));
        let op = f.univariate_operator().unwrap();
        assert!(series_oracle_passes(&op, &s).unwrap());
        // a wrong operator fails
        let wrong = WeylElement::d(&ring, 0).sub(&WeylElement::constant(&ring, rat(2))).unwrap();
        assert!(!series_oracle_passes(&wrong, &s).unwrap());
    }

    #[test]
    fn scalar_multiples_share_the_ideal() {
        // ideal of c*f equals ideal of f: anchors differ, operators agree
        let ring = uni_ring();
        let f = exp_rep(&ring);
        let mut cf = f.clone();
        for a in cf.anchors.iter_mut() {
            a.value = a.value.scale(&rat(5));
        }
        let s = closure_sum(&f, &cf).unwrap();
        let op = s.univariate_operator().unwrap();
        let expect = WeylElement::d(&ring, 0).sub(&WeylElement::one(&ring)).unwrap();
        assert_eq!(op, expect);
    }
}
