//! Left ideals in the Weyl algebra: Buchberger with weight orders, the
//! characteristic ideal and holonomicity test, holonomic rank over the
//! rational Weyl algebra, singular locus, distraction, and indicial ideals.
//!
//! Weights with negative x-components (the (-w, w) family) are not term
//! orders, so those Groebner bases run in the homogenized algebra with a
//! central h and the relation d x = x d + h^2, then dehomogenize.

pub mod frobenius;
pub mod rops;

use crate::error::{Error, Result};
use crate::exact::groebner::{commutative_groebner, ideal_dimension};
use crate::exact::order::{MonomialOrder, TieBreak};
use crate::exact::poly::{MultiPoly, VarSet};
use crate::weyl::{NormalMono, WeightVector, WeylElement, WeylRing};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

/// A left D-ideal with a Groebner-basis cache keyed by the exact order.
#[derive(Debug)]
pub struct DIdeal {
    ring: WeylRing,
    generators: Vec<WeylElement>,
    cache: RwLock<BTreeMap<String, Arc<Vec<WeylElement>>>>,
}

impl Clone for DIdeal {
    fn clone(&self) -> Self {
        DIdeal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl DIdeal {
    pub fn new(ring: &WeylRing, generators: Vec<WeylElement>) -> Result<Self> {
        let generators: Vec<WeylElement> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(DIdeal { ring: ring.clone(), generators, cache: RwLock::new(BTreeMap::new()) })
    }

    pub fn ring(&self) -> &WeylRing {
        &self.ring
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// Reduced left Groebner basis for the weight order refined by the
    /// tie-break; cached per order.
    pub fn groebner(
        &self,
        weight: &WeightVector,
        tiebreak: TieBreak,
    ) -> Result<Arc<Vec<WeylElement>>> {
        let key = order_key(weight, &tiebreak);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let gb = Arc::new(weyl_groebner(&self.generators, &self.ring, weight, tiebreak)?);
        self.cache.write().unwrap().insert(key, gb.clone());
        Ok(gb)
    }

    /// True when the ideal contains a nonzero constant.
    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner(&WeightVector::symbol(self.ring.n()), TieBreak::GrevLex)?;
        Ok(gb.iter().any(|g| {
            g.order() == 0 && g.num_terms() == 1 && {
                let ((a, _), _) = g.terms().next().unwrap();
                a.iter().all(|&x| x == 0)
            }
        }))
    }

    /// Generators of ch(I) = in_(0,e)(I) in C[x, xi].
    pub fn characteristic_ideal(&self) -> Result<Vec<MultiPoly>> {
        if self.generators.is_empty() {
            return Err(Error::ZeroInput("characteristic ideal of the zero ideal"));
        }
        if self.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        let gb = self.groebner(&WeightVector::symbol(self.ring.n()), TieBreak::GrevLex)?;
        gb.iter().map(|g| g.symbol()).collect()
    }

    /// dim ch(I) == n.
    pub fn is_holonomic(&self) -> Result<bool> {
        Ok(self.characteristic_dimension()? == self.ring.n())
    }

    /// Krull dimension of C[x,xi]/ch(I).
    pub fn characteristic_dimension(&self) -> Result<usize> {
        let ch = self.characteristic_ideal()?;
        Ok(ideal_dimension(&ch, &MonomialOrder::grevlex()))
    }

    /// Holonomic rank: standard monomials of a Groebner basis of RI under
    /// graded reverse lex on the d-variables; None when infinite.
    pub fn holonomic_rank(&self) -> Result<Option<usize>> {
        let gb = rops::rational_groebner(&self.generators, &self.ring)?;
        Ok(rops::standard_monomial_exponents(&gb, self.ring.n()).map(|s| s.len()))
    }

    /// Singular locus: generators of (ch(I) : <xi>^inf) cap C[x].
    /// Saturation by the ideal <xi_1..xi_n> is the intersection of the
    /// single saturations, and projection commutes with intersections.
    pub fn singular_locus(&self) -> Result<Vec<MultiPoly>> {
        let ch = self.characteristic_ideal()?;
        let n = self.ring.n();
        let svars = self.ring.symbol_vars();
        let xvars = self.ring.x_vars();
        let xi_indices: Vec<usize> = (n..2 * n).collect();
        let mut acc: Option<Vec<MultiPoly>> = None;
        for i in 0..n {
            let xi = MultiPoly::var(&svars, n + i);
            let sat = crate::exact::groebner::saturate_single(&ch, &xi);
            let elim = crate::exact::groebner::eliminate(&sat, &xi_indices);
            let projected: Vec<MultiPoly> = elim
                .iter()
                .map(|p| {
                    let mut out = MultiPoly::zero(&xvars);
                    for (e, c) in p.terms() {
                        out = out.add(&MultiPoly::monomial(&xvars, &e[..n], c.clone()));
                    }
                    out
                })
                .collect();
            acc = Some(match acc {
                None => projected,
                Some(prev) => crate::exact::groebner::ideal_intersection(&prev, &projected),
            });
        }
        let mut out = acc.unwrap_or_default();
        if out.is_empty() {
            out.push(MultiPoly::one(&xvars));
        }
        let gb = commutative_groebner(&out, &MonomialOrder::grevlex());
        Ok(if gb.is_empty() { vec![MultiPoly::one(&xvars)] } else { gb })
    }

    /// Distraction of a torus-fixed ideal: generator-wise
    /// [theta]_b p(theta - b).
    pub fn distraction(&self) -> Result<Vec<MultiPoly>> {
        let tvars = self.ring.theta_vars();
        let mut out = Vec::new();
        for g in &self.generators {
            out.push(distraction_of(g, &tvars)?);
        }
        Ok(out)
    }

    /// Indicial ideal ind_w(I): distraction of in_(-w,w)(I), computed from a
    /// (-w,w) Groebner basis; errors when that initial ideal is not
    /// torus-fixed (non-generic w).
    pub fn indicial_ideal(&self, w: &[BigRational]) -> Result<Vec<MultiPoly>> {
        let weight = WeightVector::torus(w);
        let gb = self.groebner(&weight, TieBreak::GrevLex)?;
        let tvars = self.ring.theta_vars();
        let mut out = Vec::new();
        for g in gb.iter() {
            let init = g.initial_form(&weight)?.as_operator()?;
            match distraction_of(&init, &tvars) {
                Ok(p) => out.push(p),
                Err(Error::NotTorusFixed) => return Err(Error::NonGenericWeight),
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

fn distraction_of(g: &WeylElement, tvars: &VarSet) -> Result<MultiPoly> {
    let (_, q, b) = g.theta_rewrite()?;
    // p(theta - b)
    let mut shifted = q;
    for (k, &bk) in b.iter().enumerate() {
        if bk > 0 {
            let repl = MultiPoly::var(tvars, k).sub(&MultiPoly::constant(
                tvars,
                BigRational::from_integer(bk.into()),
            ));
            shifted = shifted.substitute(k, &repl);
        }
    }
    // [theta]_b = prod_i prod_{j<b_i} (theta_i - j)
    let mut falling = MultiPoly::one(tvars);
    for (k, &bk) in b.iter().enumerate() {
        for j in 0..bk {
            falling = falling.mul(
                &MultiPoly::var(tvars, k)
                    .sub(&MultiPoly::constant(tvars, BigRational::from_integer(j.into()))),
            );
        }
    }
    Ok(falling.mul(&shifted))
}

fn order_key(weight: &WeightVector, tiebreak: &TieBreak) -> String {
    format!("{:?}|{:?}|{:?}", weight.u, weight.v, tiebreak)
}

/// Compare normal monomials by weight, then tie-break on the concatenated
/// exponent vector.
fn cmp_mono(
    weight: &WeightVector,
    tiebreak: &TieBreak,
    m1: &NormalMono,
    m2: &NormalMono,
) -> std::cmp::Ordering {
    let w1 = weight.weight_of(m1);
    let w2 = weight.weight_of(m2);
    match w1.cmp(&w2) {
        std::cmp::Ordering::Equal => {}
        other => return other,
    }
    let cat = |m: &NormalMono| {
        let mut v = m.0.clone();
        v.extend_from_slice(&m.1);
        v
    };
    let order = match tiebreak {
        TieBreak::GrevLex => MonomialOrder::grevlex(),
        TieBreak::Lex => MonomialOrder::lex(),
    };
    order.cmp(&cat(m1), &cat(m2))
}

fn leading_mono(
    p: &WeylElement,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Option<(NormalMono, BigRational)> {
    let mut best: Option<(NormalMono, BigRational)> = None;
    for (m, c) in p.terms() {
        let replace = match &best {
            None => true,
            Some((bm, _)) => cmp_mono(weight, tiebreak, m, bm) == std::cmp::Ordering::Greater,
        };
        if replace {
            best = Some((
                m.clone(),
                c.constant_value().cloned().unwrap_or_else(BigRational::zero),
            ));
        }
    }
    best
}

fn mono_divides(a: &NormalMono, b: &NormalMono) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y) && a.1.iter().zip(&b.1).all(|(x, y)| x <= y)
}

fn mono_sub(a: &NormalMono, b: &NormalMono) -> NormalMono {
    (
        a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect(),
        a.1.iter().zip(&b.1).map(|(x, y)| x - y).collect(),
    )
}

fn mono_lcm(a: &NormalMono, b: &NormalMono) -> NormalMono {
    (
        a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect(),
        a.1.iter().zip(&b.1).map(|(x, y)| *x.max(y)).collect(),
    )
}

/// Left reduction of `p` modulo `basis` to normal form.
fn left_reduce(
    p: &WeylElement,
    basis: &[WeylElement],
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<WeylElement> {
    let leads: Vec<(NormalMono, BigRational)> = basis
        .iter()
        .map(|g| leading_mono(g, weight, tiebreak).expect("zero basis element"))
        .collect();
    let mut rem = WeylElement::zero(ring);
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = leading_mono(&work, weight, tiebreak).unwrap();
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if mono_divides(gm, &lm) {
                let q = mono_sub(&lm, gm);
                let factor = WeylElement::scalar_term(ring, &q.0, &q.1, &lc / gc);
                work = work.sub(&factor.mul(&basis[i])?)?;
                continue 'outer;
            }
        }
        let mono = WeylElement::scalar_term(ring, &lm.0, &lm.1, lc.clone());
        rem = rem.add(&mono)?;
        work = work.sub(&mono)?;
    }
    Ok(rem)
}

/// Buchberger in D for a weight order that is a genuine term order
/// (u, v >= 0). No product criterion: it is unsound in the Weyl algebra
/// (coprime leading monomials can still have a nonzero commutator).
fn buchberger_direct(
    gens: &[WeylElement],
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<Vec<WeylElement>> {
    let mut basis: Vec<WeylElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut leads: Vec<NormalMono> = basis
        .iter()
        .map(|g| leading_mono(g, weight, tiebreak).unwrap().0)
        .collect();
    let pair_key = |leads: &[NormalMono], i: usize, j: usize| {
        let l = mono_lcm(&leads[i], &leads[j]);
        let deg: u64 = l.0.iter().map(|&x| x as u64).sum::<u64>()
            + l.1.iter().map(|&x| x as u64).sum::<u64>();
        (deg, i, j)
    };
    let mut pairs: std::collections::BTreeSet<(u64, usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert(pair_key(&leads, i, j));
        }
    }
    while let Some(&(d, i, j)) = pairs.iter().next() {
        pairs.remove(&(d, i, j));
        let l = mono_lcm(&leads[i], &leads[j]);
        let (mi, ci) = {
            let (m, c) = leading_mono(&basis[i], weight, tiebreak).unwrap();
            (mono_sub(&l, &m), c)
        };
        let (mj, cj) = {
            let (m, c) = leading_mono(&basis[j], weight, tiebreak).unwrap();
            (mono_sub(&l, &m), c)
        };
        let ti = WeylElement::scalar_term(ring, &mi.0, &mi.1, BigRational::one() / ci);
        let tj = WeylElement::scalar_term(ring, &mj.0, &mj.1, BigRational::one() / cj);
        let s = ti.mul(&basis[i])?.sub(&tj.mul(&basis[j])?)?;
        let r = left_reduce(&s, &basis, ring, weight, tiebreak)?;
        if !r.is_zero() {
            let k = basis.len();
            leads.push(leading_mono(&r, weight, tiebreak).unwrap().0);
            basis.push(r);
            for t in 0..k {
                pairs.insert(pair_key(&leads, t, k));
            }
        }
    }
    interreduce(&mut basis, ring, weight, tiebreak)?;
    Ok(basis)
}

fn interreduce(
    basis: &mut Vec<WeylElement>,
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<()> {
    let mut keep: Vec<WeylElement> = Vec::new();
    'next: for i in 0..basis.len() {
        let (li, _) = leading_mono(&basis[i], weight, tiebreak).unwrap();
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let (lj, _) = leading_mono(&basis[j], weight, tiebreak).unwrap();
            if mono_divides(&lj, &li) && (lj != li || j < i) {
                continue 'next;
            }
        }
        keep.push(basis[i].clone());
    }
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<WeylElement> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = left_reduce(&keep[i], &others, ring, weight, tiebreak)?;
        if !r.is_zero() {
            let (_, c) = leading_mono(&r, weight, tiebreak).unwrap();
            out.push(r.scale(&(BigRational::one() / c)));
        }
    }
    out.sort_by(|a, b| {
        let la = leading_mono(a, weight, tiebreak).unwrap().0;
        let lb = leading_mono(b, weight, tiebreak).unwrap().0;
        cmp_mono(weight, tiebreak, &la, &lb)
    });
    *basis = out;
    Ok(())
}

/// Reduced left Groebner basis of the ideal for the given weight order.
/// Nonnegative weights run directly; general u+v >= 0 weights go through
/// the homogenized Weyl algebra.
pub fn weyl_groebner(
    gens: &[WeylElement],
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: TieBreak,
) -> Result<Vec<WeylElement>> {
    if gens.iter().any(|g| g.has_params()) {
        return Err(Error::Unsupported(
            "Groebner bases over D[s] are not supported; instantiate the parameters".into(),
        ));
    }
    if weight.n() != ring.n() {
        return Err(Error::VariableMismatch);
    }
    if weight.is_nonnegative() {
        return buchberger_direct(gens, ring, weight, &tiebreak);
    }
    homogenized_groebner(gens, ring, weight, &tiebreak)
}

/// Normal form of `p` against a reduced basis for the given order.
pub fn weyl_normal_form(
    p: &WeylElement,
    basis: &[WeylElement],
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: TieBreak,
) -> Result<WeylElement> {
    left_reduce(p, basis, ring, weight, &tiebreak)
}

// ---------------------------------------------------------------------------
// homogenized engine

fn homogenized_groebner(
    gens: &[WeylElement],
    ring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<Vec<WeylElement>> {
    let hring = WeylRing::with_params(ring.n(), VarSet::of(&["~h"]));
    let hgens: Vec<WeylElement> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| homogenize(g, &hring))
        .collect::<Result<_>>()?;
    let hgb = h_buchberger(&hgens, &hring, weight, tiebreak)?;
    let mut out = Vec::new();
    for g in &hgb {
        out.push(dehomogenize(g, ring)?);
    }
    Ok(out)
}

fn homogenize(g: &WeylElement, hring: &WeylRing) -> Result<WeylElement> {
    let d = g
        .terms()
        .map(|((a, b), _)| a.iter().sum::<u32>() + b.iter().sum::<u32>())
        .max()
        .unwrap_or(0);
    let mut out = WeylElement::zero(hring);
    for ((a, b), c) in g.terms() {
        let deg = a.iter().sum::<u32>() + b.iter().sum::<u32>();
        let cc = c.constant_value().cloned().unwrap();
        let coeff = MultiPoly::monomial(hring.params(), &[d - deg], cc);
        out = out.add(&WeylElement::term(hring, a, b, coeff))?;
    }
    Ok(out)
}

fn dehomogenize(g: &WeylElement, ring: &WeylRing) -> Result<WeylElement> {
    let mut out = WeylElement::zero(ring);
    for ((a, b), c) in g.terms() {
        // set h = 1 in the coefficient
        let val: BigRational = c.terms().map(|(_, v)| v.clone()).sum();
        out = out.add(&WeylElement::scalar_term(ring, a, b, val))?;
    }
    Ok(out)
}

type HMono = (Vec<u32>, Vec<u32>, u32);

fn h_lead(
    p: &WeylElement,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Option<(HMono, BigRational)> {
    let mut best: Option<(HMono, BigRational)> = None;
    for ((a, b), c) in p.terms() {
        // homogeneous elements carry a single h-monomial per (a, b)
        debug_assert_eq!(c.num_terms(), 1);
        let (he, hc) = c.terms().next().unwrap();
        let cand = ((a.clone(), b.clone(), he[0]), hc.clone());
        let replace = match &best {
            None => true,
            Some((bm, _)) => h_cmp(weight, tiebreak, &cand.0, bm) == std::cmp::Ordering::Greater,
        };
        if replace {
            best = Some(cand);
        }
    }
    best
}

fn h_cmp(
    weight: &WeightVector,
    tiebreak: &TieBreak,
    m1: &HMono,
    m2: &HMono,
) -> std::cmp::Ordering {
    let w1 = weight.weight_of(&(m1.0.clone(), m1.1.clone()));
    let w2 = weight.weight_of(&(m2.0.clone(), m2.1.clone()));
    match w1.cmp(&w2) {
        std::cmp::Ordering::Equal => {}
        other => return other,
    }
    let cat = |m: &HMono| {
        let mut v = m.0.clone();
        v.extend_from_slice(&m.1);
        v.push(m.2);
        v
    };
    let order = match tiebreak {
        TieBreak::GrevLex => MonomialOrder::grevlex(),
        TieBreak::Lex => MonomialOrder::lex(),
    };
    order.cmp(&cat(m1), &cat(m2))
}

fn h_divides(a: &HMono, b: &HMono) -> bool {
    a.2 <= b.2
        && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
        && a.1.iter().zip(&b.1).all(|(x, y)| x <= y)
}

fn h_sub(a: &HMono, b: &HMono) -> HMono {
    (
        a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect(),
        a.1.iter().zip(&b.1).map(|(x, y)| x - y).collect(),
        a.2 - b.2,
    )
}

fn h_lcm(a: &HMono, b: &HMono) -> HMono {
    (
        a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect(),
        a.1.iter().zip(&b.1).map(|(x, y)| *x.max(y)).collect(),
        a.2.max(b.2),
    )
}

fn h_term(hring: &WeylRing, m: &HMono, c: BigRational) -> WeylElement {
    WeylElement::term(hring, &m.0, &m.1, MultiPoly::monomial(hring.params(), &[m.2], c))
}

fn h_reduce(
    p: &WeylElement,
    basis: &[WeylElement],
    hring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<WeylElement> {
    let leads: Vec<(HMono, BigRational)> =
        basis.iter().map(|g| h_lead(g, weight, tiebreak).unwrap()).collect();
    let mut rem = WeylElement::zero(hring);
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = h_lead(&work, weight, tiebreak).unwrap();
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if h_divides(gm, &lm) {
                let q = h_sub(&lm, gm);
                let factor = h_term(hring, &q, &lc / gc);
                work = work.sub(&factor.mul_homog(&basis[i], 0)?)?;
                continue 'outer;
            }
        }
        let mono = h_term(hring, &lm, lc);
        rem = rem.add(&mono)?;
        work = work.sub(&mono)?;
    }
    Ok(rem)
}

fn h_buchberger(
    gens: &[WeylElement],
    hring: &WeylRing,
    weight: &WeightVector,
    tiebreak: &TieBreak,
) -> Result<Vec<WeylElement>> {
    let mut basis: Vec<WeylElement> = gens.to_vec();
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut leads: Vec<HMono> =
        basis.iter().map(|g| h_lead(g, weight, tiebreak).unwrap().0).collect();
    let pair_key = |leads: &[HMono], i: usize, j: usize| {
        let l = h_lcm(&leads[i], &leads[j]);
        let deg: u64 = l.0.iter().map(|&x| x as u64).sum::<u64>()
            + l.1.iter().map(|&x| x as u64).sum::<u64>()
            + l.2 as u64;
        (deg, i, j)
    };
    let mut pairs: std::collections::BTreeSet<(u64, usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert(pair_key(&leads, i, j));
        }
    }
    while let Some(&(d, i, j)) = pairs.iter().next() {
        pairs.remove(&(d, i, j));
        let l = h_lcm(&leads[i], &leads[j]);
        let (mi, ci) = {
            let (m, c) = h_lead(&basis[i], weight, tiebreak).unwrap();
            (h_sub(&l, &m), c)
        };
        let (mj, cj) = {
            let (m, c) = h_lead(&basis[j], weight, tiebreak).unwrap();
            (h_sub(&l, &m), c)
        };
        let ti = h_term(hring, &mi, BigRational::one() / ci);
        let tj = h_term(hring, &mj, BigRational::one() / cj);
        let s = ti.mul_homog(&basis[i], 0)?.sub(&tj.mul_homog(&basis[j], 0)?)?;
        let r = h_reduce(&s, &basis, hring, weight, tiebreak)?;
        if !r.is_zero() {
            let k = basis.len();
            leads.push(h_lead(&r, weight, tiebreak).unwrap().0);
            basis.push(r);
            for t in 0..k {
                pairs.insert(pair_key(&leads, t, k));
            }
        }
    }
    // minimalize (by h-leading monomials)
    let mut keep: Vec<WeylElement> = Vec::new();
    'next: for i in 0..basis.len() {
        let li = h_lead(&basis[i], weight, tiebreak).unwrap().0;
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let lj = h_lead(&basis[j], weight, tiebreak).unwrap().0;
            if h_divides(&lj, &li) && (lj != li || j < i) {
                continue 'next;
            }
        }
        keep.push(basis[i].clone());
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::groebner::ideals_equal;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn two_planes_ideal() -> (WeylRing, DIdeal) {
        // <x1 d2, x2 d1>
        let r = WeylRing::new(2);
        let g1 = WeylElement::scalar_term(&r, &[1, 0], &[0, 1], rat(1));
        let g2 = WeylElement::scalar_term(&r, &[0, 1], &[1, 0], rat(1));
        let i = DIdeal::new(&r, vec![g1, g2]).unwrap();
        (r, i)
    }

    #[test]
    fn two_planes_groebner_contains_commutator() {
        let (r, i) = two_planes_ideal();
        let gb = i.groebner(&WeightVector::symbol(2), TieBreak::GrevLex).unwrap();
        let com = WeylElement::theta(&r, 0).sub(&WeylElement::theta(&r, 1)).unwrap();
        let nf =
            weyl_normal_form(&com, &gb, &r, &WeightVector::symbol(2), TieBreak::GrevLex).unwrap();
        assert!(nf.is_zero());
        // some basis element has symbol x1 xi1 - x2 xi2 up to sign
        let sv = r.symbol_vars();
        let target = MultiPoly::monomial(&sv, &[1, 0, 1, 0], rat(1))
            .sub(&MultiPoly::monomial(&sv, &[0, 1, 0, 1], rat(1)));
        let found = gb.iter().any(|g| {
            let s = g.symbol().unwrap();
            s == target || s == target.neg()
        });
        assert!(found);
    }

    #[test]
    fn two_planes_characteristic_ideal_and_rank() {
        let (r, i) = two_planes_ideal();
        let ch = i.characteristic_ideal().unwrap();
        let sv = r.symbol_vars();
        let expect = vec![
            MultiPoly::monomial(&sv, &[1, 0, 0, 1], rat(1)),
            MultiPoly::monomial(&sv, &[0, 1, 1, 0], rat(1)),
            MultiPoly::monomial(&sv, &[1, 0, 1, 0], rat(1))
                .sub(&MultiPoly::monomial(&sv, &[0, 1, 0, 1], rat(1))),
        ];
        assert!(ideals_equal(&ch, &expect));
        assert!(i.is_holonomic().unwrap());
        assert_eq!(i.holonomic_rank().unwrap(), Some(1));
    }

    #[test]
    fn principal_and_monomial_bases_are_stable() {
        let r = WeylRing::new(1);
        let g = WeylElement::scalar_term(&r, &[0], &[2], rat(1))
            .add(&WeylElement::one(&r))
            .unwrap();
        let i = DIdeal::new(&r, vec![g.clone()]).unwrap();
        let gb = i.groebner(&WeightVector::symbol(1), TieBreak::GrevLex).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], g);

        let r2 = WeylRing::new(2);
        let gens = vec![WeylElement::d(&r2, 0), WeylElement::d(&r2, 1)];
        let i2 = DIdeal::new(&r2, gens.clone()).unwrap();
        let gb2 = i2.groebner(&WeightVector::symbol(2), TieBreak::GrevLex).unwrap();
        let mut got = gb2.as_ref().clone();
        got.sort_by_key(|g| format!("{g}"));
        let mut expect = gens.clone();
        expect.sort_by_key(|g| format!("{g}"));
        assert_eq!(got, expect);
    }

    #[test]
    fn finite_rank_shape_from_lecture_notes() {
        // <x1 d1^2, x1 d2^3>: the S-pair calculus discovers d2^3, so the
        // reduced basis is {x1 d1^2, d2^3}; rank over R is 6.
        let r = WeylRing::new(2);
        let g1 = WeylElement::scalar_term(&r, &[1, 0], &[2, 0], rat(1));
        let g2 = WeylElement::scalar_term(&r, &[1, 0], &[0, 3], rat(1));
        let i = DIdeal::new(&r, vec![g1, g2]).unwrap();
        assert_eq!(i.holonomic_rank().unwrap(), Some(6));
        let ch = i.characteristic_ideal().unwrap();
        let sv = r.symbol_vars();
        let expect = vec![
            MultiPoly::monomial(&sv, &[1, 0, 2, 0], rat(1)),
            MultiPoly::monomial(&sv, &[0, 0, 0, 3], rat(1)),
        ];
        assert!(ideals_equal(&ch, &expect));
        assert_eq!(i.characteristic_dimension().unwrap(), 2);
    }

    #[test]
    fn constants_ideal_is_holonomic() {
        let r = WeylRing::new(1);
        let i = DIdeal::new(&r, vec![WeylElement::d(&r, 0)]).unwrap();
        assert!(i.is_holonomic().unwrap());
        assert_eq!(i.holonomic_rank().unwrap(), Some(1));
    }

    #[test]
    fn singular_locus_of_constant_coefficient_operator() {
        // <(d+3)^2 (d-7)>: empty singular locus
        let r = WeylRing::new(1);
        let d = WeylElement::d(&r, 0);
        let p = d
            .add(&WeylElement::constant(&r, rat(3)))
            .unwrap()
            .pow(2)
            .unwrap()
            .mul(&d.sub(&WeylElement::constant(&r, rat(7))).unwrap())
            .unwrap();
        let i = DIdeal::new(&r, vec![p]).unwrap();
        let sing = i.singular_locus().unwrap();
        assert_eq!(sing.len(), 1);
        assert!(sing[0].is_constant());
    }

    #[test]
    fn singular_locus_of_theta_operator() {
        // <(theta+3)^2 (theta-7)>: singular exactly at the origin; the
        // saturation of <x^3 xi^3> yields <x^3>
        let r = WeylRing::new(1);
        let t = WeylElement::theta(&r, 0);
        let p = t
            .add(&WeylElement::constant(&r, rat(3)))
            .unwrap()
            .pow(2)
            .unwrap()
            .mul(&t.sub(&WeylElement::constant(&r, rat(7))).unwrap())
            .unwrap();
        let i = DIdeal::new(&r, vec![p]).unwrap();
        let sing = i.singular_locus().unwrap();
        assert_eq!(sing.len(), 1);
        assert!(!sing[0].is_constant());
        // vanishes only at the origin
        assert!(sing[0].coeff(&[0]).is_zero());
        let nonzero = sing[0].eval_all(&[rat(2)]);
        assert!(!nonzero.is_zero());
    }

    #[test]
    fn distraction_staircase() {
        // <d1^3, d1 d2, d2^2> -> <t1(t1-1)(t1-2), t1 t2, t2(t2-1)>
        let r = WeylRing::new(2);
        let gens = vec![
            WeylElement::scalar_term(&r, &[0, 0], &[3, 0], rat(1)),
            WeylElement::scalar_term(&r, &[0, 0], &[1, 1], rat(1)),
            WeylElement::scalar_term(&r, &[0, 0], &[0, 2], rat(1)),
        ];
        let i = DIdeal::new(&r, gens).unwrap();
        let dist = i.distraction().unwrap();
        let tv = r.theta_vars();
        let t1 = MultiPoly::var(&tv, 0);
        let t2 = MultiPoly::var(&tv, 1);
        let c = |k: i64| MultiPoly::constant(&tv, rat(k));
        let expect = vec![
            t1.mul(&t1.sub(&c(1))).mul(&t1.sub(&c(2))),
            t1.mul(&t2),
            t2.mul(&t2.sub(&c(1))),
        ];
        assert_eq!(dist, expect);
    }

    #[test]
    fn distraction_of_pure_power() {
        let r = WeylRing::new(1);
        let i = DIdeal::new(&r, vec![WeylElement::scalar_term(&r, &[0], &[4], rat(1))]).unwrap();
        let dist = i.distraction().unwrap();
        let tv = r.theta_vars();
        let t = MultiPoly::var(&tv, 0);
        let c = |k: i64| MultiPoly::constant(&tv, rat(k));
        assert_eq!(dist, vec![t.mul(&t.sub(&c(1))).mul(&t.sub(&c(2))).mul(&t.sub(&c(3)))]);
    }

    #[test]
    fn distraction_rejects_mixed_generators() {
        let r = WeylRing::new(1);
        let p = WeylElement::x(&r, 0).add(&WeylElement::d(&r, 0)).unwrap();
        let i = DIdeal::new(&r, vec![p]).unwrap();
        assert!(matches!(i.distraction(), Err(Error::NotTorusFixed)));
    }

    #[test]
    fn indicial_of_log_example() {
        // ind_1(<x^2 d^2 - x d + 1 - x>) = <(theta - 1)^2>
        let r = WeylRing::new(1);
        let p = WeylElement::scalar_term(&r, &[2], &[2], rat(1))
            .add(&WeylElement::scalar_term(&r, &[1], &[1], rat(-1)))
            .unwrap()
            .add(&WeylElement::one(&r))
            .unwrap()
            .add(&WeylElement::x(&r, 0).scale(&rat(-1)))
            .unwrap();
        let i = DIdeal::new(&r, vec![p]).unwrap();
        let ind = i.indicial_ideal(&[rat(1)]).unwrap();
        let tv = r.theta_vars();
        let t = MultiPoly::var(&tv, 0);
        let expect = t.sub(&MultiPoly::one(&tv)).pow(2);
        assert!(ideals_equal(&ind, &[expect]));
    }

    #[test]
    fn indicial_of_exponential() {
        // ind_1(<d - 1>) = <theta>
        let r = WeylRing::new(1);
        let p = WeylElement::d(&r, 0).sub(&WeylElement::one(&r)).unwrap();
        let i = DIdeal::new(&r, vec![p]).unwrap();
        let ind = i.indicial_ideal(&[rat(1)]).unwrap();
        let tv = r.theta_vars();
        assert!(ideals_equal(&ind, &[MultiPoly::var(&tv, 0)]));
    }
}
