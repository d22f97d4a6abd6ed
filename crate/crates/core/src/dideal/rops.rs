//! Groebner bases over the rational Weyl algebra R = C(x)<d> in graded
//! reverse lexicographic order on the d-variables. Elements are kept
//! denominator-free (coefficients in Q[x]) and reductions are
//! fraction-free; rational normal forms are recovered at the end for
//! Pfaffian matrices.

use crate::error::{Error, Result};
use crate::exact::gcd::poly_gcd;
use crate::exact::order::MonomialOrder;
use crate::exact::poly::{MultiPoly, VarSet};
use crate::exact::ratfun::RatFun;
use crate::weyl::{WeylElement, WeylRing};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

/// Operator with polynomial x-coefficients indexed by d-exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ROp {
    pub xvars: VarSet,
    pub coeffs: BTreeMap<Vec<u32>, MultiPoly>,
}

impl ROp {
    pub fn zero(xvars: &VarSet) -> Self {
        ROp { xvars: xvars.clone(), coeffs: BTreeMap::new() }
    }

    pub fn from_weyl(g: &WeylElement) -> Result<Self> {
        if g.has_params() {
            return Err(Error::Unsupported("rational Weyl algebra over D[s]".into()));
        }
        let ring = g.ring();
        let xvars = ring.x_vars();
        let mut out = Self::zero(&xvars);
        for ((a, b), c) in g.terms() {
            let cc = c.constant_value().cloned().unwrap();
            let mono = MultiPoly::monomial(&xvars, a, cc);
            out.insert(b.clone(), mono);
        }
        Ok(out)
    }

    pub fn to_weyl(&self, ring: &WeylRing) -> WeylElement {
        let mut out = WeylElement::zero(ring);
        for (b, c) in &self.coeffs {
            for (e, v) in c.terms() {
                out.insert((e.clone(), b.clone()), MultiPoly::constant(ring.params(), v.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, b: Vec<u32>, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(b) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.insert(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.insert(b.clone(), c.neg());
        }
        out
    }

    /// Left multiplication by a polynomial in x (exact, no commutation).
    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        let mut out = Self::zero(&self.xvars);
        for (b, c) in &self.coeffs {
            out.insert(b.clone(), c.mul(p));
        }
        out
    }

    /// Left multiplication by d_i: d_i (c d^b) = c d^(b+e_i) + (dc/dx_i) d^b.
    pub fn apply_d(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.xvars);
        for (b, c) in &self.coeffs {
            let mut up = b.clone();
            up[i] += 1;
            out.insert(up, c.clone());
            out.insert(b.clone(), c.derivative(i));
        }
        out
    }

    /// Left multiplication by the monomial d^m.
    pub fn apply_d_mono(&self, m: &[u32]) -> Self {
        let mut cur = self.clone();
        for (i, &k) in m.iter().enumerate() {
            for _ in 0..k {
                cur = cur.apply_d(i);
            }
        }
        cur
    }

    /// Strip the polynomial content common to all coefficients.
    pub fn primitive(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut g = MultiPoly::zero(&self.xvars);
        for c in self.coeffs.values() {
            g = poly_gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        let mut out = Self::zero(&self.xvars);
        if g.is_constant() {
            // still normalize rational content to keep numbers small
            for (b, c) in &self.coeffs {
                out.insert(b.clone(), c.clone());
            }
            let mut num = num_bigint::BigInt::from(0);
            let mut den = num_bigint::BigInt::from(1);
            for c in out.coeffs.values() {
                let cc = c.content();
                num = num_integer::gcd(num, cc.numer().clone());
                den = num_integer::lcm(den, cc.denom().clone());
            }
            if !num.is_one() || !den.is_one() {
                let s = BigRational::new(den, num);
                for c in out.coeffs.values_mut() {
                    *c = c.scale(&s);
                }
            }
            out
        } else {
            for (b, c) in &self.coeffs {
                out.insert(b.clone(), c.div_exact(&g));
            }
            out
        }
    }

    fn lead(&self, order: &MonomialOrder) -> Option<(Vec<u32>, MultiPoly)> {
        let mut best: Option<&Vec<u32>> = None;
        for b in self.coeffs.keys() {
            match best {
                None => best = Some(b),
                Some(cur) => {
                    if order.cmp(b, cur) == std::cmp::Ordering::Greater {
                        best = Some(b);
                    }
                }
            }
        }
        best.map(|b| (b.clone(), self.coeffs[b].clone()))
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_sub(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Fraction-free full reduction of `p` by `basis`.
fn reduce(p: &ROp, basis: &[ROp], order: &MonomialOrder) -> ROp {
    let leads: Vec<(Vec<u32>, MultiPoly)> = basis.iter().map(|g| g.lead(order).unwrap()).collect();
    let mut rem = ROp::zero(&p.xvars);
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = work.lead(order).unwrap();
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if divides(gm, &lm) {
                let shifted = basis[i].apply_d_mono(&exp_sub(&lm, gm));
                // work <- gc * work - lc * shifted  (cancels the lead); the
                // remainder collected so far is folded back first so every
                // term carries the same scaling
                work = work.scale_poly(gc).sub(&shifted.scale_poly(&lc));
                if !rem.is_zero() {
                    work = work.add(&rem.scale_poly(gc));
                    rem = ROp::zero(&p.xvars);
                }
                work = work.primitive();
                continue 'outer;
            }
        }
        let mut mono = ROp::zero(&p.xvars);
        mono.insert(lm.clone(), lc.clone());
        rem = rem.add(&mono);
        work = work.sub(&mono);
    }
    rem
}

/// Reduced (primitive, mutually reduced) Groebner basis of the left
/// R-ideal generated by the operators, grevlex on d.
pub fn rational_groebner(gens: &[WeylElement], ring: &WeylRing) -> Result<Vec<ROp>> {
    let order = MonomialOrder::grevlex();
    let xvars = ring.x_vars();
    let mut basis: Vec<ROp> = Vec::new();
    for g in gens {
        let op = ROp::from_weyl(g)?;
        if !op.is_zero() {
            basis.push(op.primitive());
        }
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut leads: Vec<Vec<u32>> = basis.iter().map(|g| g.lead(&order).unwrap().0).collect();
    let pair_key = |leads: &[Vec<u32>], i: usize, j: usize| {
        let l = exp_lcm(&leads[i], &leads[j]);
        (l.iter().map(|&x| x as u64).sum::<u64>(), i, j)
    };
    let mut pairs: std::collections::BTreeSet<(u64, usize, usize)> = Default::default();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert(pair_key(&leads, i, j));
        }
    }
    while let Some(&(d, i, j)) = pairs.iter().next() {
        pairs.remove(&(d, i, j));
        let l = exp_lcm(&leads[i], &leads[j]);
        let (mi, ci) = {
            let (m, c) = basis[i].lead(&order).unwrap();
            (exp_sub(&l, &m), c)
        };
        let (mj, cj) = {
            let (m, c) = basis[j].lead(&order).unwrap();
            (exp_sub(&l, &m), c)
        };
        // S = cj * (d^mi . f_i) - ci * (d^mj . f_j)
        let s = basis[i]
            .apply_d_mono(&mi)
            .scale_poly(&cj)
            .sub(&basis[j].apply_d_mono(&mj).scale_poly(&ci));
        let r = reduce(&s.primitive(), &basis, &order);
        if !r.is_zero() {
            let r = r.primitive();
            let k = basis.len();
            leads.push(r.lead(&order).unwrap().0);
            basis.push(r);
            for t in 0..k {
                pairs.insert(pair_key(&leads, t, k));
            }
        }
    }
    // minimalize
    let mut keep: Vec<ROp> = Vec::new();
    'next: for i in 0..basis.len() {
        let li = basis[i].lead(&order).unwrap().0;
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let lj = basis[j].lead(&order).unwrap().0;
            if divides(&lj, &li) && (lj != li || j < i) {
                continue 'next;
            }
        }
        keep.push(basis[i].clone());
    }
    // tail-reduce
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<ROp> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(&keep[i], &others, &order).primitive();
        if !r.is_zero() {
            out.push(r);
        }
    }
    let _ = xvars;
    out.sort_by(|a, b| {
        let la = a.lead(&order).unwrap().0;
        let lb = b.lead(&order).unwrap().0;
        order.cmp(&la, &lb)
    });
    Ok(out)
}

/// Standard d-monomial exponents under the staircase of the basis, sorted by
/// grevlex so the constant monomial comes first; None when infinite.
pub fn standard_monomial_exponents(gb: &[ROp], n: usize) -> Option<Vec<Vec<u32>>> {
    let order = MonomialOrder::grevlex();
    if gb.is_empty() {
        return None;
    }
    // unit ideal: a nonzero constant operator
    if gb.iter().any(|g| g.lead(&order).map(|(m, _)| m.iter().all(|&x| x == 0)).unwrap_or(false)) {
        return Some(Vec::new());
    }
    let leads: Vec<Vec<u32>> = gb.iter().map(|g| g.lead(&order).unwrap().0).collect();
    let mut bound = vec![0u32; n];
    for i in 0..n {
        let mut b = None;
        for e in &leads {
            if e.iter().enumerate().all(|(j, &x)| j == i || x == 0) && e[i] > 0 {
                b = Some(b.map_or(e[i], |cur: u32| cur.min(e[i])));
            }
        }
        bound[i] = b?;
    }
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            if leads.iter().all(|l| !divides(l, &prefix)) {
                out.push(prefix);
            }
            continue;
        }
        let i = prefix.len();
        for v in (0..bound[i]).rev() {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out.sort_by(|a, b| order.cmp(a, b));
    Some(out)
}

/// Normal form of d^m against a monic view of the basis, with rational
/// function coefficients: returns the coefficients over the standard
/// monomials.
pub fn rational_normal_form(
    target: &[u32],
    gb: &[ROp],
    standard: &[Vec<u32>],
) -> Result<BTreeMap<Vec<u32>, RatFun>> {
    let order = MonomialOrder::grevlex();
    let xvars = gb
        .first()
        .map(|g| g.xvars.clone())
        .ok_or_else(|| Error::Unsupported("empty basis".into()))?;
    // work with RatFun coefficients directly
    let mut work: BTreeMap<Vec<u32>, RatFun> = BTreeMap::new();
    work.insert(target.to_vec(), RatFun::one(&xvars));
    let leads: Vec<(Vec<u32>, MultiPoly)> = gb.iter().map(|g| g.lead(&order).unwrap()).collect();
    loop {
        // find the largest non-standard monomial present
        let mut cand: Option<Vec<u32>> = None;
        for (m, c) in &work {
            if c.is_zero() || standard.contains(m) {
                continue;
            }
            match &cand {
                None => cand = Some(m.clone()),
                Some(cur) => {
                    if order.cmp(m, cur) == std::cmp::Ordering::Greater {
                        cand = Some(m.clone());
                    }
                }
            }
        }
        let Some(m) = cand else { break };
        let c = work.remove(&m).unwrap();
        // reduce by the basis element whose lead divides m
        let (i, (gm, gc)) = leads
            .iter()
            .enumerate()
            .find(|(_, (gm, _))| divides(gm, &m))
            .ok_or_else(|| Error::Unsupported("monomial stuck outside the staircase".into()))?;
        let shifted = gb[i].apply_d_mono(&exp_sub(&m, gm));
        // m = (1/gc) * shifted - (lower terms)/gc
        let inv = RatFun::new(MultiPoly::one(&xvars), gc.clone())?;
        for (b, coeff) in &shifted.coeffs {
            if b == &m {
                continue;
            }
            let delta = inv.mul(&RatFun::from_poly(coeff.clone())).mul(&c).neg();
            let entry = work.entry(b.clone()).or_insert_with(|| RatFun::zero(&xvars));
            *entry = entry.add(&delta);
        }
    }
    work.retain(|_, c| !c.is_zero());
    Ok(work)
}

/// Normal form of a whole operator (used for R-ideal membership tests).
pub fn rational_reduce(op: &ROp, gb: &[ROp]) -> ROp {
    let order = MonomialOrder::grevlex();
    reduce(op, gb, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn principal_univariate_basis() {
        // <x d^3 - (x+1) d + 1> is its own basis; S = {1, d, d^2}
        let r = WeylRing::new(1);
        let p = WeylElement::scalar_term(&r, &[1], &[3], rat(1))
            .add(&WeylElement::scalar_term(&r, &[1], &[1], rat(-1)))
            .unwrap()
            .add(&WeylElement::scalar_term(&r, &[0], &[1], rat(-1)))
            .unwrap()
            .add(&WeylElement::one(&r))
            .unwrap();
        let gb = rational_groebner(&[p], &r).unwrap();
        assert_eq!(gb.len(), 1);
        let st = standard_monomial_exponents(&gb, 1).unwrap();
        assert_eq!(st, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn x_units_cancel() {
        // over R, <x1 d1> = <d1>: rank of <x1 d1, d2> in n=2 is 1
        let r = WeylRing::new(2);
        let g1 = WeylElement::scalar_term(&r, &[1, 0], &[1, 0], rat(1));
        let g2 = WeylElement::d(&r, 1);
        let gb = rational_groebner(&[g1, g2], &r).unwrap();
        let st = standard_monomial_exponents(&gb, 2).unwrap();
        assert_eq!(st.len(), 1);
    }

    #[test]
    fn gauss_hypergeometric_rank_two() {
        // GKZ system for (a,b,c) = (1/2, 1/2, 1)
        let r = WeylRing::new(4);
        let theta = |i: usize| WeylElement::theta(&r, i);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let g1 = theta(0).sub(&theta(3)).unwrap(); // theta1 - theta4 + 1 - c, c = 1
        let g2 = theta(1).add(&theta(3)).unwrap().add(&WeylElement::constant(&r, half.clone())).unwrap();
        let g3 = theta(2).add(&theta(3)).unwrap().add(&WeylElement::constant(&r, half)).unwrap();
        let g4 = WeylElement::d(&r, 1)
            .mul(&WeylElement::d(&r, 2))
            .unwrap()
            .sub(&WeylElement::d(&r, 0).mul(&WeylElement::d(&r, 3)).unwrap())
            .unwrap();
        let gb = rational_groebner(&[g1, g2, g3, g4], &r).unwrap();
        let st = standard_monomial_exponents(&gb, 4).unwrap();
        assert_eq!(st.len(), 2);
    }

    #[test]
    fn pfaffian_normal_form_entries() {
        // NF of d^3 against <x d^3 - (x+1) d + 1> is ((x+1) d - 1)/x
        let r = WeylRing::new(1);
        let p = WeylElement::scalar_term(&r, &[1], &[3], rat(1))
            .add(&WeylElement::scalar_term(&r, &[1], &[1], rat(-1)))
            .unwrap()
            .add(&WeylElement::scalar_term(&r, &[0], &[1], rat(-1)))
            .unwrap()
            .add(&WeylElement::one(&r))
            .unwrap();
        let gb = rational_groebner(&[p], &r).unwrap();
        let st = standard_monomial_exponents(&gb, 1).unwrap();
        let nf = rational_normal_form(&[3], &gb, &st).unwrap();
        let xv = r.x_vars();
        let x = MultiPoly::var(&xv, 0);
        let one = MultiPoly::one(&xv);
        // coefficient of 1 is -1/x, of d is (x+1)/x, of d^2 is 0
        assert_eq!(nf.get(&vec![0]).unwrap(), &RatFun::new(one.neg(), x.clone()).unwrap());
        assert_eq!(
            nf.get(&vec![1]).unwrap(),
            &RatFun::new(x.add(&one), x.clone()).unwrap()
        );
        assert!(nf.get(&vec![2]).is_none());
    }
}
