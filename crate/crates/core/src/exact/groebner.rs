//! Buchberger's algorithm over Q with reduced output, plus the ideal
//! operations built on it: elimination, saturation (Rabinowitsch trick),
//! intersection, and staircase dimension.
//!
//! S-pair selection is deterministic: normal strategy by lcm total degree,
//! ties by generator index.

use super::gcd::poly_gcd;
use super::order::MonomialOrder;
use super::poly::{Exponents, MultiPoly, VarSet};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeSet;

/// Leading (exponents, coefficient) of `p` under `order`.
pub fn leading_term(p: &MultiPoly, order: &MonomialOrder) -> Option<(Exponents, BigRational)> {
    let mut best: Option<(&Exponents, &BigRational)> = None;
    for (e, c) in p.terms() {
        match &best {
            None => best = Some((e, c)),
            Some((be, _)) => {
                if order.cmp(e, be) == std::cmp::Ordering::Greater {
                    best = Some((e, c));
                }
            }
        }
    }
    best.map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_sub(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full reduction of `p` modulo `basis`: no term of the result is divisible
/// by any basis leading monomial.
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let leads: Vec<(Exponents, BigRational)> =
        basis.iter().filter_map(|g| leading_term(g, order)).collect();
    let mut rem = MultiPoly::zero(p.vars());
    let mut work = p.clone();
    'outer: while !work.is_zero() {
        let (le, lc) = leading_term(&work, order).unwrap();
        for (i, (ge, gc)) in leads.iter().enumerate() {
            if divides(ge, &le) {
                let q = exp_sub(&le, ge);
                let scale = &lc / gc;
                work = work.sub(&basis[i].mul_monomial(&q, &scale));
                continue 'outer;
            }
        }
        // move the leading term to the remainder
        let mono = MultiPoly::monomial(p.vars(), &le, lc);
        rem = rem.add(&mono);
        work = work.sub(&mono);
    }
    rem
}

/// Reduced Groebner basis (monic generators, mutually reduced, sorted).
pub fn commutative_groebner(generators: &[MultiPoly], order: &MonomialOrder) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in generators {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    if basis.is_empty() {
        return basis;
    }
    let vars = basis[0].vars().clone();

    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let lead = |p: &MultiPoly| leading_term(p, order).unwrap().0;
    let mut leads: Vec<Exponents> = basis.iter().map(|p| lead(p)).collect();
    let pair_key = |leads: &[Exponents], i: usize, j: usize| {
        let l = exp_lcm(&leads[i], &leads[j]);
        let deg: u64 = l.iter().map(|&x| x as u64).sum();
        (deg, i, j)
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert(pair_key(&leads, i, j));
        }
    }

    while let Some(&(key, i, j)) = pairs.iter().next().map(|k| (k.0, k.1, k.2)).as_ref() {
        pairs.remove(&(key, i, j));
        let (li, lj) = (&leads[i], &leads[j]);
        let l = exp_lcm(li, lj);
        // coprime-lead criterion
        if l.iter().zip(li.iter().zip(lj)).all(|(lx, (a, b))| *lx == a + b) {
            continue;
        }
        let (_, ci) = leading_term(&basis[i], order).unwrap();
        let (_, cj) = leading_term(&basis[j], order).unwrap();
        let s = basis[i]
            .mul_monomial(&exp_sub(&l, li), &(BigRational::one() / ci))
            .sub(&basis[j].mul_monomial(&exp_sub(&l, lj), &(BigRational::one() / cj)));
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            leads.push(lead(&r));
            basis.push(r);
            for t in 0..k {
                pairs.insert(pair_key(&leads, t, k));
            }
        }
    }

    reduce_basis(&mut basis, order);
    let _ = vars;
    basis
}

fn reduce_basis(basis: &mut Vec<MultiPoly>, order: &MonomialOrder) {
    // drop generators whose lead is divisible by another lead
    let mut keep: Vec<MultiPoly> = Vec::new();
    'next: for i in 0..basis.len() {
        let (li, _) = leading_term(&basis[i], order).unwrap();
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            let (lj, _) = leading_term(&basis[j], order).unwrap();
            if divides(&lj, &li) && (lj != li || j < i) {
                continue 'next;
            }
        }
        keep.push(basis[i].clone());
    }
    // tail-reduce each against the others and make monic
    let mut out: Vec<MultiPoly> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<MultiPoly> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let r = normal_form(&keep[i], &others, order);
        if !r.is_zero() {
            let (_, c) = leading_term(&r, order).unwrap();
            out.push(r.scale(&(BigRational::one() / c)));
        }
    }
    out.sort_by(|a, b| {
        let la = leading_term(a, order).unwrap().0;
        let lb = leading_term(b, order).unwrap().0;
        order.cmp(&la, &lb)
    });
    *basis = out;
}

/// Ideal membership via normal form against a Groebner basis.
pub fn in_ideal(p: &MultiPoly, gb: &[MultiPoly], order: &MonomialOrder) -> bool {
    normal_form(p, gb, order).is_zero()
}

/// Equality of ideals via mutual reduced Groebner bases.
pub fn ideals_equal(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let order = MonomialOrder::grevlex();
    let ga = commutative_groebner(a, &order);
    let gb = commutative_groebner(b, &order);
    ga == gb
}

/// Generators of the elimination ideal: members of a block-order GB that do
/// not involve any of the `eliminated` variables.
pub fn eliminate(generators: &[MultiPoly], eliminated: &[usize]) -> Vec<MultiPoly> {
    if generators.is_empty() {
        return Vec::new();
    }
    let n = generators[0].vars().len();
    let order = MonomialOrder::elimination(n, eliminated);
    let gb = commutative_groebner(generators, &order);
    gb.into_iter()
        .filter(|g| eliminated.iter().all(|&i| g.degree_in(i) == 0))
        .collect()
}

/// Saturation (I : f^inf) by the Rabinowitsch trick: adjoin t, add 1 - t*f,
/// and eliminate t.
pub fn saturate_single(generators: &[MultiPoly], f: &MultiPoly) -> Vec<MultiPoly> {
    assert!(!generators.is_empty());
    let vars = generators[0].vars().clone();
    let n = vars.len();
    let ext = vars.extended("~t");
    let map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<MultiPoly> = generators.iter().map(|g| g.embed(&ext, &map)).collect();
    let t = MultiPoly::var(&ext, n);
    gens.push(MultiPoly::one(&ext).sub(&t.mul(&f.embed(&ext, &map))));
    let eliminated = eliminate(&gens, &[n]);
    // project back to the original ring
    eliminated.iter().map(|g| project_down(g, &vars)).collect()
}

/// Saturation with respect to the ideal generated by `wrt`:
/// (I : J^inf) = intersection of the single saturations.
pub fn saturate(generators: &[MultiPoly], wrt: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut acc: Option<Vec<MultiPoly>> = None;
    for f in wrt {
        let s = saturate_single(generators, f);
        acc = Some(match acc {
            None => s,
            Some(prev) => ideal_intersection(&prev, &s),
        });
    }
    acc.unwrap_or_else(|| generators.to_vec())
}

/// Intersection of two ideals via the t-trick: (t*I + (1-t)*J) cap k[x].
pub fn ideal_intersection(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    // unit-ideal shortcuts keep the variable bookkeeping simple
    let order = MonomialOrder::grevlex();
    if a.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return commutative_groebner(b, &order);
    }
    if b.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return commutative_groebner(a, &order);
    }
    let vars = if !a.is_empty() { a[0].vars().clone() } else { b[0].vars().clone() };
    let n = vars.len();
    let ext = vars.extended("~t");
    let map: Vec<usize> = (0..n).collect();
    let t = MultiPoly::var(&ext, n);
    let one_minus_t = MultiPoly::one(&ext).sub(&t);
    let mut gens = Vec::new();
    for p in a {
        gens.push(t.mul(&p.embed(&ext, &map)));
    }
    for p in b {
        gens.push(one_minus_t.mul(&p.embed(&ext, &map)));
    }
    eliminate(&gens, &[n]).iter().map(|g| project_down(g, &vars)).collect()
}

fn project_down(p: &MultiPoly, vars: &VarSet) -> MultiPoly {
    let mut out = MultiPoly::zero(vars);
    for (e, c) in p.terms() {
        debug_assert!(e[vars.len()..].iter().all(|&x| x == 0));
        out = out.add(&MultiPoly::monomial(vars, &e[..vars.len()], c.clone()));
    }
    out
}

/// Krull dimension of the quotient by the ideal, read off the staircase of
/// the initial monomial ideal: the largest coordinate subspace disjoint from
/// the leading-monomial supports.
pub fn ideal_dimension(generators: &[MultiPoly], order: &MonomialOrder) -> usize {
    let gb = commutative_groebner(generators, order);
    if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return 0; // unit ideal: empty variety; report 0 by convention
    }
    let n = if gb.is_empty() {
        return generators.first().map(|g| g.vars().len()).unwrap_or(0);
    } else {
        gb[0].vars().len()
    };
    let supports: Vec<Vec<usize>> = gb
        .iter()
        .map(|g| {
            let (e, _) = leading_term(g, order).unwrap();
            (0..n).filter(|&i| e[i] > 0).collect()
        })
        .collect();
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = supports.iter().all(|supp| supp.iter().any(|&i| mask & (1 << i) == 0));
        if ok {
            best = size;
        }
    }
    best
}

/// Number of standard monomials of an Artinian ideal (None when infinite).
pub fn quotient_dimension(gb: &[MultiPoly], order: &MonomialOrder) -> Option<usize> {
    if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Some(0);
    }
    if gb.is_empty() {
        return None;
    }
    let n = gb[0].vars().len();
    let leads: Vec<Exponents> = gb.iter().map(|g| leading_term(g, order).unwrap().0).collect();
    // finite iff every coordinate has a pure-power lead
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
    let mut count = 0usize;
    let mut stack = vec![vec![0u32; 0]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let standard = leads.iter().all(|l| !divides(l, &prefix));
            if standard {
                count += 1;
            }
            continue;
        }
        let i = prefix.len();
        for v in 0..bound[i] {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    Some(count)
}

/// Standard monomials (exponent vectors) of an Artinian ideal.
pub fn standard_monomials(gb: &[MultiPoly], order: &MonomialOrder) -> Option<Vec<Exponents>> {
    if gb.is_empty() {
        return None;
    }
    let n = gb[0].vars().len();
    let leads: Vec<Exponents> = gb.iter().map(|g| leading_term(g, order).unwrap().0).collect();
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
    let mut stack = vec![vec![0u32; 0]];
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
    out.sort();
    Some(out)
}

/// Univariate gcd-free content helper exposed for the root machinery.
pub fn univariate_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    poly_gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn vs(names: &[&str]) -> VarSet {
        VarSet::of(names)
    }

    fn t(v: &VarSet, c: i64, e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(v, e, BigRational::from(BigInt::from(c)))
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let v = vs(&["x", "y"]);
        let gens = vec![t(&v, 1, &[2, 0]), t(&v, 1, &[1, 1])];
        let mut gb = commutative_groebner(&gens, &MonomialOrder::grevlex());
        gb.sort_by_key(|p| format!("{p}"));
        let mut expect = gens.clone();
        expect.sort_by_key(|p| format!("{p}"));
        assert_eq!(gb, expect);
    }

    #[test]
    fn elimination_by_parametrization_oracle() {
        // I = <x - y^2, y^3>; eliminating y gives <x^2>, so x^3 and x^2 are
        // members but x is not. Oracle: substitute x = y^2 and reduce.
        let v = vs(&["x", "y"]);
        let gens = vec![t(&v, 1, &[1, 0]).sub(&t(&v, 1, &[0, 2])), t(&v, 1, &[0, 3])];
        let elim = eliminate(&gens, &[1]);
        assert!(!elim.is_empty());
        let order = MonomialOrder::grevlex();
        let gb = commutative_groebner(&gens, &order);
        let x3 = t(&v, 1, &[3, 0]);
        assert!(in_ideal(&x3, &gb, &order));
        let x2 = t(&v, 1, &[2, 0]);
        assert!(in_ideal(&x2, &gb, &order));
        let x = t(&v, 1, &[1, 0]);
        assert!(!in_ideal(&x, &gb, &order));
        assert!(ideals_equal(&elim, &[x2]));
    }

    #[test]
    fn saturation_principal_case() {
        // (<x*xi> : xi^inf) = <x>
        let v = vs(&["x", "xi"]);
        let gens = vec![t(&v, 1, &[1, 1])];
        let sat = saturate(&gens, &[t(&v, 1, &[0, 1])]);
        assert!(ideals_equal(&sat, &[t(&v, 1, &[1, 0])]));
    }

    #[test]
    fn saturation_with_membership_oracle() {
        // (<x^2, x*xi> : xi^inf) = <x>
        let v = vs(&["x", "xi"]);
        let gens = vec![t(&v, 1, &[2, 0]), t(&v, 1, &[1, 1])];
        let sat = saturate(&gens, &[t(&v, 1, &[0, 1])]);
        assert!(ideals_equal(&sat, &[t(&v, 1, &[1, 0])]));
    }

    #[test]
    fn intersection_basics() {
        // <x> cap <y> = <xy>
        let v = vs(&["x", "y"]);
        let i = ideal_intersection(&[t(&v, 1, &[1, 0])], &[t(&v, 1, &[0, 1])]);
        assert!(ideals_equal(&i, &[t(&v, 1, &[1, 1])]));
    }

    #[test]
    fn staircase_dimension() {
        let v = vs(&["x", "y", "z"]);
        // <x> has dimension 2; <x, y> has dimension 1
        assert_eq!(ideal_dimension(&[t(&v, 1, &[1, 0, 0])], &MonomialOrder::grevlex()), 2);
        assert_eq!(
            ideal_dimension(&[t(&v, 1, &[1, 0, 0]), t(&v, 1, &[0, 1, 0])], &MonomialOrder::grevlex()),
            1
        );
    }

    #[test]
    fn quotient_dimension_counts_standard_monomials() {
        let v = vs(&["x", "y"]);
        let gb = commutative_groebner(
            &[t(&v, 1, &[2, 0]), t(&v, 1, &[0, 3])],
            &MonomialOrder::grevlex(),
        );
        assert_eq!(quotient_dimension(&gb, &MonomialOrder::grevlex()), Some(6));
        let gb = commutative_groebner(&[t(&v, 1, &[2, 0])], &MonomialOrder::grevlex());
        assert_eq!(quotient_dimension(&gb, &MonomialOrder::grevlex()), None);
    }
}
