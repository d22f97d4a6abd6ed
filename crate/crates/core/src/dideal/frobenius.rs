//! Solution spaces of Frobenius ideals: Artinian ideals in C[theta] have
//! explicit bases x^u g(log x) indexed by the rational points u of V(J),
//! with g running over the inverse system of the primary component at u.

use crate::error::{Error, Result};
use crate::exact::groebner::{commutative_groebner, eliminate, quotient_dimension};
use crate::exact::order::MonomialOrder;
use crate::exact::poly::{MultiPoly, VarSet};
use crate::exact::roots::isolate_real_roots;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One rational point of V(J) with its multiplicity and inverse system.
#[derive(Clone, Debug)]
pub struct FrobeniusPoint {
    pub point: Vec<BigRational>,
    pub multiplicity: usize,
    /// Basis of the inverse system at the point; the variables stand for
    /// log x_1, ..., log x_n in the solution x^u g(log x).
    pub inverse_basis: Vec<MultiPoly>,
}

/// Zero set with multiplicities and per-point solution data of an Artinian
/// ideal in C[theta].
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub generators: Vec<MultiPoly>,
    pub dimension: usize,
    pub points: Vec<FrobeniusPoint>,
}

impl FrobeniusData {
    pub fn rank(&self) -> usize {
        self.dimension
    }
}

/// Solve an Artinian ideal J in C[theta]: find V(J) with multiplicities
/// (all points must be rational) and the inverse-system basis per point.
pub fn frobenius_solve(generators: &[MultiPoly]) -> Result<FrobeniusData> {
    if generators.is_empty() {
        return Err(Error::NonArtinian);
    }
    let vars = generators[0].vars().clone();
    let n = vars.len();
    let order = MonomialOrder::grevlex();
    let gb = commutative_groebner(generators, &order);
    let dim = quotient_dimension(&gb, &order).ok_or(Error::NonArtinian)?;
    if dim == 0 {
        return Err(Error::NonArtinian);
    }

    // candidate coordinates by per-variable elimination + rational roots
    let mut coords: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let elim = eliminate(&gb, &others);
        let uni = elim
            .iter()
            .find(|p| !p.is_zero() && p.degree_in(i) > 0)
            .ok_or(Error::NonArtinian)?;
        coords.push(rational_roots(uni, i)?);
    }

    // candidate points = product of coordinate roots, filtered by membership
    let mut points: Vec<Vec<BigRational>> = vec![Vec::new()];
    for roots in &coords {
        let mut next = Vec::new();
        for p in &points {
            for r in roots {
                let mut q = p.clone();
                q.push(r.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points.retain(|p| generators.iter().all(|g| g.eval_all(p).is_zero()));

    let mut out_points = Vec::new();
    let mut total = 0usize;
    for u in points {
        // shift the ideal to the origin and isolate the primary component
        // there: Q_0 = J_u + m^dim (m^dim already lies in the local primary)
        let shifted: Vec<MultiPoly> = gb
            .iter()
            .map(|g| {
                let mut s = g.clone();
                for (k, uk) in u.iter().enumerate() {
                    let repl = MultiPoly::var(&vars, k).add(&MultiPoly::constant(&vars, uk.clone()));
                    s = s.substitute(k, &repl);
                }
                s
            })
            .collect();
        let mut local = shifted.clone();
        append_power_of_maximal_ideal(&mut local, &vars, dim as u32);
        let qgb = commutative_groebner(&local, &order);
        let mult = quotient_dimension(&qgb, &order).ok_or(Error::NonArtinian)?;
        if mult == 0 {
            continue;
        }
        let inverse_basis = inverse_system(&qgb, &vars, mult)?;
        if inverse_basis.len() != mult {
            return Err(Error::Unsupported(
                "inverse system dimension disagrees with multiplicity".into(),
            ));
        }
        total += mult;
        out_points.push(FrobeniusPoint { point: u, multiplicity: mult, inverse_basis });
    }
    if total != dim {
        // some multiplicity escaped to an irrational point
        return Err(Error::IrrationalZero);
    }
    Ok(FrobeniusData { generators: generators.to_vec(), dimension: dim, points: out_points })
}

fn append_power_of_maximal_ideal(gens: &mut Vec<MultiPoly>, vars: &VarSet, d: u32) {
    // all monomials of total degree d
    let n = vars.len();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            if prefix.iter().sum::<u32>() == d {
                gens.push(MultiPoly::monomial(vars, &prefix, BigRational::one()));
            }
            continue;
        }
        let used: u32 = prefix.iter().sum();
        for v in 0..=(d - used) {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
}

/// All rational roots of a polynomial univariate in variable `var`; errors
/// if any root (real or complex) is irrational.
fn rational_roots(p: &MultiPoly, var: usize) -> Result<Vec<BigRational>> {
    let prim = p.primitive_part();
    let mut dense: Vec<BigRational> = (0..=prim.degree_in(var))
        .map(|k| {
            let mut e = vec![0u32; p.vars().len()];
            e[var] = k;
            prim.coeff(&e)
        })
        .collect();
    let mut roots = Vec::new();
    loop {
        while dense.len() > 1 && dense.last().unwrap().is_zero() {
            dense.pop();
        }
        if dense.len() <= 1 {
            break;
        }
        // strip a zero root
        if dense[0].is_zero() {
            if !roots.contains(&BigRational::zero()) {
                roots.push(BigRational::zero());
            }
            dense.remove(0);
            continue;
        }
        let candidates = isolate_rational_candidates(&dense, p.vars(), var)?;
        let mut found = false;
        for r in candidates {
            if eval_dense(&dense, &r).is_zero() {
                if !roots.contains(&r) {
                    roots.push(r.clone());
                }
                dense = deflate(&dense, &r);
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::IrrationalZero);
        }
    }
    roots.sort();
    Ok(roots)
}

fn eval_dense(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn deflate(p: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    // synthetic division by (x - r)
    let mut out = vec![BigRational::zero(); p.len() - 1];
    let mut carry = BigRational::zero();
    for k in (0..p.len() - 1).rev() {
        carry = &p[k + 1] + r * &carry;
        out[k] = carry.clone();
    }
    out
}

/// Rational-root candidates: isolate the real roots and take the simplest
/// rational inside each isolating interval (after refining it far enough
/// that a rational root with denominator dividing the leading coefficient
/// is pinned down uniquely).
fn isolate_rational_candidates(
    dense: &[BigRational],
    vars: &VarSet,
    var: usize,
) -> Result<Vec<BigRational>> {
    let poly = MultiPoly::from_univariate_coeffs(vars, var, dense);
    // clear to integer coefficients for the denominator bound
    let prim = poly.primitive_part();
    let lc = prim
        .terms()
        .map(|(e, c)| (e[var], c.clone()))
        .max_by_key(|(d, _)| *d)
        .map(|(_, c)| c)
        .unwrap_or_else(BigRational::one);
    let den_bound = lc.numer().abs();
    let intervals = isolate_real_roots(&poly)?;
    let mut out = Vec::new();
    for mut iv in intervals {
        // width below 1/(2 L^2) pins the unique rational with denominator <= L
        let target = BigRational::new(BigInt::one(), &den_bound * &den_bound * BigInt::from(4) + BigInt::one());
        while iv.width() > target {
            iv.bisect();
        }
        let cand = simplest_rational_in(&iv.lower, &iv.upper);
        out.push(cand);
    }
    Ok(out)
}

/// The rational number with smallest denominator in [lo, hi]
/// (Stern-Brocot / continued-fraction walk).
pub fn simplest_rational_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo == hi {
        return lo.clone();
    }
    let (lo, hi) = if lo < hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
    if lo.is_negative() && !hi.is_negative() {
        return BigRational::zero();
    }
    if !lo.is_negative() {
        simplest_nonneg(&lo, &hi)
    } else {
        -simplest_nonneg(&-hi.clone(), &-lo.clone())
    }
}

fn simplest_nonneg(lo: &BigRational, hi: &BigRational) -> BigRational {
    // walk the continued fraction expansion until the intervals separate
    let fl = lo.floor();
    if &fl == lo || fl < hi.floor() || (&hi.floor() == &fl && hi.is_integer()) {
        // an integer lies in [lo, hi]
        let c = lo.ceil();
        if &c <= hi {
            return c;
        }
    }
    let int = fl.clone();
    let lo_frac = lo - &int;
    let hi_frac = hi - &int;
    // both in (0, 1): recurse on reciprocals (order swaps)
    let r = simplest_nonneg(&(BigRational::one() / hi_frac), &(BigRational::one() / lo_frac));
    int + BigRational::one() / r
}

/// Kernel basis of f(d) . g = 0 over polynomials g of degree < mult.
fn inverse_system(qgb: &[MultiPoly], vars: &VarSet, mult: usize) -> Result<Vec<MultiPoly>> {
    let n = vars.len();
    // enumerate monomials of total degree < mult
    let mut monos: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            monos.push(prefix);
            continue;
        }
        let used: u32 = prefix.iter().sum();
        for v in 0..(mult as u32 - used) {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    monos.sort();
    let index_of = |e: &[u32]| monos.iter().position(|m| m == e);
    // rows: (generator, result monomial); columns: candidate monomials
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for f in qgb {
        // the action of f(d) on each monomial
        let mut images: Vec<MultiPoly> = Vec::with_capacity(monos.len());
        for m in &monos {
            images.push(diff_action(f, &MultiPoly::monomial(vars, m, BigRational::one())));
        }
        // collect all monomials appearing in the images
        let mut support: Vec<Vec<u32>> = Vec::new();
        for img in &images {
            for (e, _) in img.terms() {
                if !support.contains(e) {
                    support.push(e.clone());
                }
            }
        }
        for s in &support {
            let mut row = vec![BigRational::zero(); monos.len()];
            for (j, img) in images.iter().enumerate() {
                row[j] = img.coeff(s);
            }
            rows.push(row);
        }
    }
    let kernel = rational_kernel(rows, monos.len());
    let mut out = Vec::new();
    for v in kernel {
        let mut g = MultiPoly::zero(vars);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                g = g.add(&MultiPoly::monomial(vars, &monos[j], c.clone()));
            }
        }
        out.push(g);
    }
    let _ = index_of;
    Ok(out)
}

/// Apply f(d_1, ..., d_n) to a polynomial g (formal differentiation).
pub fn diff_action(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero(g.vars());
    for (e, c) in f.terms() {
        let mut t = g.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.derivative(i);
            }
        }
        acc = acc.add(&t.scale(c));
    }
    acc
}

/// Kernel basis of the row space (solutions x with rows . x = 0), exact.
fn rational_kernel(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    // Gaussian elimination to row echelon
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[ri][free].clone();
        }
        kernel.push(v);
    }
    kernel
}

/// theta_i acting on x^u g(L_1..L_n) gives x^u (u_i g + dg/dL_i); applying a
/// polynomial q(theta) therefore substitutes theta_i -> u_i + d/dL_i. The
/// result is the cofactor h in x^u h(L); zero iff q annihilates the solution.
pub fn apply_theta_poly(q: &MultiPoly, u: &[BigRational], g: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero(g.vars());
    for (e, c) in q.terms() {
        let mut t = g.scale(c);
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                // (u_i + D_i) t
                let d = t.derivative(i);
                t = t.scale(&u[i]).add(&d);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn simplest_rational() {
        let r = simplest_rational_in(&BigRational::new(31.into(), 100.into()), &BigRational::new(34.into(), 100.into()));
        assert_eq!(r, BigRational::new(BigInt::one(), BigInt::from(3)));
        let r = simplest_rational_in(&rat(2), &rat(3));
        assert_eq!(r, rat(2));
        let r = simplest_rational_in(&BigRational::new((-1).into(), 3.into()), &BigRational::new(1.into(), 7.into()));
        assert!(r.is_zero());
    }

    #[test]
    fn single_point_with_multiplicity_one() {
        // <theta - 5>: point 5, basis {1}
        let v = VarSet::of(&["t1"]);
        let g = MultiPoly::var(&v, 0).sub(&MultiPoly::constant(&v, rat(5)));
        let data = frobenius_solve(&[g]).unwrap();
        assert_eq!(data.dimension, 1);
        assert_eq!(data.points.len(), 1);
        assert_eq!(data.points[0].point, vec![rat(5)]);
        assert_eq!(data.points[0].multiplicity, 1);
        assert!(data.points[0].inverse_basis[0].is_constant());
    }

    #[test]
    fn staircase_points() {
        // distraction of <d1^3, d1 d2, d2^2>: points (0,0),(1,0),(2,0),(0,1)
        let v = VarSet::of(&["t1", "t2"]);
        let t1 = MultiPoly::var(&v, 0);
        let t2 = MultiPoly::var(&v, 1);
        let c = |k: i64| MultiPoly::constant(&v, rat(k));
        let gens = vec![
            t1.mul(&t1.sub(&c(1))).mul(&t1.sub(&c(2))),
            t1.mul(&t2),
            t2.mul(&t2.sub(&c(1))),
        ];
        let data = frobenius_solve(&gens).unwrap();
        assert_eq!(data.dimension, 4);
        let mut pts: Vec<(i64, i64)> = Vec::new();
        for p in &data.points {
            assert_eq!(p.multiplicity, 1);
            pts.push((
                p.point[0].to_integer().try_into().unwrap(),
                p.point[1].to_integer().try_into().unwrap(),
            ));
        }
        pts.sort();
        assert_eq!(pts, vec![(0, 0), (0, 1), (1, 0), (2, 0)]);
    }

    #[test]
    fn symmetric_ideal_multiplicity_six() {
        // <e1, e2, e3> in three theta variables: the origin with
        // multiplicity 6; the inverse system is spanned by the Vandermonde
        // (x1-x2)(x1-x3)(x2-x3) and its partial derivatives.
        let v = VarSet::of(&["t1", "t2", "t3"]);
        let t = |i: usize| MultiPoly::var(&v, i);
        let e1 = t(0).add(&t(1)).add(&t(2));
        let e2 = t(0).mul(&t(1)).add(&t(0).mul(&t(2))).add(&t(1).mul(&t(2)));
        let e3 = t(0).mul(&t(1)).mul(&t(2));
        let data = frobenius_solve(&[e1, e2, e3]).unwrap();
        assert_eq!(data.dimension, 6);
        assert_eq!(data.points.len(), 1);
        let p = &data.points[0];
        assert!(p.point.iter().all(|c| c.is_zero()));
        assert_eq!(p.multiplicity, 6);
        // the Vandermonde polynomial lies in the span: check by reducing it
        // against the basis via linear algebra over the monomials
        let vand = t(0)
            .sub(&t(1))
            .mul(&t(0).sub(&t(2)))
            .mul(&t(1).sub(&t(2)));
        // each generator annihilates the Vandermonde under differentiation
        for q in &data.generators {
            assert!(diff_action(q, &vand).is_zero());
        }
        // and every basis element is annihilated by all generators
        for g in &p.inverse_basis {
            for q in &data.generators {
                assert!(diff_action(q, g).is_zero());
            }
        }
    }

    #[test]
    fn irrational_points_are_rejected() {
        // theta^2 - 2 has irrational zeros
        let v = VarSet::of(&["t1"]);
        let g = MultiPoly::var(&v, 0).pow(2).sub(&MultiPoly::constant(&v, rat(2)));
        assert!(matches!(frobenius_solve(&[g]), Err(Error::IrrationalZero)));
    }

    #[test]
    fn non_artinian_rejected() {
        let v = VarSet::of(&["t1", "t2"]);
        let g = MultiPoly::var(&v, 0); // <t1> in two variables
        assert!(matches!(frobenius_solve(&[g]), Err(Error::NonArtinian)));
    }

    #[test]
    fn theta_action_on_log_solutions() {
        // q(theta) = theta kills x^0 * 1 and theta - 1 kills x^1
        let v = VarSet::of(&["t1"]);
        let q = MultiPoly::var(&v, 0);
        let one = MultiPoly::one(&v);
        assert!(apply_theta_poly(&q, &[rat(0)], &one).is_zero());
        let qm1 = q.sub(&MultiPoly::one(&v));
        assert!(apply_theta_poly(&qm1, &[rat(1)], &one).is_zero());
        // theta^2 kills log x at 0: (D)^2 L = 0
        let q2 = MultiPoly::var(&v, 0).pow(2);
        let logx = MultiPoly::var(&v, 0); // L as the polynomial variable
        assert!(apply_theta_poly(&q2, &[rat(0)], &logx).is_zero());
    }
}
