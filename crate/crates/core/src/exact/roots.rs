//! Sturm-sequence real-root isolation and certified refinement for
//! univariate polynomials over Q.

use super::gcd::squarefree_part_univariate;
use super::poly::MultiPoly;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Isolating interval for a single real root of a square-free polynomial.
/// The endpoints carry strictly opposite signs.
#[derive(Clone, Debug)]
pub struct RealRootInterval {
    pub lower: BigRational,
    pub upper: BigRational,
    /// The square-free defining polynomial (univariate).
    pub poly: MultiPoly,
    /// Index of the variable the polynomial lives in.
    pub var: usize,
}

type Dense = Vec<BigRational>;

fn to_dense(p: &MultiPoly, var: usize) -> Dense {
    let d = p.degree_in(var) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (e, c) in p.terms() {
        out[e[var] as usize] = c.clone();
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

fn eval_dense(p: &Dense, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative_dense(p: &Dense) -> Dense {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
        .collect()
}

fn neg_rem(a: &Dense, b: &Dense) -> Dense {
    // -(a mod b) over Q
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let scale = r.last().unwrap() / &lb;
        let shift = dr - db;
        for i in 0..b.len() {
            let t = &b[i] * &scale;
            r[i + shift] -= t;
        }
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
    }
    r.iter().map(|c| -c.clone()).collect()
}

fn sturm_chain(p: &Dense) -> Vec<Dense> {
    let mut chain = vec![p.clone(), derivative_dense(p)];
    loop {
        let n = chain.len();
        let last = &chain[n - 1];
        if last.len() == 1 {
            break;
        }
        let r = neg_rem(&chain[n - 2], last);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_variations_at(chain: &[Dense], x: &BigRational) -> usize {
    let mut signs = Vec::new();
    for p in chain {
        let v = eval_dense(p, x);
        if !v.is_zero() {
            signs.push(v.is_positive());
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy bound: all real roots lie in [-B, B].
fn cauchy_bound(p: &Dense) -> BigRational {
    let lc = p.last().unwrap().abs();
    let mut m = BigRational::zero();
    for c in &p[..p.len() - 1] {
        let r = c.abs() / &lc;
        if r > m {
            m = r;
        }
    }
    m + BigRational::one()
}

/// Isolating intervals for all distinct real roots of the square-free part,
/// sorted in increasing order.
pub fn isolate_real_roots(p: &MultiPoly) -> Result<Vec<RealRootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("cannot isolate roots of the zero polynomial"));
    }
    let var = (0..p.vars().len()).find(|&i| p.degree_in(i) > 0).unwrap_or(0);
    for i in 0..p.vars().len() {
        if i != var && p.degree_in(i) > 0 {
            return Err(Error::Unsupported("root isolation needs a univariate polynomial".into()));
        }
    }
    let sf = squarefree_part_univariate(p, var);
    if sf.degree_in(var) == 0 {
        return Ok(Vec::new());
    }
    let dense = to_dense(&sf, var);
    let chain = sturm_chain(&dense);
    let bound = cauchy_bound(&dense);
    let lo = -bound.clone();
    let hi = bound;
    let mut out = Vec::new();
    // The Cauchy bound is strict, so f does not vanish at +-bound; splits
    // always go through non-root midpoints, keeping the partition exact.
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_variations_at(&chain, &a).saturating_sub(sign_variations_at(&chain, &b));
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(make_interval(&dense, &sf, var, a, b));
            continue;
        }
        let mid = midpoint_off_root(&dense, &a, &b);
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.lower.cmp(&y.lower));
    // make consecutive intervals strictly disjoint
    for i in 1..out.len() {
        while out[i - 1].upper >= out[i].lower {
            let wl = out[i - 1].width();
            let wr = out[i].width();
            if wl >= wr {
                out[i - 1].bisect();
            } else {
                out[i].bisect();
            }
        }
    }
    Ok(out)
}

/// A point strictly inside (a, b), near the middle, where p does not vanish.
fn midpoint_off_root(p: &Dense, a: &BigRational, b: &BigRational) -> BigRational {
    let two = BigRational::from(BigInt::from(2));
    let mid = (a + b) / &two;
    if !eval_dense(p, &mid).is_zero() {
        return mid;
    }
    let mut step = (b - a) / BigRational::from(BigInt::from(4));
    loop {
        let cand = &mid + &step;
        if cand < *b && !eval_dense(p, &cand).is_zero() {
            return cand;
        }
        let cand = &mid - &step;
        if cand > *a && !eval_dense(p, &cand).is_zero() {
            return cand;
        }
        step /= &two;
    }
}

fn make_interval(
    dense: &Dense,
    sf: &MultiPoly,
    var: usize,
    mut a: BigRational,
    mut b: BigRational,
) -> RealRootInterval {
    // shrink until the endpoint signs differ (they may share a sign when the
    // interval was produced by counting alone)
    loop {
        let sa = eval_dense(dense, &a);
        let sb = eval_dense(dense, &b);
        debug_assert!(!sa.is_zero() && !sb.is_zero());
        if sa.is_positive() != sb.is_positive() {
            break;
        }
        // bisect towards the root
        let chain = sturm_chain(dense);
        let mid = midpoint_off_root(dense, &a, &b);
        let left = sign_variations_at(&chain, &a).saturating_sub(sign_variations_at(&chain, &mid));
        if left == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    RealRootInterval { lower: a, upper: b, poly: sf.clone(), var }
}

impl RealRootInterval {
    /// Exact midpoint.
    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigRational::from(BigInt::from(2))
    }

    /// Halve the interval once, keeping the root inside.
    pub fn bisect(&mut self) {
        let dense = to_dense(&self.poly, self.var);
        let mid = self.midpoint();
        let fm = eval_dense(&dense, &mid);
        if fm.is_zero() {
            // exact rational root: collapse to a tiny interval around it
            let width = (&self.upper - &self.lower) / BigRational::from(BigInt::from(1024));
            let lo = &mid - &width;
            let hi = &mid + &width;
            let flo = eval_dense(&dense, &lo);
            if flo.is_positive() != eval_dense(&dense, &hi).is_positive() {
                self.lower = lo;
                self.upper = hi;
            }
            return;
        }
        let fl = eval_dense(&dense, &self.lower);
        if fl.is_positive() != fm.is_positive() {
            self.upper = mid;
        } else {
            self.lower = mid;
        }
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        *x >= self.lower && *x <= self.upper
    }
}

/// Refine an isolating interval to a float with `precision` correct bits.
/// Bisection narrows the interval; once the sign of p*p'' is constant on it
/// (a Newton basin), Newton steps take over. Iterations are capped at
/// 10 * precision.
pub fn refine_root(interval: &RealRootInterval, precision: u32) -> Result<BigFloat> {
    let dense = to_dense(&interval.poly, interval.var);
    let deriv = derivative_dense(&dense);
    let deriv2 = derivative_dense(&deriv);
    let mut iv = interval.clone();
    let cap = 10 * precision as usize;
    let mut iters = 0usize;

    // exact rational root shortcut
    let mid = iv.midpoint();
    if eval_dense(&dense, &mid).is_zero() {
        return Ok(BigFloat::from_rational(&mid, precision));
    }

    let target = {
        // absolute width target: |x| * 2^-(precision+2), conservatively from
        // the current interval scale
        let scale = iv.lower.abs().max(iv.upper.abs()).max(BigRational::one());
        scale / BigRational::from(BigInt::one() << (precision as usize + 2))
    };

    loop {
        if iters >= cap {
            return Err(Error::PrecisionUnachievable);
        }
        iters += 1;
        if iv.width() < target {
            return Ok(BigFloat::from_rational(&iv.midpoint(), precision));
        }
        // Newton basin test: p'' keeps one sign and p' does not vanish
        let s2l = eval_dense(&deriv2, &iv.lower);
        let s2u = eval_dense(&deriv2, &iv.upper);
        let s1l = eval_dense(&deriv, &iv.lower);
        let s1u = eval_dense(&deriv, &iv.upper);
        let basin = !s1l.is_zero()
            && !s1u.is_zero()
            && s1l.is_positive() == s1u.is_positive()
            && (s2l.is_zero() || s2u.is_zero() || s2l.is_positive() == s2u.is_positive());
        if basin {
            if let Some(v) = newton_refine(&dense, &deriv, &iv, precision, cap - iters) {
                return Ok(v);
            }
        }
        iv.bisect();
    }
}

fn newton_refine(
    dense: &Dense,
    deriv: &Dense,
    iv: &RealRootInterval,
    precision: u32,
    max_iter: usize,
) -> Option<BigFloat> {
    // start from the endpoint where p and p'' agree in sign (Fourier), here
    // approximated by trying both endpoints
    let work = precision + 32;
    for start in [&iv.lower, &iv.upper] {
        let mut x = BigRational::clone(start);
        let mut ok = true;
        let mut width_bits = 4i64;
        for _ in 0..max_iter.max(8) {
            let f = eval_dense(dense, &x);
            if f.is_zero() {
                return Some(BigFloat::from_rational(&x, precision));
            }
            let d = eval_dense(deriv, &x);
            if d.is_zero() {
                ok = false;
                break;
            }
            let step = &f / &d;
            let next = &x - &step;
            if !iv.contains(&next) {
                ok = false;
                break;
            }
            // round the iterate to limit coefficient growth
            let next = round_rational(&next, 2 * work as usize + 16);
            width_bits = (width_bits * 2).min(work as i64 + 8);
            x = next;
            if width_bits >= work as i64 + 8 {
                break;
            }
        }
        if ok && certified(dense, &x, precision, iv) {
            return Some(BigFloat::from_rational(&x, precision));
        }
    }
    None
}

fn round_rational(x: &BigRational, bits: usize) -> BigRational {
    let scaled = x * BigRational::from(BigInt::one() << bits);
    let rounded = scaled.round();
    rounded / BigRational::from(BigInt::one() << bits)
}

fn certified(dense: &Dense, x: &BigRational, precision: u32, iv: &RealRootInterval) -> bool {
    // the sign of p changes across [x - h, x + h] with h = |x| 2^-(prec+2)
    let scale = x.abs().max(BigRational::one());
    let h = scale / BigRational::from(BigInt::one() << (precision as usize + 2));
    let lo = x - &h;
    let hi = x + &h;
    if !iv.contains(&lo) || !iv.contains(&hi) {
        return false;
    }
    let sl = eval_dense(dense, &lo);
    let sh = eval_dense(dense, &hi);
    !sl.is_zero() && !sh.is_zero() && sl.is_positive() != sh.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::VarSet;

    fn uni(coeffs: &[i64]) -> MultiPoly {
        let v = VarSet::of(&["x"]);
        let cs: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        MultiPoly::from_univariate_coeffs(&v, 0, &cs)
    }

    #[test]
    fn symmetric_pair() {
        let p = uni(&[-2, 0, 1]); // x^2 - 2
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].upper < roots[1].lower);
        let r = refine_root(&roots[1], 128).unwrap();
        let s = r.to_decimal(12, true);
        assert!(s.starts_with("1.41421356237"), "{s}");
        assert!(roots[1].contains(&r.to_rational()));
    }

    #[test]
    fn multiple_root_collapses() {
        let p = uni(&[0, 0, 0, 1]); // x^3
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&BigRational::zero()));
    }

    #[test]
    fn rational_root_exact() {
        // 3x - 1 has the exact root 1/3
        let p = uni(&[-1, 3]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
        let r = refine_root(&roots[0], 128).unwrap();
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let err = (r.to_rational() - third).abs();
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 126));
    }

    #[test]
    fn endpoint_signs_differ() {
        let p = uni(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            let dense = to_dense(&r.poly, r.var);
            let a = eval_dense(&dense, &r.lower);
            let b = eval_dense(&dense, &r.upper);
            assert!(a.is_positive() != b.is_positive());
        }
    }
}
