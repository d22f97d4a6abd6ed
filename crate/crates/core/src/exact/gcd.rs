//! Polynomial gcd: univariate Euclid over Q and recursive primitive-PRS for
//! several variables. Sizes in this crate are modest, so the textbook
//! content/primitive-part recursion is enough.

use super::poly::{MultiPoly, VarSet};
use num_rational::BigRational;
use num_traits::One;

/// gcd of two polynomials, normalized primitive with positive lead.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    debug_assert_eq!(a.vars(), b.vars());
    if a.is_zero() {
        return b.normalized_primitive();
    }
    if b.is_zero() {
        return a.normalized_primitive();
    }
    // pick the used variable of highest degree as the main one
    let n = a.vars().len();
    let mut main = None;
    for i in 0..n {
        if a.degree_in(i) > 0 || b.degree_in(i) > 0 {
            main = Some(i);
            break;
        }
    }
    let Some(var) = main else {
        return MultiPoly::one(a.vars()); // both constants
    };
    gcd_in_var(a, b, var).normalized_primitive()
}

fn gcd_in_var(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    // content/primitive-part recursion: treat as univariate in `var` with
    // polynomial coefficients in the remaining variables.
    let ca = coeff_content(a, var);
    let cb = coeff_content(b, var);
    let pa = a.div_exact(&ca);
    let pb = b.div_exact(&cb);
    let cont = poly_gcd(&ca, &cb);
    let prim = primitive_prs(&pa, &pb, var);
    cont.mul(&prim)
}

/// gcd of the coefficients of `p` seen as univariate in `var`.
fn coeff_content(p: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = var_coefficients(p, var);
    let mut g = MultiPoly::zero(p.vars());
    for c in coeffs {
        if !c.is_zero() {
            g = poly_gcd(&g, &c);
        }
        if !g.is_zero() && g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    if g.is_zero() {
        MultiPoly::one(p.vars())
    } else {
        g
    }
}

/// Coefficient list of `p` in `var` (index = degree), coefficients living in
/// the full ring with `var`-exponent zero.
pub fn var_coefficients(p: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let d = p.degree_in(var) as usize;
    let mut out = vec![MultiPoly::zero(p.vars()); d + 1];
    for (e, c) in p.terms() {
        let k = e[var] as usize;
        let mut ne = e.clone();
        ne[var] = 0;
        out[k] = out[k].add(&MultiPoly::monomial(p.vars(), &ne, c.clone()));
    }
    out
}

pub fn from_var_coefficients(vars: &VarSet, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero(vars);
    let mut e = vec![0u32; vars.len()];
    for (k, c) in coeffs.iter().enumerate() {
        e[var] = k as u32;
        acc = acc.add(&c.mul_monomial(&e, &BigRational::one()));
    }
    acc
}

fn leading_coeff(p: &MultiPoly, var: usize) -> MultiPoly {
    var_coefficients(p, var).pop().unwrap()
}

/// Pseudo-remainder of a by b in `var`: lc(b)^(da-db+1) * a mod b.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = leading_coeff(b, var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = leading_coeff(&r, var);
        let mut shift = vec![0u32; r.vars().len()];
        shift[var] = dr - db;
        // r <- lb*r - lr * x^(dr-db) * b
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift, &BigRational::one()));
    }
    r
}

fn primitive_prs(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.is_zero() {
            return f;
        }
        if g.degree_in(var) == 0 {
            // nontrivial constant (in var) remainder: gcd has var-degree 0
            return MultiPoly::one(f.vars());
        }
        let r = pseudo_rem(&f, &g, var);
        let r = if r.is_zero() { r } else { r.div_exact(&coeff_content(&r, var)) };
        f = g;
        g = r;
    }
}

/// Square-free part of a polynomial in one (effective) variable.
pub fn squarefree_part_univariate(p: &MultiPoly, var: usize) -> MultiPoly {
    if p.is_zero() || p.degree_in(var) == 0 {
        return p.normalized_primitive();
    }
    let d = p.derivative(var);
    let g = poly_gcd(p, &d);
    if g.is_constant() {
        return p.normalized_primitive();
    }
    p.div_exact(&g).normalized_primitive()
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
    fn univariate_gcd() {
        // (x+1)^2 (x-2)  and (x+1)(x+3)
        let x1 = t(1, &[1, 0]).add(&t(1, &[0, 0]));
        let f = x1.mul(&x1).mul(&t(1, &[1, 0]).add(&t(-2, &[0, 0])));
        let g = x1.mul(&t(1, &[1, 0]).add(&t(3, &[0, 0])));
        assert_eq!(poly_gcd(&f, &g), x1);
    }

    #[test]
    fn multivariate_gcd() {
        // (x - y)*(x + y) and (x - y)*x
        let d = t(1, &[1, 0]).sub(&t(1, &[0, 1]));
        let f = d.mul(&t(1, &[1, 0]).add(&t(1, &[0, 1])));
        let g = d.mul(&t(1, &[1, 0]));
        assert_eq!(poly_gcd(&f, &g), d.normalized_primitive());
    }

    #[test]
    fn squarefree() {
        let x = t(1, &[1, 0]);
        let f = x.mul(&x).mul(&x); // x^3
        assert_eq!(squarefree_part_univariate(&f, 0), x);
    }
}
