//! Sylvester resultant in one chosen variable, computed as an exact
//! determinant over the remaining-variable polynomial ring.

use super::gcd::var_coefficients;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Resultant of `f` and `g` with respect to `var`: the determinant of the
/// Sylvester matrix with the f-rows first.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    f.check_same_vars(g)?;
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    if df == 0 {
        return Err(Error::DegreeZero(f.vars().names()[var].clone()));
    }
    if dg == 0 {
        return Err(Error::DegreeZero(g.vars().names()[var].clone()));
    }
    let vars = f.vars();
    let fc = var_coefficients(f, var);
    let gc = var_coefficients(g, var);
    let n = df + dg;
    let zero = MultiPoly::zero(vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    // dg rows of f coefficients (descending), then df rows of g
    for r in 0..dg {
        for (k, c) in fc.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in gc.iter().rev().enumerate() {
            m[dg + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(m, &zero))
}

/// Fraction-free Bareiss determinant over the polynomial ring.
fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>, zero: &MultiPoly) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(zero.vars());
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(zero.vars());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return zero.clone();
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::VarSet;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn t(v: &VarSet, c: i64, e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(v, e, BigRational::from(BigInt::from(c)))
    }

    #[test]
    fn small_sylvester_against_hand_determinant() {
        // Res_y(y^2 - x, 2y): the 3x3 Sylvester determinant is -4x.
        let v = VarSet::of(&["x", "y"]);
        let f = t(&v, 1, &[0, 2]).sub(&t(&v, 1, &[1, 0]));
        let g = t(&v, 2, &[0, 1]);
        let r = sylvester_resultant(&f, &g, 1).unwrap();
        // hand oracle: det [[1,0,-x],[2,0,0],[0,2,0]] = -4x
        assert_eq!(r, t(&v, -4, &[1, 0]));
        assert_eq!(r.normalized_primitive(), t(&v, 1, &[1, 0]));
    }

    #[test]
    fn common_factor_gives_zero() {
        let v = VarSet::of(&["x", "y"]);
        let f = t(&v, 1, &[0, 2]).add(&t(&v, 1, &[1, 0]));
        let r = sylvester_resultant(&f, &f, 1).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn specialization_commutes() {
        // res_y(f,g)(x=c) = res_y(f(c,y), g(c,y)) when leads survive
        let v = VarSet::of(&["x", "y"]);
        let f = t(&v, 1, &[0, 2]).add(&t(&v, 3, &[1, 1])).add(&t(&v, 1, &[0, 0]));
        let g = t(&v, 2, &[0, 3]).add(&t(&v, 1, &[2, 0]));
        let r = sylvester_resultant(&f, &g, 1).unwrap();
        for c in [-2i64, 1, 5] {
            let cv = BigRational::from(BigInt::from(c));
            let fs = f.eval_var(0, &cv);
            let gs = g.eval_var(0, &cv);
            let rs = sylvester_resultant(&fs, &gs, 1).unwrap();
            let expect = r.eval_var(0, &cv);
            assert_eq!(rs, expect);
        }
    }

    #[test]
    fn degree_zero_rejected() {
        let v = VarSet::of(&["x", "y"]);
        let f = t(&v, 1, &[0, 2]);
        let g = t(&v, 1, &[1, 0]);
        assert!(sylvester_resultant(&f, &g, 1).is_err());
    }
}
