//! Numeric helpers: dense matrices over BigFloat (solve, inverse,
//! least-squares) and f64-complex polynomial roots for step-size control.

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Dense matrix of BigFloats (row major).
#[derive(Clone, Debug)]
pub struct FMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigFloat>,
}

impl FMat {
    pub fn zero(rows: usize, cols: usize, prec: u32) -> Self {
        FMat { rows, cols, data: vec![BigFloat::zero(prec); rows * cols] }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zero(n, n, prec);
        for i in 0..n {
            *m.at_mut(i, i) = BigFloat::one(prec);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigFloat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        FMat { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &BigFloat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigFloat {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &FMat) -> FMat {
        assert_eq!(self.cols, other.rows);
        let prec = self.data.first().map(|x| x.precision()).unwrap_or(64);
        let mut out = FMat::zero(self.rows, other.cols, prec);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigFloat]) -> Vec<BigFloat> {
        assert_eq!(self.cols, v.len());
        let prec = self.data.first().map(|x| x.precision()).unwrap_or(64);
        let mut out = vec![BigFloat::zero(prec); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = self.at(i, j).mul(&v[j]);
                out[i] = out[i].add(&t);
            }
        }
        out
    }

    /// Solve A x = b by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[BigFloat]) -> Result<Vec<BigFloat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a.at(r, col).cmp_abs(a.at(piv, col)) == std::cmp::Ordering::Greater {
                    piv = r;
                }
            }
            if a.at(piv, col).is_zero() {
                return Err(Error::RankDeficientConstraints);
            }
            if piv != col {
                for j in 0..n {
                    let t = a.at(piv, j).clone();
                    *a.at_mut(piv, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = t;
                }
                rhs.swap(piv, col);
            }
            let d = a.at(col, col).clone();
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).div(&d);
                for j in col..n {
                    let t = f.mul(a.at(col, j));
                    *a.at_mut(r, j) = a.at(r, j).sub(&t);
                }
                let t = f.mul(&rhs[col]);
                rhs[r] = rhs[r].sub(&t);
            }
        }
        // back substitution
        let prec = self.data[0].precision();
        let mut x = vec![BigFloat::zero(prec); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                let t = a.at(i, j).mul(&x[j]);
                acc = acc.sub(&t);
            }
            x[i] = acc.div(a.at(i, i));
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<FMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let prec = self.data[0].precision();
        let mut out = FMat::zero(n, n, prec);
        for j in 0..n {
            let mut e = vec![BigFloat::zero(prec); n];
            e[j] = BigFloat::one(prec);
            let col = self.solve(&e)?;
            for i in 0..n {
                *out.at_mut(i, j) = col[i].clone();
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> FMat {
        let prec = self.data.first().map(|x| x.precision()).unwrap_or(64);
        let mut out = FMat::zero(self.cols, self.rows, prec);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Least-squares solution via normal equations, with the residual norm
    /// of the original system returned alongside.
    pub fn least_squares(&self, b: &[BigFloat]) -> Result<(Vec<BigFloat>, BigFloat)> {
        if self.rows < self.cols {
            return Err(Error::RankDeficientConstraints);
        }
        let at = self.transpose();
        let ata = at.mul(self);
        let atb = at.mul_vec(b);
        let x = ata.solve(&atb).map_err(|_| Error::RankDeficientConstraints)?;
        let ax = self.mul_vec(&x);
        let prec = self.data[0].precision();
        let mut res = BigFloat::zero(prec);
        for i in 0..self.rows {
            let d = ax[i].sub(&b[i]);
            res = res.add(&d.mul(&d));
        }
        Ok((x, res.sqrt()))
    }

    /// Largest entry-wise disagreement with another matrix, in bits of
    /// relative accuracy (min over entries of agreement bits).
    pub fn agreement_bits(&self, other: &FMat) -> i64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let mut worst = i64::MAX;
        for (a, b) in self.data.iter().zip(&other.data) {
            worst = worst.min(a.agreement_bits(b));
        }
        worst
    }
}

/// All complex roots of a polynomial with f64 coefficients (ascending), by
/// the Durand-Kerner iteration. Accuracy is ample for step-size control.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() < 1e-300 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> =
        c.iter().map(|x| Complex64::new(x / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..monic.len()).rev() {
            acc = acc * z + monic[k];
        }
        acc
    };
    // initial guesses on a slightly irrational spiral
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|x| (x / lead).abs())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius * 0.7, ang)
        })
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            if den.norm() < 1e-280 {
                continue;
            }
            let delta = eval(roots[i]) / den;
            roots[i] -= delta;
            max_step = max_step.max(delta.norm());
        }
        if max_step < 1e-13 * radius {
            break;
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> BigFloat {
        BigFloat::from_f64(v, 128)
    }

    #[test]
    fn solve_small_system() {
        let a = FMat::from_rows(vec![
            vec![f(2.0), f(1.0)],
            vec![f(1.0), f(3.0)],
        ]);
        let x = a.solve(&[f(5.0), f(10.0)]).unwrap();
        assert!((x[0].to_f64() - 1.0).abs() < 1e-25);
        assert!((x[1].to_f64() - 3.0).abs() < 1e-25);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = FMat::from_rows(vec![
            vec![f(1.0), f(2.0), f(0.0)],
            vec![f(0.0), f(1.0), f(4.0)],
            vec![f(5.0), f(0.0), f(1.0)],
        ]);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        let id = FMat::identity(3, 128);
        assert!(prod.agreement_bits(&id) > 100 || {
            // identity has exact zeros; check entrywise difference instead
            let mut ok = true;
            for i in 0..3 {
                for j in 0..3 {
                    let d = prod.at(i, j).sub(id.at(i, j));
                    ok &= d.magnitude() < -100;
                }
            }
            ok
        });
    }

    #[test]
    fn least_squares_consistent() {
        // overdetermined but consistent
        let a = FMat::from_rows(vec![
            vec![f(1.0), f(0.0)],
            vec![f(0.0), f(1.0)],
            vec![f(1.0), f(1.0)],
        ]);
        let (x, res) = a.least_squares(&[f(2.0), f(3.0), f(5.0)]).unwrap();
        assert!((x[0].to_f64() - 2.0).abs() < 1e-20);
        assert!((x[1].to_f64() - 3.0).abs() < 1e-20);
        assert!(res.to_f64() < 1e-20);
    }

    #[test]
    fn durand_kerner_quartic() {
        // roots of x^4 - 1: +-1, +-i
        let roots = complex_roots(&[-1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let d = (r.powu(4) - Complex64::new(1.0, 0.0)).norm();
            assert!(d < 1e-8, "{r} residual {d}");
        }
    }
}
