//! Monomial orders as data: a stack of rational weight rows refined by a
//! classical tie-break, so graded, lexicographic, elimination and weight
//! orders all run through one comparison engine.

use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieBreak {
    /// Graded reverse lexicographic.
    GrevLex,
    /// Pure lexicographic on the variable list.
    Lex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOrder {
    /// Weight rows compared first, in order.
    pub weights: Vec<Vec<BigRational>>,
    pub tiebreak: TieBreak,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { weights: Vec::new(), tiebreak: TieBreak::GrevLex }
    }

    pub fn lex() -> Self {
        MonomialOrder { weights: Vec::new(), tiebreak: TieBreak::Lex }
    }

    /// Block order eliminating the given variables: any monomial involving
    /// one of them is larger than any monomial in the rest.
    pub fn elimination(nvars: usize, eliminated: &[usize]) -> Self {
        let mut row = vec![BigRational::zero(); nvars];
        for &i in eliminated {
            row[i] = BigRational::from_integer(1.into());
        }
        MonomialOrder { weights: vec![row], tiebreak: TieBreak::GrevLex }
    }

    pub fn weighted(weights: Vec<Vec<BigRational>>, tiebreak: TieBreak) -> Self {
        MonomialOrder { weights, tiebreak }
    }

    /// Compare monomials given by exponent vectors; Greater means `a` is the
    /// more significant monomial.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for row in &self.weights {
            let wa = weight_of(row, a);
            let wb = weight_of(row, b);
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        match self.tiebreak {
            TieBreak::Lex => a.cmp(b),
            TieBreak::GrevLex => {
                let da: u64 = a.iter().map(|&x| x as u64).sum();
                let db: u64 = b.iter().map(|&x| x as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // reverse lex: the last variable where they differ decides,
                // with the smaller exponent being the larger monomial
                for i in (0..a.len()).rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn weight_of(row: &[BigRational], exps: &[u32]) -> BigRational {
    let mut acc = BigRational::zero();
    for (w, &e) in row.iter().zip(exps) {
        if e != 0 && !w.is_zero() {
            acc += w * BigRational::from_integer(e.into());
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex();
        // x^2 > xy > y^2 > x > y > 1 in two variables
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 0], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn elimination_blocks() {
        let o = MonomialOrder::elimination(2, &[1]);
        // any power of y dominates any power of x
        assert_eq!(o.cmp(&[0, 1], &[5, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[3, 0], &[1, 0]), Ordering::Greater);
    }
}
