//! Rank over the Novikov field `Λ_Q`.

use super::matrix::{zeroness, Matrix, Zeroness};
use crate::degree::DegreeValue;
use crate::error::{Error, Result};
use crate::series::{CoeffDomain, Series};

/// Rank by fraction-free elimination: `row_i ← p·row_i − a·row_r` needs no
/// inverses, so exact entries stay exact.
pub fn rank_over_field(m: &Matrix, precision: &DegreeValue) -> Result<usize> {
    let mut a = m.with_domain(CoeffDomain::Rationals)?;
    let ambiguous = |a: &Matrix, i: usize, j: usize| Error::AmbiguousZero {
        row: i,
        col: j,
        cutoff: a
            .get(i, j)
            .cutoff()
            .finite()
            .map(|c| a.form().render(c))
            .unwrap_or_default(),
    };
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if zeroness(a.get(i, j), precision)? == Zeroness::Ambiguous {
                return Err(ambiguous(&a, i, j));
            }
        }
    }
    let zero = Series::zero(a.form(), CoeffDomain::Rationals);
    let mut rank = 0;
    for col in 0..a.cols() {
        if rank == a.rows() {
            break;
        }
        let mut pivot = None;
        for i in rank..a.rows() {
            match zeroness(a.get(i, col), precision)? {
                Zeroness::Zero => {}
                Zeroness::NonZero => {
                    pivot = Some(i);
                    break;
                }
                Zeroness::Ambiguous => return Err(ambiguous(&a, i, col)),
            }
        }
        let Some(pi) = pivot else {
            continue;
        };
        a.swap_rows(rank, pi);
        let p = a.get(rank, col).clone();
        for i in rank + 1..a.rows() {
            let x = a.get(i, col).clone();
            match zeroness(&x, precision)? {
                Zeroness::Zero => {}
                Zeroness::Ambiguous => return Err(ambiguous(&a, i, col)),
                Zeroness::NonZero => a.combine_rows(i, &p, rank, &x.neg())?,
            }
            a.set(i, col, zero.clone());
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::degree::DegreeForm;
    use crate::syntax::parse_series;

    fn matrix(rows: &[&[&str]]) -> Matrix {
        let f = Arc::new(DegreeForm::cyclic());
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_series(s, &f, CoeffDomain::Rationals).unwrap()).collect())
            .collect();
        Matrix::from_rows(&f, CoeffDomain::Rationals, cols, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let w = DegreeValue::integer(10, 1);
        assert_eq!(rank_over_field(&matrix(&[&["1 - t"]]), &w).unwrap(), 1);
        assert_eq!(rank_over_field(&matrix(&[&["1", "t"], &["t", "t^2"]]), &w).unwrap(), 1);
        assert_eq!(rank_over_field(&matrix(&[&["0", "0"], &["0", "0"]]), &w).unwrap(), 0);
        assert_eq!(rank_over_field(&matrix(&[&["2", "1/2"], &["1", "t"]]), &w).unwrap(), 2);
    }

    #[test]
    fn ambiguous_entries_are_refused() {
        let w = DegreeValue::integer(10, 1);
        assert!(matches!(
            rank_over_field(&matrix(&[&["1", "O(deg 2)"]]), &w),
            Err(Error::AmbiguousZero { row: 0, col: 1, .. })
        ));
    }
}
