//! Small dense linear algebra over `Q`, used for injectivity checks of the
//! period form and for exact cone feasibility.

use num_rational::BigRational;
use num_traits::Zero;

/// Reduces `m` in place to row echelon form and returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for j in col..m[row].len() {
            m[row][j] = &m[row][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..m[i].len() {
                    let delta = &factor * &m[row][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    echelon(&mut m, width).len()
}

/// Solves `sum_k x_k * columns[k] = rhs` when the columns are linearly
/// independent. Returns `None` if the columns are dependent or the system is
/// inconsistent.
pub(crate) fn solve_independent(
    columns: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let dim = rhs.len();
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut m, n + 1);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|k| m[k][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&rows), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_two_by_two() {
        let cols = vec![vec![q(1), q(0)], vec![q(1), q(2)]];
        let x = solve_independent(&cols, &[q(0), q(1)]).unwrap();
        assert_eq!(x, vec![BigRational::new((-1).into(), 2.into()), BigRational::new(1.into(), 2.into())]);
    }

    #[test]
    fn solve_rejects_inconsistent_and_dependent() {
        let cols = vec![vec![q(1), q(1)]];
        assert!(solve_independent(&cols, &[q(1), q(2)]).is_none());
        let dep = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve_independent(&dep, &[q(1), q(1)]).is_none());
        assert_eq!(solve_independent(&cols, &[q(3), q(3)]).unwrap(), vec![q(3)]);
    }
}
