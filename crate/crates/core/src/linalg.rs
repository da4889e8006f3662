//! Small dense exact linear algebra over the rationals.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

fn check_square(m: &[Vec<Rational>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok(n)
}

/// Row index of the first nonzero entry in `col` at or below `from`.
fn find_pivot(m: &[Vec<Rational>], col: usize, from: usize) -> Option<usize> {
    (from..m.len()).find(|&r| !m[r][col].is_zero())
}

pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = check_square(m)?;
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = find_pivot(&a, col, col) else {
            return Ok(Rational::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Ok(det)
}

/// Solves `a * X = b` for a square nonsingular `a`, with `b` holding one
/// right-hand side per column. Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<Option<Matrix>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let width = b.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().chain(rhs).cloned().collect())
        .collect();
    let total = n + width;

    for col in 0..n {
        let Some(p) = find_pivot(&aug, col, col) else {
            return Ok(None);
        };
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for c in col..total {
            aug[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..total {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Ok(Some(aug.into_iter().map(|row| row[n..].to_vec()).collect()))
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(((i == j) as i32).into()))
                .collect()
        })
        .collect()
}

pub fn inverse(m: &[Vec<Rational>]) -> Result<Option<Matrix>> {
    let n = check_square(m)?;
    solve(m, &identity(n))
}

pub fn is_symmetric(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Diagonal pivots of the exact `L D L^T` factorization (no pivoting).
///
/// Stops after the first nonpositive pivot: past that point the matrix is
/// known not to be positive definite and the factorization may not exist.
pub fn ldl_pivots(m: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = check_square(m)?;
    if !is_symmetric(m) {
        return Err(Error::NotSymmetric);
    }
    let mut lower: Matrix = vec![vec![Rational::zero(); n]; n];
    let mut pivots: Vec<Rational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = m[j][j].clone();
        for k in 0..j {
            dj -= &lower[j][k] * &lower[j][k] * &pivots[k];
        }
        let stop = !dj.is_positive();
        pivots.push(dj);
        if stop {
            break;
        }
        for i in j + 1..n {
            let mut v = m[i][j].clone();
            for k in 0..j {
                v -= &lower[i][k] * &lower[j][k] * &pivots[k];
            }
            lower[i][j] = v / &pivots[j];
        }
    }
    Ok(pivots)
}

pub fn is_positive_definite(m: &[Vec<Rational>]) -> Result<bool> {
    let pivots = ldl_pivots(m)?;
    Ok(pivots.len() == m.len() && pivots.iter().all(Signed::is_positive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn determinant_with_row_swap() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), int(-1));
        let m = mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(determinant(&m).unwrap(), int(6));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])).unwrap(), int(0));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![
            vec![rat(1, 2), int(3), int(0)],
            vec![int(1), int(1), rat(-2, 3)],
            vec![int(0), int(5), int(7)],
        ];
        let inv = inverse(&m).unwrap().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: Rational = (0..3).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(v, int((i == j) as i64));
            }
        }
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).unwrap().is_none());
    }

    #[test]
    fn ldl_definiteness() {
        assert!(is_positive_definite(&identity(4)).unwrap());
        assert!(!is_positive_definite(&mat(&[&[1, 0], &[0, -1]])).unwrap());
        assert!(!is_positive_definite(&mat(&[&[0, 1], &[1, 0]])).unwrap());
        assert_eq!(
            ldl_pivots(&mat(&[&[4, 2], &[2, 3]])).unwrap(),
            vec![int(4), int(2)]
        );
        assert_eq!(
            ldl_pivots(&mat(&[&[1, 2], &[0, 1]])),
            Err(Error::NotSymmetric)
        );
    }
}
