//! Fraction-free integer linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant by Bareiss elimination. Every intermediate division is exact.
pub fn bareiss_det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn minor(matrix: &[Vec<BigInt>], row: usize, col: usize) -> Vec<Vec<BigInt>> {
    matrix
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Column `col` of the adjugate, i.e. `adj(M) e_col`.
pub fn adjugate_column(matrix: &[Vec<BigInt>], col: usize) -> Vec<BigInt> {
    let n = matrix.len();
    if n == 1 {
        return vec![BigInt::one()];
    }
    // adj(M)[i][col] = (-1)^{i+col} det(M without row col, column i)
    (0..n)
        .map(|i| {
            let d = bareiss_det(&minor(matrix, col, i));
            if (i + col).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn det_small() {
        assert_eq!(bareiss_det(&m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(bareiss_det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_det(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(bareiss_det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let a = m(&[&[1, 2, 3], &[0, 5, 6], &[7, 8, 10]]);
        let det = bareiss_det(&a);
        for col in 0..3 {
            let adj = adjugate_column(&a, col);
            for row in 0..3 {
                let s: BigInt = (0..3).map(|k| &a[row][k] * &adj[k]).sum();
                let expect = if row == col { det.clone() } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }
}
