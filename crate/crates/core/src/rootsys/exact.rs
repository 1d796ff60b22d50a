//! Exact integer/rational linear algebra on small matrices.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// Rank over the rationals of the given integer row vectors.
///
/// Fraction-free (Bareiss) elimination in `i128`; the inputs here are root
/// coordinates of size at most a few units, so intermediate values stay small.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for i in (rank + 1)..nrows {
            let factor = m[i][col];
            for j in col..ncols {
                m[i][j] = (pivot * m[i][j] - factor * m[rank][j]) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Inverse of a square integer matrix over the rationals, if it exists.
pub fn inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col];
        for x in m[col].iter_mut() {
            *x /= pivot;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col];
                for j in 0..2 * n {
                    let v = m[col][j];
                    m[i][j] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Absolute value of the determinant of a square integer matrix.
pub fn abs_det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return 0;
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let pivot = m[col][col];
        det *= pivot;
        for i in (col + 1)..n {
            let f = m[i][col] / pivot;
            for j in col..n {
                let v = m[col][j];
                m[i][j] -= f * v;
            }
        }
    }
    det.to_integer().abs()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}
