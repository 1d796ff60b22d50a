//! Smith normal form over `ℤ` and the translate equation on the torus.

use std::f64::consts::PI;

use super::SunError;
use crate::classfn::normalize_angle;
use crate::rootsys::{OrthogonalSubset, WeylElement};

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | ⋯`, `dᵢ > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: Vec<Vec<i128>>,
    pub diagonal: Vec<i128>,
    pub right: Vec<Vec<i128>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = unit(rows);
    let mut v = unit(cols);
    let mut diagonal = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let Some((pi, pj)) = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| d[i][j].abs())
            else {
                return finish(u, diagonal, v, rows, cols);
            };
            d.swap(k, pi);
            u.swap(k, pi);
            swap_cols(&mut d, k, pj);
            swap_cols(&mut v, k, pj);
            let p = d[k][k];
            let mut clean = true;
            for i in k + 1..rows {
                let q = d[i][k] / p;
                if q != 0 {
                    row_axpy(&mut d, i, k, -q);
                    row_axpy(&mut u, i, k, -q);
                }
                clean &= d[i][k] == 0;
            }
            for j in k + 1..cols {
                let q = d[k][j] / p;
                if q != 0 {
                    col_axpy(&mut d, j, k, -q);
                    col_axpy(&mut v, j, k, -q);
                }
                clean &= d[k][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row k and repeat.
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| d[i][j] % p != 0));
            match offender {
                Some(i) => {
                    row_axpy(&mut d, k, i, 1);
                    row_axpy(&mut u, k, i, 1);
                }
                None => break,
            }
        }
        if d[k][k] < 0 {
            for x in d[k].iter_mut() {
                *x = -*x;
            }
            for x in u[k].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(d[k][k]);
    }
    finish(u, diagonal, v, rows, cols)
}

fn finish(left: Vec<Vec<i128>>, diagonal: Vec<i128>, right: Vec<Vec<i128>>, rows: usize, cols: usize) -> SmithForm {
    SmithForm { left, diagonal, right, rows, cols }
}

fn unit(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] += q·row[src]`.
fn row_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) {
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(s) {
        *x += q * y;
    }
}

/// `col[dst] += q·col[src]`.
fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, q: i128) {
    for row in m.iter_mut() {
        row[dst] += q * row[src];
    }
}

/// Finds `a₁, …, a_t ∈ T_{Δ₀}` with `w₁(a₁)⋯w_t(a_t) = target`.
///
/// `target` is in coroot coordinates. The result holds, per translate, one
/// angle for each index of `d0` (ascending), reduced to `(−π, π]`.
pub fn solve_torus_translates(
    ws: &[WeylElement],
    d0: &OrthogonalSubset,
    target: &[f64],
) -> Result<Vec<Vec<f64>>, SunError> {
    let r = target.len();
    let idx = d0.to_vec();
    let s = idx.len();
    // Column (j, i) is w_j(δᵢ^∨) in coroot coordinates.
    let a: Vec<Vec<i64>> = (0..r)
        .map(|row| {
            ws.iter()
                .flat_map(|w| {
                    let m = w.coroot_matrix();
                    assert_eq!(m.len(), r, "Weyl element rank differs from target length");
                    idx.iter().map(move |&i| m[row][i])
                })
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&a);
    if snf.rank() < r {
        return Err(SunError::NotSpanning { rank: snf.rank(), dim: r });
    }
    // D·z = U·b, y = V·z.
    let ub: Vec<f64> = snf
        .left
        .iter()
        .map(|row| row.iter().zip(target).map(|(&c, &b)| c as f64 * b).sum())
        .collect();
    let m = ws.len() * s;
    let mut z = vec![0.0; m];
    for (i, &d) in snf.diagonal.iter().enumerate() {
        z[i] = ub[i] / d as f64;
    }
    let y: Vec<f64> = (0..m)
        .map(|p| snf.right[p].iter().zip(&z).map(|(&c, &zz)| c as f64 * zz).sum::<f64>())
        .map(normalize_angle)
        .collect();
    if s == 0 {
        return Ok(vec![Vec::new(); ws.len()]);
    }
    Ok(y.chunks(s).map(<[f64]>::to_vec).collect())
}

/// `Σⱼ wⱼ(aⱼ)` in coroot coordinates, reduced to `(−π, π]`.
pub fn evaluate_translates(ws: &[WeylElement], d0: &OrthogonalSubset, parts: &[Vec<f64>], r: usize) -> Vec<f64> {
    let idx = d0.to_vec();
    let mut total = vec![0.0; r];
    for (w, a) in ws.iter().zip(parts) {
        let mut x = vec![0.0; r];
        for (&i, &y) in idx.iter().zip(a) {
            x[i] = y;
        }
        for (t, v) in total.iter_mut().zip(w.apply_coroot(&x)) {
            *t += v;
        }
    }
    total.into_iter().map(normalize_angle).collect()
}

/// Largest coordinate distance on `ℝʳ/2πℤʳ`.
pub fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| normalize_angle(x - y).abs())
        .fold(0.0, f64::max)
        .min(PI)
}
