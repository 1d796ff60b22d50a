use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::unitary::{max_modulus, UnitaryMatrix, UNITARY_TOL};
use super::SunError;
use crate::classfn::{circle_length, normalize_angle};

/// Largest `n` for which all `n!` orderings are tried.
pub const EXHAUSTIVE_CAP: usize = 8;

/// `g = q·diag(e^{iφ})·q⁻¹`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenangles in `(−π, π]`, ascending, `Σφ ≡ 0 (mod 2π)`.
    pub angles: Vec<f64>,
    pub basis: UnitaryMatrix,
    /// Max-entry reassembly error.
    pub residual: f64,
}

/// Diagonalizes `g` by a complex Schur decomposition; for unitary `g` the
/// triangular factor is diagonal up to rounding.
pub fn eigen_angles(g: &UnitaryMatrix) -> Result<EigenDecomposition, SunError> {
    let defect = g.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(SunError::NotUnitary(defect));
    }
    let m = g.as_matrix();
    let n = m.nrows();
    let off_diagonal = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| m[(i, j)].norm())
        .fold(0.0, f64::max);
    let (q, eigenvalues): (DMatrix<Complex64>, Vec<Complex64>) = if off_diagonal < 1e-14 {
        (DMatrix::identity(n, n), (0..n).map(|i| m[(i, i)]).collect())
    } else {
        let schur = Schur::try_new(m.clone(), f64::EPSILON, 100_000)
            .ok_or(SunError::EigenFailure)?;
        let (q, t) = schur.unpack();
        let ev = (0..n).map(|i| t[(i, i)]).collect();
        (q, ev)
    };
    let mut raw: Vec<f64> = eigenvalues.iter().map(|z| normalize_angle(z.arg())).collect();
    // Remove the rounding drift of Σφ away from 2πℤ.
    let total: f64 = raw.iter().sum();
    let drift = (total - 2.0 * PI * (total / (2.0 * PI)).round()) / n as f64;
    for a in &mut raw {
        *a = normalize_angle(*a - drift);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| raw[a].total_cmp(&raw[b]).then(a.cmp(&b)));
    let angles: Vec<f64> = idx.iter().map(|&k| raw[k]).collect();
    let q_sorted = DMatrix::from_fn(n, n, |i, j| q[(i, idx[j])]);
    let basis = UnitaryMatrix::special_from_unitary(q_sorted)?;
    let d = UnitaryMatrix::diagonal(&angles)?;
    let residual = max_modulus(&(d.conjugate_by(&basis).as_matrix() - m));
    Ok(EigenDecomposition { angles, basis, residual })
}

/// `σ` of the diagonal element with the given eigenangle order:
/// the mean of `ℓ(φᵢ − φᵢ₊₁)`.
pub fn order_sigma(angles: &[f64]) -> f64 {
    if angles.len() < 2 {
        return 0.0;
    }
    let sum: f64 = angles.windows(2).map(|w| circle_length(w[0] - w[1]).value()).sum();
    sum / (angles.len() - 1) as f64
}

/// Best eigenangle order found by [`weyl_maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeylMaximum {
    /// `angles[k] = input[order[k]]`.
    pub order: Vec<usize>,
    pub angles: Vec<f64>,
    pub sigma: f64,
    /// `false` when the order came from annealing; `sigma` is then a lower bound.
    pub exhaustive: bool,
}

/// Maximizes `σ` over all orderings of the eigenangles (the Weyl group of
/// `A_{n−1}`), taking the lexicographically least maximizing order.
pub fn weyl_maximize(angles: &[f64]) -> WeylMaximum {
    weyl_maximize_with(angles, EXHAUSTIVE_CAP, 0)
}

pub fn weyl_maximize_with(angles: &[f64], cap: usize, seed: u64) -> WeylMaximum {
    let n = angles.len();
    let eval = |p: &[usize]| order_sigma(&p.iter().map(|&k| angles[k]).collect::<Vec<_>>());
    let (order, exhaustive) = if n <= cap {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = perm.clone();
        let mut best_val = eval(&perm);
        while next_permutation(&mut perm) {
            let v = eval(&perm);
            if v > best_val + 1e-12 {
                best_val = v;
                best.clone_from(&perm);
            }
        }
        (best, true)
    } else {
        (anneal(n, &eval, seed), false)
    };
    let permuted: Vec<f64> = order.iter().map(|&k| angles[k]).collect();
    WeylMaximum {
        sigma: order_sigma(&permuted),
        angles: permuted,
        order,
        exhaustive,
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn anneal(n: usize, eval: &dyn Fn(&[usize]) -> f64, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<usize> = (0..n).collect();
    let mut current_val = eval(&current);
    let mut best = current.clone();
    let mut best_val = current_val;
    let steps = 20_000 * n;
    let (t0, t1) = (1.0_f64, 1e-4_f64);
    for step in 0..steps {
        let temp = t0 * (t1 / t0).powf(step as f64 / steps as f64);
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        current.swap(a, b);
        let v = eval(&current);
        if v >= current_val || rng.random::<f64>() < ((v - current_val) / temp).exp() {
            current_val = v;
            if v > best_val + 1e-12 {
                best_val = v;
                best.clone_from(&current);
            }
        } else {
            current.swap(a, b);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn identity_decomposition() {
        let e = eigen_angles(&UnitaryMatrix::identity(4)).unwrap();
        assert_eq!(e.angles, vec![0.0; 4]);
        assert_eq!(e.basis, UnitaryMatrix::identity(4));
    }

    #[test]
    fn diagonal_read_off_sorted() {
        let g = UnitaryMatrix::diagonal(&[1.0, -0.4, -0.6]).unwrap();
        let e = eigen_angles(&g).unwrap();
        assert!((e.angles[0] + 0.6).abs() < 1e-15);
        assert!((e.angles[1] + 0.4).abs() < 1e-15);
        assert!((e.angles[2] - 1.0).abs() < 1e-15);
        assert!(e.residual < 1e-15);
    }

    #[test]
    fn random_reassembly() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=8 {
            for _ in 0..10 {
                let g = UnitaryMatrix::random(n, &mut rng);
                let e = eigen_angles(&g).unwrap();
                assert!(e.residual <= 1e-9, "n={n} residual {}", e.residual);
                let s: f64 = e.angles.iter().sum();
                let m = (s / (2.0 * PI)).round();
                assert!((s - 2.0 * PI * m).abs() < 1e-12);
                assert!(e.angles.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let m = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        let g = UnitaryMatrix::new_unchecked(m);
        assert!(matches!(eigen_angles(&g), Err(SunError::NotUnitary(_))));
    }

    #[test]
    fn weyl_examples() {
        let two = weyl_maximize(&[0.3, -0.3]);
        assert_eq!(two.order, vec![0, 1]);
        assert!((two.sigma - 0.6).abs() < 1e-15);

        let third = 2.0 * PI / 3.0;
        let w = weyl_maximize(&[third, 0.0, -third]);
        assert!((w.sigma - third).abs() < 1e-12);
        assert!(w.exhaustive);

        let flat = weyl_maximize(&[0.0; 5]);
        assert_eq!(flat.sigma, 0.0);
        assert_eq!(flat.order, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn lexicographic_tie_break() {
        // (0, 1, 2) and (2, 1, 0) tie; the first is returned.
        let w = weyl_maximize(&[-1.0, 0.0, 1.0]);
        let brute = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .iter()
            .map(|p| order_sigma(&p.iter().map(|&k| [-1.0, 0.0, 1.0][k]).collect::<Vec<_>>()))
            .fold(0.0, f64::max);
        assert!((w.sigma - brute).abs() < 1e-15);
        let first = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .into_iter()
            .find(|p| {
                (order_sigma(&p.iter().map(|&k| [-1.0, 0.0, 1.0][k]).collect::<Vec<_>>()) - brute).abs()
                    <= 1e-12
            })
            .unwrap();
        assert_eq!(w.order, first.to_vec());
    }

    #[test]
    fn annealing_is_a_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let angles: Vec<f64> = (0..7).map(|_| rng.random_range(-PI..PI)).collect();
        let exact = weyl_maximize(&angles);
        let heur = weyl_maximize_with(&angles, 0, 17);
        assert!(!heur.exhaustive);
        assert!(heur.sigma <= exact.sigma + 1e-12);
        assert!(heur.sigma >= 0.9 * exact.sigma);
    }
}
