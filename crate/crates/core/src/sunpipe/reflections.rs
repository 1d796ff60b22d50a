//! Reflection length in the orthogonal group.

use nalgebra::{DMatrix, DVector};

use super::SunError;

const ORTHOGONAL_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionFactorization {
    /// `m − dim ker(R − I)`.
    pub count: usize,
    /// Unit normals `n₁, …, n_k` with `R = H₁⋯H_k`, `Hᵢ = I − 2nᵢnᵢᵀ`.
    pub normals: Vec<DVector<f64>>,
}

impl ReflectionFactorization {
    pub fn product(&self, m: usize) -> DMatrix<f64> {
        self.normals.iter().fold(DMatrix::identity(m, m), |acc, n| acc * reflection(n))
    }
}

fn reflection(n: &DVector<f64>) -> DMatrix<f64> {
    let m = n.len();
    DMatrix::identity(m, m) - n * n.transpose() * 2.0
}

fn fixed_dimension(q: &DMatrix<f64>) -> usize {
    let m = q.nrows();
    let a = q - DMatrix::<f64>::identity(m, m);
    a.singular_values().iter().filter(|&&s| s < KERNEL_TOL).count()
}

/// Minimal factorization of an orthogonal `R` into reflections: while
/// `Q ≠ I`, pick `x ⟂ fix(Q)` with `Qx ≠ x` and left-multiply `Q` by the
/// reflection swapping `x` and `Qx`; each step enlarges the fixed space by
/// one dimension.
pub fn min_reflections(r: &DMatrix<f64>) -> Result<ReflectionFactorization, SunError> {
    let m = r.nrows();
    if !r.is_square() {
        return Err(SunError::Shape { expected: m, rows: m, cols: r.ncols() });
    }
    let id = DMatrix::<f64>::identity(m, m);
    let defect = (r * r.transpose() - &id).amax();
    if defect > ORTHOGONAL_TOL {
        return Err(SunError::NotOrthogonal(defect));
    }
    let count = m - fixed_dimension(r);
    let mut q = r.clone();
    let mut normals = Vec::with_capacity(count);
    for _ in 0..count {
        let svd = (&q - &id).svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let top = svd.singular_values.argmax().0;
        let x: DVector<f64> = v_t.row(top).transpose();
        let y = &q * &x;
        let d = &y - &x;
        let n = &d / d.norm();
        q = reflection(&n) * q;
        normals.push(n);
    }
    // Q was reduced to I by H_k⋯H₁, so R = H₁⋯H_k.
    Ok(ReflectionFactorization { count, normals })
}

/// `SO(2k+1)` test element: plane rotations by `angles` on consecutive
/// coordinate pairs, fixing the last axis.
pub fn block_rotation(angles: &[f64]) -> DMatrix<f64> {
    let m = 2 * angles.len() + 1;
    let mut r = DMatrix::identity(m, m);
    for (b, &a) in angles.iter().enumerate() {
        let (s, c) = a.sin_cos();
        let i = 2 * b;
        r[(i, i)] = c;
        r[(i, i + 1)] = -s;
        r[(i + 1, i)] = s;
        r[(i + 1, i + 1)] = c;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_needs_none() {
        let f = min_reflections(&DMatrix::identity(4, 4)).unwrap();
        assert_eq!(f.count, 0);
        assert!(f.normals.is_empty());
    }

    #[test]
    fn single_reflection() {
        let n = DVector::from_vec(vec![0.6, 0.0, 0.8]);
        let f = min_reflections(&reflection(&n)).unwrap();
        assert_eq!(f.count, 1);
        assert!((f.product(3) - reflection(&n)).amax() < 1e-12);
    }

    #[test]
    fn two_plane_rotations_in_so5() {
        let r = block_rotation(&[0.7, 2.1]);
        let f = min_reflections(&r).unwrap();
        assert_eq!(f.count, 4);
        assert!((f.product(5) - r).amax() <= 1e-8);
    }

    #[test]
    fn half_turn_and_partial_fix() {
        // Rotation by π in one plane, identity in the other: count 2.
        let r = block_rotation(&[std::f64::consts::PI, 0.0]);
        let f = min_reflections(&r).unwrap();
        assert_eq!(f.count, 2);
        assert!((f.product(5) - r).amax() <= 1e-8);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let mut r = DMatrix::<f64>::identity(3, 3);
        r[(0, 1)] = 0.1;
        assert!(matches!(min_reflections(&r), Err(SunError::NotOrthogonal(_))));
    }
}
