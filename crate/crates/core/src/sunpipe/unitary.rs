use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::eigen::{eigen_angles, weyl_maximize};
use super::SunError;

/// Tolerance on `UU* = I` and `det U = 1`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Retry cap when sampling a base element with a prescribed `σ̂`.
pub const DEFAULT_REJECTION_CAP: usize = 10_000;

/// An element of `SU(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    /// Checked constructor.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self, SunError> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(SunError::Shape { expected: m.nrows().max(1), rows: m.nrows(), cols: m.ncols() });
        }
        let u = Self(m);
        let d = u.unitarity_defect();
        if d > UNITARY_TOL {
            return Err(SunError::NotUnitary(d));
        }
        let d = u.determinant_defect();
        if d > UNITARY_TOL {
            return Err(SunError::NotSpecial(d));
        }
        Ok(u)
    }

    /// No checks; the caller measures the defects.
    pub fn new_unchecked(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    /// Rescales a unitary matrix by a scalar so that its determinant is 1.
    pub fn special_from_unitary(m: DMatrix<Complex64>) -> Result<Self, SunError> {
        let n = m.nrows();
        let det = m.clone().determinant();
        let scale = Complex64::from_polar(1.0, -det.arg() / n as f64);
        Self::new(m * scale)
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// `diag(e^{iφ₁}, …, e^{iφₙ})`; `Σφ` must vanish mod 2π.
    pub fn diagonal(angles: &[f64]) -> Result<Self, SunError> {
        let n = angles.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, angles[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// Haar-random element: QR of a complex Ginibre matrix with the phases of
    /// `diag(R)` moved into `Q`, then rescaled to determinant 1.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let z = DMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let qr = z.qr();
        let (mut q, r) = (qr.q(), qr.r());
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        Self::special_from_unitary(q).expect("QR factor is unitary")
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    /// `c·self·c⁻¹` with `c⁻¹ = c*`.
    pub fn conjugate_by(&self, c: &Self) -> Self {
        Self(&c.0 * &self.0 * c.0.adjoint())
    }

    /// `max |UU* − I|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let p = &self.0 * self.0.adjoint() - DMatrix::<Complex64>::identity(n, n);
        max_modulus(&p)
    }

    pub fn determinant_defect(&self) -> f64 {
        (self.0.clone().determinant() - Complex64::new(1.0, 0.0)).norm()
    }

    /// Max-entry modulus of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        max_modulus(&(&self.0 - &other.0))
    }

    /// Row-major `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        self.0
            .row_iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect()
    }

    /// Inverse of [`to_pairs`](Self::to_pairs); shape-checked only.
    pub fn from_pairs_unchecked(rows: &[Vec<[f64; 2]>]) -> Result<Self, SunError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(SunError::Shape {
                expected: n,
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        Ok(Self(DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]))))
    }
}

pub(crate) fn max_modulus(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Rejection-samples a Haar-random `h` with `σ̂(h) ≥ theta`.
pub fn random_base_with_sigma<R: Rng + ?Sized>(
    n: usize,
    theta: f64,
    rng: &mut R,
    max_tries: usize,
) -> Result<UnitaryMatrix, SunError> {
    for _ in 0..max_tries {
        let h = UnitaryMatrix::random(n, rng);
        let eig = eigen_angles(&h)?;
        if weyl_maximize(&eig.angles).sigma >= theta {
            return Ok(h);
        }
    }
    Err(SunError::RejectionCapExceeded { theta, tries: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=7 {
            let u = UnitaryMatrix::random(n, &mut rng);
            assert!(u.unitarity_defect() < 1e-12);
            assert!(u.determinant_defect() < 1e-12);
        }
    }

    #[test]
    fn checked_constructor_rejects() {
        let m = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(UnitaryMatrix::new(m), Err(SunError::NotUnitary(_))));
        let m = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.0, 1.0));
        assert!(matches!(UnitaryMatrix::new(m), Err(SunError::NotSpecial(_))));
        let m = DMatrix::from_element(2, 3, Complex64::new(0.0, 0.0));
        assert!(matches!(UnitaryMatrix::new(m), Err(SunError::Shape { .. })));
    }

    #[test]
    fn pairs_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = UnitaryMatrix::random(3, &mut rng);
        let v = UnitaryMatrix::from_pairs_unchecked(&u.to_pairs()).unwrap();
        assert_eq!(u, v);
    }

    #[test]
    fn sampling_meets_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_base_with_sigma(4, 1.0, &mut rng, DEFAULT_REJECTION_CAP).unwrap();
        let eig = eigen_angles(&h).unwrap();
        assert!(weyl_maximize(&eig.angles).sigma >= 1.0);
        let err = random_base_with_sigma(2, 3.2, &mut rng, 5).unwrap_err();
        assert!(matches!(err, SunError::RejectionCapExceeded { tries: 5, .. }));
    }
}
