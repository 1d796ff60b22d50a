use nalgebra::DMatrix;
use num_complex::Complex64;

use super::certificate::{Exponent, Factor};
use super::unitary::UnitaryMatrix;
use super::SunError;
use crate::classfn::normalize_angle;
use crate::rootsys::OrthogonalSubset;
use crate::su2::{class_width, pair_factorize, step_count, PairFactor, UnitQuaternion};

/// Slack on the per-block width requirement `ℓ(δᵢ(h)) ≥ θ/2`.
const WIDTH_TOL: f64 = 1e-12;

/// The `SU(2)` acting on coordinates `(index, index + 1)` of `ℂⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockEmbedding {
    n: usize,
    index: usize,
}

impl BlockEmbedding {
    pub fn new(n: usize, index: usize) -> Result<Self, SunError> {
        if index + 1 >= n {
            return Err(SunError::Length { expected: n, got: index + 2 });
        }
        Ok(Self { n, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn embed(&self, q: &UnitQuaternion) -> UnitaryMatrix {
        let mut m = DMatrix::identity(self.n, self.n);
        self.write(&mut m, q);
        UnitaryMatrix::new_unchecked(m)
    }

    fn write(&self, m: &mut DMatrix<Complex64>, q: &UnitQuaternion) {
        let b = q.to_matrix();
        for (a, row) in b.iter().enumerate() {
            for (c, &z) in row.iter().enumerate() {
                m[(self.index + a, self.index + c)] = z;
            }
        }
    }

    /// Whether the two blocks act on disjoint coordinates (and so commute).
    pub fn disjoint(&self, other: &Self) -> bool {
        self.index.abs_diff(other.index) >= 2
    }
}

/// Block-diagonal element with one quaternion per (disjoint) block.
fn embed_all(n: usize, blocks: &[(BlockEmbedding, UnitQuaternion)]) -> UnitaryMatrix {
    let mut m = DMatrix::identity(n, n);
    for (b, q) in blocks {
        b.write(&mut m, q);
    }
    UnitaryMatrix::new_unchecked(m)
}

/// Writes the torus element with angle `targetᵢ` on each block `(i, i+1)`,
/// `i ∈ d0`, as a product of conjugates of `diag(e^{iφ})` and its inverse.
///
/// On each block `diag(e^{iφᵢ}, e^{iφᵢ₊₁})` is a scalar times
/// `diag(e^{iμᵢ}, e^{−iμᵢ})` with `2μᵢ ≡ φᵢ − φᵢ₊₁`, `μᵢ ∈ (−π/2, π/2]`. The
/// scalar parts cancel inside every `(c h c⁻¹)(c' h⁻¹ c'⁻¹)` pair, so all
/// blocks run an equal-step ball walk of one shared length `k`; the result
/// is `k` pairs, `2k` factors.
pub fn generate_torus_block(
    angles: &[f64],
    d0: &OrthogonalSubset,
    theta: f64,
    target: &[f64],
) -> Result<Vec<Factor>, SunError> {
    let n = angles.len();
    let idx = d0.to_vec();
    if target.len() != idx.len() {
        return Err(SunError::Length { expected: idx.len(), got: target.len() });
    }
    let embeddings = idx
        .iter()
        .map(|&i| BlockEmbedding::new(n, i))
        .collect::<Result<Vec<_>, _>>()?;
    for (a, b) in embeddings.iter().zip(embeddings.iter().skip(1)) {
        if !a.disjoint(b) {
            return Err(SunError::RootSystem(crate::rootsys::RootSystemError::NotOrthogonal(a.index, b.index)));
        }
    }
    let mut blocks = Vec::with_capacity(idx.len());
    for (&i, &y) in idx.iter().zip(target) {
        let mu = normalize_angle(angles[i] - angles[i + 1]) / 2.0;
        let h = UnitQuaternion::normalized(mu.cos(), mu.sin(), 0.0, 0.0);
        let width = class_width(&h);
        if width < theta / 2.0 - WIDTH_TOL {
            return Err(SunError::BlockWidth { block: i, width, required: theta / 2.0 });
        }
        let y = normalize_angle(y);
        blocks.push((h, width, UnitQuaternion::normalized(y.cos(), y.sin(), 0.0, 0.0)));
    }
    let k = blocks
        .iter()
        .map(|(_, width, b)| step_count(b.angle(), *width))
        .max()
        .unwrap_or(0);
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::with_capacity(blocks.len());
    for (h, _, b) in &blocks {
        let pf = if b.angle() == 0.0 {
            PairFactor::TRIVIAL
        } else {
            pair_factorize(h, &b.powf(1.0 / k as f64))?
        };
        pairs.push(pf);
    }
    let u = embed_all(
        n,
        &embeddings.iter().zip(&pairs).map(|(e, p)| (*e, p.u)).collect::<Vec<_>>(),
    );
    let v = embed_all(
        n,
        &embeddings.iter().zip(&pairs).map(|(e, p)| (*e, p.v)).collect::<Vec<_>>(),
    );
    let mut out = Vec::with_capacity(2 * k);
    for _ in 0..k {
        out.push(Factor { conjugator: u.clone(), exponent: Exponent::Plus });
        out.push(Factor { conjugator: v.clone(), exponent: Exponent::Minus });
    }
    Ok(out)
}
