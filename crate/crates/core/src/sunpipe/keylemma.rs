use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::SunError;
use crate::classfn::{circle_length, root_lengths, TorusElement};
use crate::rootsys::{select_orthogonal_subset, Family, OrthogonalSubset, RootSystem};

/// Slack on the `ℓ ≥ θ/2` and `σ ≥ θ` comparisons.
const SELECT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct KeyLemmaSelection {
    /// Simple roots with `ℓ(δᵢ(h)) ≥ θ/2`.
    pub delta1: BTreeSet<usize>,
    /// Larger color class of `delta1`; pairwise orthogonal.
    pub delta0: OrthogonalSubset,
    pub sigma: f64,
}

/// Lower bound on `#Δ₀` guaranteed by the selection when `σ(h) ≥ θ`.
///
/// With `t = #Δ₁` and `ℓ ≤ π`: `rθ ≤ tπ + (r − t)θ/2`, so
/// `t ≥ rθ/(2π − θ)`, and the larger color class has at least `t/2` roots.
pub fn counting_bound(rank: usize, theta: f64) -> f64 {
    rank as f64 * theta / (2.0 * (2.0 * PI - theta))
}

/// Selection from the per-root lengths `ℓ(δᵢ(h))`.
pub fn key_lemma_select_lengths(
    rs: &RootSystem,
    lengths: &[f64],
    theta: f64,
) -> Result<KeyLemmaSelection, SunError> {
    let r = rs.rank();
    if lengths.len() != r {
        return Err(SunError::Length { expected: r, got: lengths.len() });
    }
    if !(theta > 0.0 && theta <= PI) {
        return Err(SunError::ThetaOutOfRange(theta));
    }
    let sigma = lengths.iter().sum::<f64>() / r as f64;
    if sigma < theta - SELECT_TOL {
        return Err(SunError::SigmaBelowTheta { sigma, theta });
    }
    let delta1: BTreeSet<usize> = (0..r)
        .filter(|&i| lengths[i] >= theta / 2.0 - SELECT_TOL)
        .collect();
    let delta0 = select_orthogonal_subset(rs, &delta1)?;
    Ok(KeyLemmaSelection { delta1, delta0, sigma })
}

/// Selection for `diag(e^{iφ₁}, …, e^{iφₙ}) ∈ SU(n)`, `rs = A_{n−1}`.
pub fn key_lemma_select(rs: &RootSystem, angles: &[f64], theta: f64) -> Result<KeyLemmaSelection, SunError> {
    let d = rs.descriptor();
    if d.family() != Family::A || angles.len() != d.rank() + 1 {
        return Err(SunError::Length { expected: d.rank() + 1, got: angles.len() });
    }
    let lengths: Vec<f64> = angles
        .windows(2)
        .map(|w| circle_length(w[0] - w[1]).value())
        .collect();
    key_lemma_select_lengths(rs, &lengths, theta)
}

/// Selection for a torus element of any type.
pub fn key_lemma_select_torus(
    rs: &RootSystem,
    h: &TorusElement,
    theta: f64,
) -> Result<KeyLemmaSelection, SunError> {
    let lengths = root_lengths(rs, h)?;
    key_lemma_select_lengths(rs, &lengths, theta)
}
