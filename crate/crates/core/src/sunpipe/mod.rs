//! Conjugate factorizations in `SU(n)`.
//!
//! Pipeline: diagonalize `h` and `g`, reorder the eigenangles of `h` to
//! maximize `σ`, select an orthogonal set `Δ₀` of simple roots on which `h`
//! moves far, pick Weyl translates of `Δ₀` that span, solve the translate
//! equation on the torus over the integers, and realize every torus factor
//! through commuting `SU(2)` blocks.

mod blocks;
mod certificate;
mod eigen;
mod keylemma;
mod pipeline;
mod reflections;
mod snf;
mod unitary;

use std::f64::consts::PI;

pub use blocks::{generate_torus_block, BlockEmbedding};
pub use certificate::{to_precise_json, ConjugacyCertificate, Exponent, Factor, VerifyReport};
pub use eigen::{
    eigen_angles, order_sigma, weyl_maximize, weyl_maximize_with, EigenDecomposition, WeylMaximum, EXHAUSTIVE_CAP,
};
pub use keylemma::{
    counting_bound, key_lemma_select, key_lemma_select_lengths, key_lemma_select_torus, KeyLemmaSelection,
};
pub use pipeline::{decompose, decompose_with, integral_bound, DecomposeOptions, DecomposeStats, Decomposition, ThetaChoice};
pub use reflections::{block_rotation, min_reflections, ReflectionFactorization};
pub use snf::{evaluate_translates, smith_normal_form, solve_torus_translates, torus_distance, SmithForm};
pub use unitary::{random_base_with_sigma, UnitaryMatrix, DEFAULT_REJECTION_CAP, UNITARY_TOL};

use crate::classfn::ClassFnError;
use crate::rootsys::RootSystemError;
use crate::su2::Su2Error;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SunError {
    #[error("matrix is not unitary: max |UU* − I| = {0:e}")]
    NotUnitary(f64),
    #[error("matrix is not special: |det − 1| = {0:e}")]
    NotSpecial(f64),
    #[error("matrix is not square or has the wrong size (expected {expected}, got {rows}x{cols})")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("matrix is not orthogonal: max |RRᵀ − I| = {0:e}")]
    NotOrthogonal(f64),
    #[error("theta = {0} is outside (0, π]")]
    ThetaOutOfRange(f64),
    #[error("sigma = {sigma} is below theta = {theta}")]
    SigmaBelowTheta { sigma: f64, theta: f64 },
    #[error("base element is central; no conjugacy class width")]
    Central,
    #[error("block {block}: width {width} is below the required {required}")]
    BlockWidth { block: usize, width: f64, required: f64 },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("translates do not span: the stacked cocharacter matrix has rank {rank} < {dim}")]
    NotSpanning { rank: usize, dim: usize },
    #[error("factor count {count} exceeds the integral bound {integral}, or that bound {integral} is not below f(θ) = {bound}")]
    BoundViolation { count: usize, integral: usize, bound: f64 },
    #[error("no base element with sigma-hat ≥ {theta} found in {tries} tries")]
    RejectionCapExceeded { theta: f64, tries: usize },
    #[error("certificate: {0}")]
    Certificate(String),
    #[error("eigen-decomposition did not converge")]
    EigenFailure,
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    ClassFn(#[from] ClassFnError),
    #[error(transparent)]
    Su2(#[from] Su2Error),
}

/// `f(θ) = 2(8/θ + 3)(2π/θ + 1)`, the conjugate-count bound.
pub fn bound_f(theta: f64) -> Result<f64, SunError> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(SunError::ThetaOutOfRange(theta));
    }
    Ok(2.0 * (8.0 / theta + 3.0) * (2.0 * PI / theta + 1.0))
}
