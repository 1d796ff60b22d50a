use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{LazyLock, Mutex};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::blocks::generate_torus_block;
use super::certificate::{ConjugacyCertificate, Exponent, Factor};
use super::eigen::{eigen_angles, weyl_maximize_with, EXHAUSTIVE_CAP};
use super::keylemma::key_lemma_select;
use super::snf::solve_torus_translates;
use super::unitary::UnitaryMatrix;
use super::{bound_f, SunError};
use crate::rootsys::{
    spanning_translates, Family, OrthogonalSubset, RootSystem, RootSystemDescriptor, SpanMode, WeylElement,
    DEFAULT_WEYL_CAP,
};

/// Distance below which `g` is treated as `1`, `h` or `h⁻¹` outright.
const TRIVIAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThetaChoice {
    /// `θ = σ̂(h)`.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposeOptions {
    pub theta: ThetaChoice,
    /// Certificates with a larger residual are rejected.
    pub tol: f64,
    /// Orderings are searched exhaustively up to this dimension.
    pub exhaustive_cap: usize,
    /// Seed for the annealing search above `exhaustive_cap`.
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            theta: ThetaChoice::Auto,
            tol: 1e-6,
            exhaustive_cap: EXHAUSTIVE_CAP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposeStats {
    pub sigma_hat: f64,
    /// Whether `sigma_hat` is exact (exhaustive search) or a lower bound.
    pub sigma_hat_exact: bool,
    pub delta0: Vec<usize>,
    /// Number of Weyl translates `t`.
    pub translates: usize,
    /// Ball-walk length per translate.
    pub steps: Vec<usize>,
    /// `2t⌈2π/θ⌉`.
    pub integral_bound: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub certificate: ConjugacyCertificate,
    pub stats: DecomposeStats,
}

/// `2t⌈2π/θ⌉`.
pub fn integral_bound(t: usize, theta: f64) -> usize {
    2 * t * (2.0 * PI / theta).ceil() as usize
}

pub fn decompose(h: &UnitaryMatrix, g: &UnitaryMatrix, theta: ThetaChoice) -> Result<Decomposition, SunError> {
    decompose_with(h, g, &DecomposeOptions { theta, ..DecomposeOptions::default() })
}

/// Writes `g` as a product of conjugates of `h` and `h⁻¹`.
pub fn decompose_with(h: &UnitaryMatrix, g: &UnitaryMatrix, opts: &DecomposeOptions) -> Result<Decomposition, SunError> {
    let n = h.dim();
    if g.dim() != n {
        return Err(SunError::Shape { expected: n, rows: g.dim(), cols: g.dim() });
    }
    for m in [h, g] {
        let d = m.unitarity_defect();
        if d > super::UNITARY_TOL {
            return Err(SunError::NotUnitary(d));
        }
    }
    if n < 2 {
        return Err(SunError::Central);
    }

    let eig_h = eigen_angles(h)?;
    let best = weyl_maximize_with(&eig_h.angles, opts.exhaustive_cap, opts.seed);
    if best.sigma <= TRIVIAL_TOL {
        return Err(SunError::Central);
    }
    let theta = match opts.theta {
        ThetaChoice::Auto => best.sigma,
        ThetaChoice::Fixed(t) => {
            if !(t > 0.0 && t <= PI) {
                return Err(SunError::ThetaOutOfRange(t));
            }
            if best.sigma < t - TRIVIAL_TOL {
                return Err(SunError::SigmaBelowTheta { sigma: best.sigma, theta: t });
            }
            t
        }
    };
    let bound = bound_f(theta)?;
    let rs = RootSystem::build(RootSystemDescriptor::new(Family::A, n - 1)?);
    let selection = key_lemma_select(&rs, &best.angles, theta)?;
    let d0 = selection.delta0;
    let ws = cached_translates(&rs, &d0)?;
    let integral = integral_bound(ws.len(), theta);
    let mut stats = DecomposeStats {
        sigma_hat: best.sigma,
        sigma_hat_exact: best.exhaustive,
        delta0: d0.to_vec(),
        translates: ws.len(),
        steps: Vec::new(),
        integral_bound: integral,
    };

    let trivial = if g.distance(&UnitaryMatrix::identity(n)) <= TRIVIAL_TOL {
        Some(Vec::new())
    } else if g.distance(h) <= TRIVIAL_TOL {
        Some(vec![Factor { conjugator: UnitaryMatrix::identity(n), exponent: Exponent::Plus }])
    } else if g.distance(&h.adjoint()) <= TRIVIAL_TOL {
        Some(vec![Factor { conjugator: UnitaryMatrix::identity(n), exponent: Exponent::Minus }])
    } else {
        None
    };

    let factors = match trivial {
        Some(f) => f,
        None => {
            let eig_g = eigen_angles(g)?;
            // Coroot coordinates: x_k = φ₁ + ⋯ + φ_k.
            let target: Vec<f64> = eig_g
                .angles
                .iter()
                .take(n - 1)
                .scan(0.0, |acc, &a| {
                    *acc += a;
                    Some(*acc)
                })
                .collect();
            let parts = solve_torus_translates(&ws, &d0, &target)?;
            // c0·diag(ψ')·c0⁻¹ = h, with column k of c0 = column order[k] of q_h.
            let qh = eig_h.basis.as_matrix();
            let c0_inv = DMatrix::from_fn(n, n, |i, k| qh[(i, best.order[k])]).adjoint();
            let qg = eig_g.basis.as_matrix();
            let mut factors = Vec::new();
            for (w, part) in ws.iter().zip(&parts) {
                let block = generate_torus_block(&best.angles, &d0, theta, part)?;
                stats.steps.push(block.len() / 2);
                let left = qg * permutation_matrix(n, &w.word());
                for f in block {
                    let c = &left * f.conjugator.as_matrix() * &c0_inv;
                    factors.push(Factor {
                        conjugator: UnitaryMatrix::special_from_unitary(c)?,
                        exponent: f.exponent,
                    });
                }
            }
            factors
        }
    };

    if factors.len() > integral || integral as f64 >= bound {
        return Err(SunError::BoundViolation { count: factors.len(), integral, bound });
    }
    let mut certificate = ConjugacyCertificate {
        base: h.clone(),
        target: g.clone(),
        factors,
        theta,
        bound,
        residual: 0.0,
    };
    certificate.residual = certificate.recompute_residual();
    if !(certificate.residual <= opts.tol) {
        return Err(SunError::Certificate(format!(
            "residual {:e} exceeds tolerance {:e}",
            certificate.residual, opts.tol
        )));
    }
    Ok(Decomposition { certificate, stats })
}

/// `P_{i₁}⋯P_{i_k}` for the word `[i₁, …, i_k]`, `P_i` swapping `i` and `i+1`.
fn permutation_matrix(n: usize, word: &[usize]) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::identity(n, n);
    for &i in word {
        m.swap_columns(i, i + 1);
    }
    m
}

type TranslateKey = (usize, Vec<usize>);

static TRANSLATE_CACHE: LazyLock<Mutex<HashMap<TranslateKey, Vec<Vec<usize>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn cached_translates(rs: &RootSystem, d0: &OrthogonalSubset) -> Result<Vec<WeylElement>, SunError> {
    let key = (rs.rank(), d0.to_vec());
    if let Some(words) = TRANSLATE_CACHE.lock().expect("cache lock").get(&key) {
        return Ok(words.iter().map(|w| WeylElement::from_word(rs, w)).collect());
    }
    let ws = spanning_translates(rs, d0, SpanMode::Constructive, DEFAULT_WEYL_CAP)?;
    TRANSLATE_CACHE
        .lock()
        .expect("cache lock")
        .insert(key, ws.iter().map(WeylElement::word).collect());
    Ok(ws)
}
