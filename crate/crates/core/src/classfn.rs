//! The circle length `ℓ` and the class functions `σ`, `σ̂` on a maximal torus.
//!
//! A torus element of the simply connected group is written in coroot
//! coordinates, `h = Π exp(xⱼ δⱼ^∨)`, with each `xⱼ` an angle taken modulo
//! `2π`. The simple root `δᵢ` evaluates on `h` to the angle
//! `Σⱼ ⟨δᵢ, δⱼ^∨⟩ xⱼ = Σⱼ C[j][i] xⱼ`.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::{PI, TAU};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::rootsys::exact::{self, Rational};
use crate::rootsys::{RootSystem, RootSystemDescriptor, WeylElement};

/// Default tolerance for [`is_central`].
pub const CENTRAL_TOL: f64 = 1e-9;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum ClassFnError {
    #[error("torus element has {got} coordinates but the root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("torus element is of type {got}, root system is {expected}")]
    TypeMismatch { expected: String, got: String },
    #[error("empty list of Weyl elements")]
    EmptyWeylList,
}

/// Reduces an angle to `(−π, π]`.
pub fn normalize_angle(phi: f64) -> f64 {
    let r = phi - TAU * (phi / TAU).round();
    if r <= -PI {
        r + TAU
    } else if r > PI {
        r - TAU
    } else {
        r
    }
}

/// A value of `ℓ`, `σ` or `σ̂`, always in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ClassValue(f64);

impl ClassValue {
    pub fn new(value: f64) -> Self {
        Self(value.clamp(0.0, PI))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Angular distance from `1` to `e^{iφ}` on the unit circle.
pub fn circle_length(angle: f64) -> ClassValue {
    // Symmetric in φ ↦ −φ bit for bit: `round` rounds half away from zero.
    let r = angle - TAU * (angle / TAU).round();
    ClassValue::new(r.abs())
}

/// A point of the maximal torus in coroot coordinates, each in `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    descriptor: RootSystemDescriptor,
    coords: Vec<f64>,
}

impl TorusElement {
    pub fn new(descriptor: RootSystemDescriptor, coords: &[f64]) -> Result<Self, ClassFnError> {
        if coords.len() != descriptor.rank() {
            return Err(ClassFnError::RankMismatch {
                expected: descriptor.rank(),
                got: coords.len(),
            });
        }
        Ok(Self {
            descriptor,
            coords: coords.iter().map(|&x| normalize_angle(x)).collect(),
        })
    }

    pub fn identity(descriptor: RootSystemDescriptor) -> Self {
        Self {
            descriptor,
            coords: vec![0.0; descriptor.rank()],
        }
    }

    /// Uniform sample from the torus.
    pub fn random<R: Rng + ?Sized>(descriptor: RootSystemDescriptor, rng: &mut R) -> Self {
        let coords: Vec<f64> = (0..descriptor.rank()).map(|_| rng.random_range(-PI..PI)).collect();
        Self::new(descriptor, &coords).expect("rank matches")
    }

    pub fn descriptor(&self) -> RootSystemDescriptor {
        self.descriptor
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Group product (coordinatewise addition).
    pub fn mul(&self, other: &Self) -> Self {
        let coords: Vec<f64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self {
            descriptor: self.descriptor,
            coords: coords.into_iter().map(normalize_angle).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            descriptor: self.descriptor,
            coords: self.coords.iter().map(|&x| normalize_angle(-x)).collect(),
        }
    }

    /// `w(h)`, through the integral action of `w` on coroot coordinates.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let coords = w.apply_coroot(&self.coords);
        Self {
            descriptor: self.descriptor,
            coords: coords.into_iter().map(normalize_angle).collect(),
        }
    }

    /// Angles of `δ₁(h), …, δ_r(h)` (not reduced).
    pub fn character_angles(&self, rs: &RootSystem) -> Result<Vec<f64>, ClassFnError> {
        self.check(rs)?;
        let c = rs.cartan();
        let r = rs.rank();
        Ok((0..r)
            .map(|i| (0..r).map(|j| c[j][i] as f64 * self.coords[j]).sum())
            .collect())
    }

    fn check(&self, rs: &RootSystem) -> Result<(), ClassFnError> {
        if self.descriptor != rs.descriptor() {
            return Err(ClassFnError::TypeMismatch {
                expected: rs.descriptor().to_string(),
                got: self.descriptor.to_string(),
            });
        }
        Ok(())
    }
}

/// `σ(h) = (1/r) Σᵢ ℓ(δᵢ(h))`.
pub fn sigma(rs: &RootSystem, h: &TorusElement) -> Result<ClassValue, ClassFnError> {
    let angles = h.character_angles(rs)?;
    let sum: f64 = angles.iter().map(|&a| circle_length(a).value()).sum();
    Ok(ClassValue::new(sum / rs.rank() as f64))
}

/// Per-root lengths `ℓ(δᵢ(h))`.
pub fn root_lengths(rs: &RootSystem, h: &TorusElement) -> Result<Vec<f64>, ClassFnError> {
    Ok(h.character_angles(rs)?
        .into_iter()
        .map(|a| circle_length(a).value())
        .collect())
}

/// Maximum of `σ(w(h))` over the supplied Weyl elements with the first
/// element attaining it. With the whole Weyl group supplied this is `σ̂(h)`;
/// with a sample it is a lower bound.
pub fn sigma_hat<'w>(
    rs: &RootSystem,
    h: &TorusElement,
    weyl: &'w [WeylElement],
) -> Result<(ClassValue, &'w WeylElement), ClassFnError> {
    let mut best: Option<(ClassValue, &WeylElement)> = None;
    for w in weyl {
        let v = sigma(rs, &h.weyl_act(w))?;
        if best.is_none_or(|(b, _)| v.value() > b.value()) {
            best = Some((v, w));
        }
    }
    best.ok_or(ClassFnError::EmptyWeylList)
}

/// `σ̂` estimate for groups too large to enumerate: the maximum over a sample
/// of random Weyl words (identity included). Always a lower bound.
#[derive(Debug, Clone)]
pub struct SigmaHatEstimate {
    pub value: ClassValue,
    pub witness: WeylElement,
    pub sample_size: usize,
    pub exhaustive: bool,
}

pub fn sigma_hat_sampled<R: Rng + ?Sized>(
    rs: &RootSystem,
    h: &TorusElement,
    samples: usize,
    rng: &mut R,
) -> Result<SigmaHatEstimate, ClassFnError> {
    let r = rs.rank();
    let mut ws = vec![WeylElement::identity(r)];
    let word_len = 4 * rs.roots().len();
    for _ in 1..samples.max(1) {
        let word: Vec<usize> = (0..word_len).map(|_| rng.random_range(0..r)).collect();
        ws.push(WeylElement::from_word(rs, &word));
    }
    let (value, witness) = sigma_hat(rs, h, &ws)?;
    Ok(SigmaHatEstimate {
        value,
        witness: witness.clone(),
        sample_size: ws.len(),
        exhaustive: false,
    })
}

/// Whether every simple root is within `tol` of `1` on `h`.
pub fn is_central(rs: &RootSystem, h: &TorusElement, tol: f64) -> Result<bool, ClassFnError> {
    Ok(root_lengths(rs, h)?.into_iter().all(|l| l <= tol))
}

/// An element of `T` with `ℓ(δᵢ(h)) = π` for every simple root, so `σ(h) = π`.
pub fn sigma_maximizer(rs: &RootSystem) -> TorusElement {
    // Solve Cᵀ x = π (1, …, 1).
    let ct = exact::transpose(rs.cartan());
    let inv = exact::inverse(&ct).expect("Cartan matrix is invertible");
    let coords: Vec<f64> = inv
        .iter()
        .map(|row| row.iter().map(|q| rational_to_f64(*q)).sum::<f64>() * PI)
        .collect();
    TorusElement::new(rs.descriptor(), &coords).expect("rank matches")
}

fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// The center of the simply connected group, as coroot coordinates measured
/// in turns (`x = 2π·t`), each reduced to `[0, 1)`.
///
/// Central elements are the `x` with `Cᵀ x ∈ 2π ℤʳ`; they form the finite
/// group generated by the columns of `(Cᵀ)⁻¹` modulo `ℤʳ`.
pub fn center_elements(rs: &RootSystem) -> Vec<Vec<Rational>> {
    let r = rs.rank();
    let inv = exact::inverse(&exact::transpose(rs.cartan())).expect("Cartan matrix is invertible");
    let frac = |q: Rational| q - q.floor();
    let gens: Vec<Vec<Rational>> = (0..r)
        .map(|j| (0..r).map(|i| frac(inv[i][j])).collect())
        .collect();
    let zero = vec![Rational::zero(); r];
    let mut seen: HashSet<Vec<Rational>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let next: Vec<Rational> = v.iter().zip(g).map(|(a, b)| frac(a + b)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(v);
    }
    out
}

/// `σ(h)/π` computed exactly for `h` with rational coordinates in turns.
pub fn sigma_over_pi_exact(rs: &RootSystem, turns: &[Rational]) -> Rational {
    let c = rs.cartan();
    let r = rs.rank();
    let half = Ratio::new(1, 2);
    let total: Rational = (0..r)
        .map(|i| {
            let t: Rational = (0..r).map(|j| Rational::from_integer(c[j][i]) * turns[j]).sum();
            // Reduce to (−1/2, 1/2]; ℓ/π = 2|t|.
            let mut t = t - t.floor();
            if t > half {
                t -= Rational::from_integer(1);
            }
            t.abs() * 2
        })
        .sum();
    total / Rational::from_integer(r as i64)
}

/// Converts turns to a floating-point torus element.
pub fn torus_from_turns(descriptor: RootSystemDescriptor, turns: &[Rational]) -> TorusElement {
    let coords: Vec<f64> = turns.iter().map(|&t| rational_to_f64(t) * TAU).collect();
    TorusElement::new(descriptor, &coords).expect("rank matches")
}
