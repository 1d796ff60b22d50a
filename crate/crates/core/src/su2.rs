//! `SU(2)` as the unit quaternions: conjugacy classes are round 2-spheres
//! around the axis through `±1`, and `C(a)C(a⁻¹)` is the closed ball of
//! radius `θ = ℓ(δ(a))` about `1`. Everything here is spherical geometry on
//! the 3-sphere.

use std::f64::consts::PI;
use std::ops::{Mul, Neg};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Representation invariant tolerance for `|q| = 1`.
pub const NORM_TOL: f64 = 1e-12;
/// Per-step residual allowed for [`pair_factorize`].
pub const STEP_TOL: f64 = 1e-9;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Su2Error {
    #[error("quaternion has norm {0}, not 1")]
    NotUnit(f64),
    #[error("element is central (±1); its conjugacy class is a point")]
    Central,
    #[error("target at distance {distance} from 1 lies outside the ball of radius {theta}")]
    OutsideBall { distance: f64, theta: f64 },
}

/// `w + xi + yj + zk` with `w² + x² + y² + z² = 1`, identified with the
/// matrix `[[w+ix, y+iz], [−y+iz, w−ix]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

impl UnitQuaternion {
    pub const IDENTITY: Self = Self { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Checked constructor: the norm must be 1 within [`NORM_TOL`].
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, Su2Error> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Su2Error::NotUnit(n));
        }
        Ok(Self { w, x, y, z })
    }

    /// Normalizing constructor. Panics on the zero quaternion.
    pub fn normalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(n > 0.0, "cannot normalize the zero quaternion");
        Self { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    /// `exp(angle · axis) = cos(angle) + sin(angle)·axis` for a unit 3-vector `axis`.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        let n = norm3(axis);
        let (s, c) = angle.sin_cos();
        Self::normalized(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
    }

    /// Haar-uniform sample.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > 1e-6 {
                return Self::normalized(v[0], v[1], v[2], v[3]);
            }
        }
    }

    pub fn components(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn real(&self) -> f64 {
        self.w
    }

    pub fn vector(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn inverse(&self) -> Self {
        Self { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn conjugate_by(&self, q: &Self) -> Self {
        *q * *self * q.inverse()
    }

    /// Spherical distance `d(1, q) ∈ [0, π]`.
    pub fn angle(&self) -> f64 {
        norm3(self.vector()).atan2(self.w)
    }

    /// Spherical distance `d(p, q)`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.inverse() * *other).angle()
    }

    /// Euclidean norm of `self − other` in `ℝ⁴`.
    pub fn chord(&self, other: &Self) -> f64 {
        let a = self.components();
        let b = other.components();
        (0..4).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
    }

    /// Unit rotation axis, or `None` for `±1`.
    pub fn axis(&self) -> Option<Vec3> {
        let v = self.vector();
        let n = norm3(v);
        (n > 0.0).then(|| [v[0] / n, v[1] / n, v[2] / n])
    }

    /// `self^t` along the one-parameter subgroup through `self`.
    pub fn powf(&self, t: f64) -> Self {
        match self.axis() {
            Some(axis) => Self::from_axis_angle(axis, t * self.angle()),
            None if self.w > 0.0 => Self::IDENTITY,
            None => Self::from_axis_angle([1.0, 0.0, 0.0], t * PI),
        }
    }

    /// The 2×2 special unitary matrix, row-major.
    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.w, self.x), Complex64::new(self.y, self.z)],
            [Complex64::new(-self.y, self.z), Complex64::new(self.w, -self.x)],
        ]
    }

    /// Inverse of [`to_matrix`](Self::to_matrix), reading the first row.
    pub fn from_matrix(m: &[[Complex64; 2]; 2]) -> Self {
        Self::normalized(m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im)
    }
}

impl Mul for UnitQuaternion {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }
}

impl Neg for UnitQuaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Self { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

/// Rotation quaternion `q` with `q·m·q⁻¹ = n` for unit vectors `m`, `n`.
fn rotation_between(m: Vec3, n: Vec3) -> UnitQuaternion {
    let c = dot(m, n);
    let axis = cross(m, n);
    if 1.0 + c > 1e-12 {
        return UnitQuaternion::normalized(1.0 + c, axis[0], axis[1], axis[2]);
    }
    // Antipodal: half-turn about any axis orthogonal to m.
    let trial = if m[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let perp = cross(m, trial);
    let p = norm3(perp);
    UnitQuaternion::normalized(0.0, perp[0] / p, perp[1] / p, perp[2] / p)
}

/// Width of the conjugacy class of `a`: `2·min(d(1,a), d(−1,a))`, i.e.
/// `ℓ(δ(a))` once `a` is conjugated into the diagonal torus.
pub fn class_width(a: &UnitQuaternion) -> f64 {
    let d = a.angle();
    2.0 * d.min(PI - d)
}

/// Conjugators `(u, v)` for the two-conjugate block `(u a u⁻¹)(v a⁻¹ v⁻¹)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairFactor {
    pub u: UnitQuaternion,
    pub v: UnitQuaternion,
}

impl PairFactor {
    pub const TRIVIAL: Self = Self {
        u: UnitQuaternion::IDENTITY,
        v: UnitQuaternion::IDENTITY,
    };

    /// `(u a u⁻¹)(v a⁻¹ v⁻¹)`.
    pub fn evaluate(&self, a: &UnitQuaternion) -> UnitQuaternion {
        a.conjugate_by(&self.u) * a.inverse().conjugate_by(&self.v)
    }
}

/// Solves `(u a u⁻¹)(v a⁻¹ v⁻¹) = b` for `d(1, b) ≤ class_width(a)`.
///
/// Write `±a = cos α + sin α·n` with `α ∈ (0, π/2]`. For unit vectors `p`, `q`
/// at angle `γ`, `(cos α + sin α·p)(cos α − sin α·q)` has real part
/// `cos²α + sin²α·cos γ`, which hits `cos β` for `sin(γ/2) = sin(β/2)/sin α`.
/// A final rotation carries the vector part of that product onto the vector
/// part of `b`.
pub fn pair_factorize(a: &UnitQuaternion, b: &UnitQuaternion) -> Result<PairFactor, Su2Error> {
    let theta = class_width(a);
    if theta <= NORM_TOL {
        return Err(Su2Error::Central);
    }
    let beta = b.angle();
    if beta > theta + NORM_TOL {
        return Err(Su2Error::OutsideBall { distance: beta, theta });
    }
    if beta == 0.0 {
        return Ok(PairFactor::TRIVIAL);
    }
    // Signs cancel between a and a⁻¹, so work with the representative near 1.
    let a1 = if a.real() >= 0.0 { *a } else { -*a };
    let alpha = a1.angle();
    let n = a1.axis().expect("non-central");

    let ratio = (beta / 2.0).sin() / alpha.sin();
    let gamma = 2.0 * ratio.min(1.0).asin();
    let candidate = assemble(&a1, alpha, n, gamma, b);
    if candidate.evaluate(a).chord(b) <= 1e-10 {
        return Ok(candidate);
    }
    // Fallback: bisection on γ for Re(x·y) = cos β (decreasing in γ).
    let target = beta.cos();
    let re = |g: f64| alpha.cos().powi(2) + alpha.sin().powi(2) * g.cos();
    let (mut lo, mut hi) = (0.0_f64, PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if re(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(assemble(&a1, alpha, n, 0.5 * (lo + hi), b))
}

fn assemble(a1: &UnitQuaternion, alpha: f64, n: Vec3, gamma: f64, b: &UnitQuaternion) -> PairFactor {
    let p0 = [1.0, 0.0, 0.0];
    let q0 = [gamma.cos(), gamma.sin(), 0.0];
    let x = UnitQuaternion::from_axis_angle(p0, alpha);
    let y = UnitQuaternion::from_axis_angle(q0, -alpha);
    let z = x * y;
    let r = match (z.axis(), b.axis()) {
        (Some(m), Some(t)) if norm3(z.vector()) > 1e-14 && norm3(b.vector()) > 1e-14 => {
            rotation_between(m, t)
        }
        _ => UnitQuaternion::IDENTITY,
    };
    // s_p·a1·s_p⁻¹ = x and s_q·a1⁻¹·s_q⁻¹ = y.
    let s_p = rotation_between(n, p0);
    let s_q = rotation_between(n, q0);
    debug_assert!(a1.conjugate_by(&s_p).chord(&x) < 1e-9);
    PairFactor { u: r * s_p, v: r * s_q }
}

/// Walks from `1` to `g` along the geodesic in `k = ⌈d(1,g)/θ⌉` equal arcs and
/// factorizes each arc with [`pair_factorize`]; `2k ≤ 2⌈π/θ⌉` conjugates.
pub fn ball_walk_decompose(a: &UnitQuaternion, g: &UnitQuaternion) -> Result<Vec<PairFactor>, Su2Error> {
    let theta = class_width(a);
    if theta <= NORM_TOL {
        return Err(Su2Error::Central);
    }
    let beta = g.angle();
    if beta == 0.0 {
        return Ok(Vec::new());
    }
    let k = step_count(beta, theta);
    let step = g.powf(1.0 / k as f64);
    let factor = pair_factorize(a, &step)?;
    Ok(vec![factor; k])
}

/// `⌈distance/width⌉` with a relative slack of 1e-12 against rounding.
pub fn step_count(distance: f64, width: f64) -> usize {
    if distance <= 0.0 {
        return 0;
    }
    ((distance / width) - 1e-12).ceil().max(1.0) as usize
}

/// Product of all pair blocks, in order.
pub fn reconstruct(a: &UnitQuaternion, factors: &[PairFactor]) -> UnitQuaternion {
    factors
        .iter()
        .fold(UnitQuaternion::IDENTITY, |acc, f| acc * f.evaluate(a))
}
