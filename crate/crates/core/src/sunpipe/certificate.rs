//! Conjugate-factor certificates and their JSON form.

use std::io;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::unitary::{UnitaryMatrix, UNITARY_TOL};
use super::{bound_f, SunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Plus,
    Minus,
}

impl Exponent {
    pub fn as_i8(self) -> i8 {
        match self {
            Exponent::Plus => 1,
            Exponent::Minus => -1,
        }
    }

    pub fn from_i64(e: i64) -> Option<Self> {
        match e {
            1 => Some(Exponent::Plus),
            -1 => Some(Exponent::Minus),
            _ => None,
        }
    }
}

/// One factor `c·h^{±1}·c⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub conjugator: UnitaryMatrix,
    pub exponent: Exponent,
}

/// `target = Π (cᵢ·base^{eᵢ}·cᵢ⁻¹)` within `residual` (max-entry modulus).
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyCertificate {
    pub base: UnitaryMatrix,
    pub target: UnitaryMatrix,
    pub factors: Vec<Factor>,
    pub theta: f64,
    pub bound: f64,
    pub residual: f64,
}

/// Ordered product of the factors. Inverses are computed, not assumed to be
/// adjoints, so perturbed conjugators are multiplied out faithfully.
pub(crate) fn multiply_out(base: &UnitaryMatrix, factors: &[Factor]) -> UnitaryMatrix {
    let n = base.dim();
    let h = base.as_matrix();
    let h_inv = inverse(h);
    let mut acc: DMatrix<Complex64> = DMatrix::identity(n, n);
    for f in factors {
        let c = f.conjugator.as_matrix();
        let power = match f.exponent {
            Exponent::Plus => h,
            Exponent::Minus => &h_inv,
        };
        acc = acc * c * power * inverse(c);
    }
    UnitaryMatrix::new_unchecked(acc)
}

fn inverse(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.clone().try_inverse().unwrap_or_else(|| {
        DMatrix::from_element(m.nrows(), m.ncols(), Complex64::new(f64::NAN, f64::NAN))
    })
}

/// Outcome of an independent re-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub residual: f64,
    pub stored_residual: f64,
    pub count: usize,
    pub bound: f64,
    pub max_unitarity_defect: f64,
    pub max_determinant_defect: f64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ConjugacyCertificate {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn count(&self) -> usize {
        self.factors.len()
    }

    pub fn reconstruct(&self) -> UnitaryMatrix {
        multiply_out(&self.base, &self.factors)
    }

    pub fn recompute_residual(&self) -> f64 {
        let r = self.reconstruct().distance(&self.target);
        if r.is_nan() {
            f64::INFINITY
        } else {
            r
        }
    }

    /// Re-multiplies every factor and checks the residual against `tol` and
    /// the stored value, the count against the bound, the bound against
    /// `f(θ)`, and that every matrix is special unitary.
    pub fn verify(&self, tol: f64) -> VerifyReport {
        let mut failures = Vec::new();
        let n = self.dim();
        let shapes_ok = self.target.dim() == n && self.factors.iter().all(|f| f.conjugator.dim() == n);
        let residual = if shapes_ok {
            self.recompute_residual()
        } else {
            failures.push("matrix sizes disagree".to_string());
            f64::INFINITY
        };
        if !(residual <= tol) {
            failures.push(format!("residual {residual:e} exceeds tolerance {tol:e}"));
        }
        if !(residual <= self.residual + 1e-12) {
            failures.push(format!(
                "recomputed residual {residual:e} exceeds the stored residual {:e}",
                self.residual
            ));
        }
        if self.count() as f64 > self.bound {
            failures.push(format!("{} factors exceed the bound {}", self.count(), self.bound));
        }
        match bound_f(self.theta) {
            Ok(f) if (f - self.bound).abs() <= 1e-9 * f => {}
            Ok(f) => failures.push(format!("bound {} differs from f(theta) = {f}", self.bound)),
            Err(e) => failures.push(e.to_string()),
        }
        let matrices = std::iter::once(&self.base)
            .chain(std::iter::once(&self.target))
            .chain(self.factors.iter().map(|f| &f.conjugator));
        let (mut unit, mut det) = (0.0_f64, 0.0_f64);
        for m in matrices {
            if m.dim() == n {
                unit = unit.max(m.unitarity_defect());
                det = det.max(m.determinant_defect());
            }
        }
        if !(unit <= UNITARY_TOL) {
            failures.push(format!("a matrix is not unitary (defect {unit:e})"));
        }
        if !(det <= UNITARY_TOL) {
            failures.push(format!("a matrix does not have determinant 1 (defect {det:e})"));
        }
        VerifyReport {
            residual,
            stored_residual: self.residual,
            count: self.count(),
            bound: self.bound,
            max_unitarity_defect: unit,
            max_determinant_defect: det,
            failures,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = CertificateDoc {
            n: self.dim(),
            base: self.base.to_pairs(),
            target: self.target.to_pairs(),
            theta: self.theta,
            bound: self.bound,
            factors: self
                .factors
                .iter()
                .map(|f| FactorDoc {
                    conjugator: f.conjugator.to_pairs(),
                    exponent: f.exponent.as_i8() as i64,
                })
                .collect(),
            residual: self.residual,
        };
        to_precise_json(&doc)
    }

    /// Parses a certificate; matrices are shape-checked but not required to
    /// be unitary (that is [`verify`](Self::verify)'s job).
    pub fn from_json(s: &str) -> Result<Self, SunError> {
        let doc: CertificateDoc =
            serde_json::from_str(s).map_err(|e| SunError::Certificate(e.to_string()))?;
        let matrix = |rows: &[Vec<[f64; 2]>]| -> Result<UnitaryMatrix, SunError> {
            let m = UnitaryMatrix::from_pairs_unchecked(rows)?;
            if m.dim() != doc.n {
                return Err(SunError::Shape { expected: doc.n, rows: m.dim(), cols: m.dim() });
            }
            Ok(m)
        };
        let factors = doc
            .factors
            .iter()
            .map(|f| {
                let exponent = Exponent::from_i64(f.exponent)
                    .ok_or_else(|| SunError::Certificate(format!("exponent {} is not ±1", f.exponent)))?;
                Ok(Factor { conjugator: matrix(&f.conjugator)?, exponent })
            })
            .collect::<Result<Vec<_>, SunError>>()?;
        Ok(Self {
            base: matrix(&doc.base)?,
            target: matrix(&doc.target)?,
            factors,
            theta: doc.theta,
            bound: doc.bound,
            residual: doc.residual,
        })
    }
}

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    n: usize,
    base: Rows,
    target: Rows,
    theta: f64,
    bound: f64,
    factors: Vec<FactorDoc>,
    residual: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    conjugator: Rows,
    exponent: i64,
}

/// Compact JSON with every float written to 17 significant digits.
pub fn to_precise_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, PreciseFloats);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("JSON is UTF-8")
}

struct PreciseFloats;

impl serde_json::ser::Formatter for PreciseFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}
