use std::fs;
use std::io::Write;
use std::path::Path;

use conjwidth::sunpipe::{
    bound_f, decompose_with, random_base_with_sigma, to_precise_json, ConjugacyCertificate, DecomposeOptions,
    ThetaChoice, UnitaryMatrix, DEFAULT_REJECTION_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{DecomposeArgs, GlobalOpts, TrialArgs};
use crate::CliError;

pub fn cmd_bound(theta: f64, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let f = bound_f(theta).map_err(|e| CliError::Precondition(e.to_string()))?;
    if global.json {
        #[derive(Serialize)]
        struct Doc {
            theta: f64,
            bound: f64,
        }
        writeln!(out, "{}", to_precise_json(&Doc { theta, bound: f }))?;
    } else {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

/// `random`, `diag:φ1,…,φn`, or a JSON file of rows of `[re, im]` pairs.
fn load_matrix(
    src: &str,
    n: usize,
    rng: &mut ChaCha8Rng,
    min_sigma: Option<f64>,
) -> Result<UnitaryMatrix, CliError> {
    if src == "random" {
        return match min_sigma {
            Some(theta) => random_base_with_sigma(n, theta, rng, DEFAULT_REJECTION_CAP)
                .map_err(|e| CliError::Precondition(e.to_string())),
            None => Ok(UnitaryMatrix::random(n, rng)),
        };
    }
    let m = if let Some(list) = src.strip_prefix("diag:") {
        let angles = list
            .split(',')
            .map(|a| a.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(format!("bad angle list '{list}': {e}")))?;
        UnitaryMatrix::diagonal(&angles).map_err(|e| CliError::Precondition(e.to_string()))?
    } else {
        let text = fs::read_to_string(src).map_err(|e| CliError::Usage(format!("{src}: {e}")))?;
        let rows: Vec<Vec<[f64; 2]>> =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{src}: {e}")))?;
        let raw = UnitaryMatrix::from_pairs_unchecked(&rows).map_err(|e| CliError::Usage(e.to_string()))?;
        UnitaryMatrix::new(raw.into_matrix()).map_err(|e| CliError::Precondition(e.to_string()))?
    };
    if m.dim() != n {
        return Err(CliError::Usage(format!("matrix '{src}' has size {}, expected {n}", m.dim())));
    }
    Ok(m)
}

pub fn cmd_decompose(args: &DecomposeArgs, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let h = load_matrix(&args.h, args.n, &mut rng, args.theta)?;
    let g = load_matrix(&args.g, args.n, &mut rng, None)?;
    let opts = DecomposeOptions {
        theta: args.theta.map_or(ThetaChoice::Auto, ThetaChoice::Fixed),
        tol: global.tol,
        seed: global.seed,
        ..DecomposeOptions::default()
    };
    let d = decompose_with(&h, &g, &opts).map_err(|e| CliError::Precondition(e.to_string()))?;
    let cert = &d.certificate;
    let summary = format!(
        "SU({}) factors {} integral_bound {} f(theta) {} theta {} residual {:e}",
        args.n,
        cert.count(),
        d.stats.integral_bound,
        cert.bound,
        cert.theta,
        cert.residual
    );
    match &args.out {
        Some(path) => {
            fs::write(path, cert.to_json()).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            writeln!(out, "{summary}")?;
        }
        None => {
            writeln!(out, "{}", cert.to_json())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

pub fn cmd_verify(path: &Path, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let cert = ConjugacyCertificate::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = cert.verify(global.tol);
    if global.json {
        writeln!(out, "{}", to_precise_json(&report))?;
    } else {
        writeln!(
            out,
            "{} SU({}) factors {} bound {} residual {:e} (stored {:e})",
            if report.passed() { "PASS" } else { "FAIL" },
            cert.dim(),
            report.count,
            report.bound,
            report.residual,
            report.stored_residual
        )?;
        for f in &report.failures {
            writeln!(out, "  {f}")?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(report.failures.join("; ")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialEntry {
    pub index: usize,
    pub theta: f64,
    pub sigma_hat: f64,
    pub translates: usize,
    pub count: usize,
    pub integral_bound: usize,
    pub bound: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub group: String,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub theta_min: f64,
    pub entries: Vec<TrialEntry>,
    pub max_residual: f64,
    pub max_count_ratio: f64,
}

impl TrialReport {
    /// Every count within its bounds and every residual within `tol`.
    pub fn violations(&self, tol: f64) -> Vec<String> {
        let mut v = Vec::new();
        for e in &self.entries {
            if e.count > e.integral_bound || e.count as f64 >= e.bound {
                v.push(format!("trial {}: {} factors, bounds {} / {}", e.index, e.count, e.integral_bound, e.bound));
            }
            if !(e.residual <= tol) {
                v.push(format!("trial {}: residual {:e}", e.index, e.residual));
            }
        }
        v
    }
}

/// Runs `trials` decompositions in `SU(n)` with `θ = theta_min`; trial `i`
/// draws from stream `i` of a ChaCha generator seeded with `seed`, so the
/// report does not depend on scheduling.
pub fn run_trials(
    n: usize,
    trials: usize,
    theta_min: f64,
    seed: u64,
    tol: f64,
) -> Result<(TrialReport, Vec<ConjugacyCertificate>), CliError> {
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    bound_f(theta_min).map_err(|e| CliError::Usage(e.to_string()))?;
    let results: Vec<Result<(TrialEntry, ConjugacyCertificate), CliError>> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let h = random_base_with_sigma(n, theta_min, &mut rng, DEFAULT_REJECTION_CAP)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            let g = UnitaryMatrix::random(n, &mut rng);
            let opts = DecomposeOptions { theta: ThetaChoice::Fixed(theta_min), tol, seed, ..DecomposeOptions::default() };
            let d = decompose_with(&h, &g, &opts)
                .map_err(|e| CliError::Precondition(format!("trial {index}: {e}")))?;
            let c = d.certificate;
            let entry = TrialEntry {
                index,
                theta: c.theta,
                sigma_hat: d.stats.sigma_hat,
                translates: d.stats.translates,
                count: c.count(),
                integral_bound: d.stats.integral_bound,
                bound: c.bound,
                residual: c.residual,
            };
            Ok((entry, c))
        })
        .collect();
    let mut entries = Vec::with_capacity(trials);
    let mut certs = Vec::with_capacity(trials);
    for r in results {
        let (e, c) = r?;
        entries.push(e);
        certs.push(c);
    }
    let max_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    let max_count_ratio = entries.iter().map(|e| e.count as f64 / e.bound).fold(0.0, f64::max);
    let report = TrialReport {
        group: format!("SU({n})"),
        n,
        seed,
        trials,
        theta_min,
        entries,
        max_residual,
        max_count_ratio,
    };
    Ok((report, certs))
}

pub fn cmd_trials(args: &TrialArgs, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let (report, _) = run_trials(args.n, args.trials, args.theta_min, global.seed, global.tol)?;
    let json = to_precise_json(&report);
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    if global.json {
        writeln!(out, "{json}")?;
    } else {
        writeln!(out, "trial\ttheta\tsigma_hat\tt\tcount\t2t*ceil(2pi/theta)\tf(theta)\tresidual")?;
        for e in &report.entries {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:e}",
                e.index, e.theta, e.sigma_hat, e.translates, e.count, e.integral_bound, e.bound, e.residual
            )?;
        }
        writeln!(
            out,
            "{} trials, seed {}, max residual {:e}, max count/f(theta) {}",
            report.trials, report.seed, report.max_residual, report.max_count_ratio
        )?;
    }
    let violations = report.violations(global.tol);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(violations.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::exec;

    fn read_cert(path: &Path) -> ConjugacyCertificate {
        ConjugacyCertificate::from_json(&fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn bound_values_and_range() {
        let (code, out) = exec(&["bound", "--theta", "3.14159265"]);
        assert_eq!(code, 0);
        let f: f64 = out.trim().parse().unwrap();
        assert!((f - 33.28).abs() < 0.01, "{f}");

        let f: f64 = exec(&["bound", "--theta", "0.5"]).1.trim().parse().unwrap();
        assert!((f - 515.52).abs() < 0.01, "{f}");

        let (code, out) = exec(&["bound", "--theta", "4.0"]);
        assert_eq!(code, 2);
        assert!(out.contains("outside"));
    }

    #[test]
    fn bound_output_round_trips() {
        let f: f64 = exec(&["bound", "--theta", "0.7"]).1.trim().parse().unwrap();
        assert_eq!(f, 2.0 * (8.0 / 0.7 + 3.0) * (2.0 * PI / 0.7 + 1.0));
    }

    #[test]
    fn equal_inputs_give_one_factor() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let (code, out) = exec(&[
            "decompose", "--n", "3", "--h", "diag:0.3,0.4,-0.7", "--g", "diag:0.3,0.4,-0.7", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(read_cert(&path).count(), 1);
    }

    #[test]
    fn su2_seed_42_within_half_turn_bound() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let (code, out) = exec(&["--seed", "42", "decompose", "--n", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("factors"));
        let cert = read_cert(&path);
        assert!(cert.count() <= 2 * (PI / cert.theta).ceil() as usize);
    }

    #[test]
    fn su4_certificate_verifies_and_perturbation_fails() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let p = path.to_str().unwrap();
        let (code, out) = exec(&["--seed", "7", "decompose", "--n", "4", "--theta", "0.5", "--out", p]);
        assert_eq!(code, 0, "{out}");
        let cert = read_cert(&path);
        assert!(cert.count() <= 515);
        assert!(cert.residual <= 1e-6);

        let (code, out) = exec(&["verify", p]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("PASS"));

        let mut bad = cert.clone();
        let mut m = bad.factors[0].conjugator.as_matrix().clone();
        m[(1, 2)].re += 1e-3;
        bad.factors[0].conjugator = UnitaryMatrix::new_unchecked(m);
        fs::write(&path, bad.to_json()).unwrap();
        let (code, out) = exec(&["verify", p]);
        assert_eq!(code, 3);
        assert!(out.contains("residual"));
    }

    #[test]
    fn truncated_certificate_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let p = path.to_str().unwrap();
        assert_eq!(exec(&["decompose", "--n", "3", "--out", p]).0, 0);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert_eq!(exec(&["verify", p]).0, 1);
        assert_eq!(exec(&["verify", dir.path().join("missing.json").to_str().unwrap()]).0, 1);
    }

    #[test]
    fn stdout_certificate_is_deterministic() {
        let a = exec(&["--seed", "3", "decompose", "--n", "3"]);
        let b = exec(&["--seed", "3", "decompose", "--n", "3"]);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
        assert!(ConjugacyCertificate::from_json(&a.1).is_ok());
    }

    #[test]
    fn trials_report_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let run = |name: &str| {
            let path = dir.path().join(name);
            let (code, out) = exec(&[
                "--seed", "11", "trials", "--n", "3", "--trials", "1", "--theta-min", "0.5", "--out",
                path.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "{out}");
            fs::read(path).unwrap()
        };
        assert_eq!(run("a.json"), run("b.json"));

        let (_, out) = exec(&["--json", "--seed", "11", "trials", "--n", "3", "--trials", "4", "--theta-min", "0.5"]);
        let report: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(report["entries"].as_array().unwrap().len(), 4);
        assert!(report["max_residual"].as_f64().unwrap() <= 1e-6);
    }

    #[test]
    fn trials_independent_of_thread_count() {
        let (a, _) = run_trials(3, 6, 0.5, 5, 1e-6).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let (b, _) = pool.install(|| run_trials(3, 6, 0.5, 5, 1e-6)).unwrap();
        assert_eq!(a, b);
        assert!(a.violations(1e-6).is_empty());
        assert!(a.entries.iter().all(|e| e.count <= e.integral_bound && (e.count as f64) < e.bound));
    }

    #[test]
    fn trials_reject_bad_parameters() {
        assert_eq!(exec(&["trials", "--n", "3", "--theta-min", "0"]).0, 1);
        assert_eq!(exec(&["trials", "--n", "1", "--theta-min", "0.5"]).0, 1);
    }
}
