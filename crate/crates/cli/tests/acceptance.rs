//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails. Runs with `cargo test -p conjwidth-cli --test acceptance`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use conjwidth::classfn::{center_elements, sigma, sigma_over_pi_exact, TorusElement};
use conjwidth::oracles::{stalk_trials, CommutatorTable, PermGroup, ProductGroup};
use conjwidth::rootsys::{
    descriptors_up_to_rank, spanning_translates, translate_bound, two_color, Family, OrthogonalSubset, RootSystem,
    RootSystemDescriptor, SpanMode, DEFAULT_WEYL_CAP,
};
use conjwidth::sunpipe::{
    block_rotation, bound_f, decompose_with, key_lemma_select_torus, min_reflections, random_base_with_sigma,
    ConjugacyCertificate, DecomposeOptions, ThetaChoice, UnitaryMatrix, DEFAULT_REJECTION_CAP,
};
use conjwidth_cli::{run, run_trials, Cli, CliError};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

#[derive(Default)]
struct Shared {
    /// Certificates from the SU(n) campaigns, labelled for reporting.
    certificates: Vec<(String, ConjugacyCertificate)>,
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Shared) -> Outcome); 8] = [
        ("SU(2) factor count", su2_campaign),
        ("SU(3..6) factor count", sun_campaigns),
        ("Key Lemma selection", key_lemma),
        ("spanning translates", representation),
        ("sigma properties", sigma_suite),
        ("reflection length", reflections),
        ("finite oracles", finite_oracles),
        ("certificate round-trip", round_trip),
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&mut shared)))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Outcome::new(false, format!("panicked: {msg}"))
            });
        failed += !outcome.pass as usize;
        println!(
            "{} {} {name}: {} [{:.2?}]",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            start.elapsed()
        );
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Reconstruction with adjoints in place of inverses, as a check on the
/// library's own multiplication.
fn oracle_residual(cert: &ConjugacyCertificate) -> f64 {
    let h = cert.base.as_matrix();
    let h_inv = h.adjoint();
    let n = cert.dim();
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    for f in &cert.factors {
        let c = f.conjugator.as_matrix();
        let p = if f.exponent.as_i8() > 0 { h } else { &h_inv };
        acc = acc * c * p * c.adjoint();
    }
    (acc - cert.target.as_matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn su2_campaign(shared: &mut Shared) -> Outcome {
    const TRIALS: usize = 500;
    const THETA_MIN: f64 = 0.2;
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    let mut min_theta = f64::INFINITY;
    let mut max_ratio = 0.0_f64;
    for i in 0..TRIALS {
        let mut rng = stream(SEED, i);
        let h = random_base_with_sigma(2, THETA_MIN, &mut rng, DEFAULT_REJECTION_CAP).expect("sampling");
        let g = UnitaryMatrix::random(2, &mut rng);
        let opts = DecomposeOptions { theta: ThetaChoice::Auto, tol: 1e-8, ..DecomposeOptions::default() };
        let cert = match decompose_with(&h, &g, &opts) {
            Ok(d) => d.certificate,
            Err(e) => {
                problems.push(format!("trial {i}: {e}"));
                continue;
            }
        };
        let theta = cert.theta;
        let allowed = 2 * (PI / theta).ceil() as usize;
        let residual = oracle_residual(&cert);
        min_theta = min_theta.min(theta);
        worst = worst.max(residual);
        max_ratio = max_ratio.max(cert.count() as f64 / allowed as f64);
        if theta < THETA_MIN || cert.count() > allowed || !(residual <= 1e-8) {
            problems.push(format!("trial {i}: theta {theta}, {} factors > {allowed}?, residual {residual:e}", cert.count()));
        }
        shared.certificates.push((format!("SU(2) trial {i}"), cert));
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(10);
    Outcome::new(
        pass,
        format!(
            "{TRIALS} trials, min theta {min_theta:.4}, max count/2ceil(pi/theta) {max_ratio:.3}, max residual {worst:.2e}, {:.2?} (limit 10 s){}",
            elapsed,
            summarize(&problems)
        ),
    )
}

fn sun_campaigns(shared: &mut Shared) -> Outcome {
    const THETA: f64 = 0.5;
    let f = bound_f(THETA).expect("theta in range");
    let mut lines = Vec::new();
    let mut problems = Vec::new();
    for n in 3..=6 {
        let start = Instant::now();
        let (report, certs) = match run_trials(n, 100, THETA, SEED + n as u64, 1e-6) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("SU({n}): {e}"));
                continue;
            }
        };
        let elapsed = start.elapsed();
        let mut worst = 0.0_f64;
        let mut max_count = 0;
        for (e, cert) in report.entries.iter().zip(&certs) {
            // 2t⌈2π/θ⌉ recomputed here from the translate count.
            let integral = 2 * e.translates * (2.0 * PI / THETA).ceil() as usize;
            let residual = oracle_residual(cert);
            worst = worst.max(residual);
            max_count = max_count.max(cert.count());
            if cert.count() > integral || integral as f64 >= f || !(residual <= 1e-6) || cert.theta != THETA {
                problems.push(format!(
                    "SU({n}) trial {}: {} factors, 2t*ceil = {integral}, residual {residual:e}",
                    e.index,
                    cert.count()
                ));
            }
        }
        if elapsed >= Duration::from_secs(120) {
            problems.push(format!("SU({n}) took {elapsed:.2?}"));
        }
        lines.push(format!("SU({n}) max {max_count} factors, residual {worst:.1e}, {elapsed:.2?}"));
        shared
            .certificates
            .extend(certs.into_iter().enumerate().map(|(i, c)| (format!("SU({n}) trial {i}"), c)));
    }
    Outcome::new(
        problems.is_empty(),
        format!("f(0.5) = {f:.2}; {}{}", lines.join("; "), summarize(&problems)),
    )
}

fn key_lemma_types() -> Vec<RootSystemDescriptor> {
    let mut out: Vec<RootSystemDescriptor> = descriptors_up_to_rank(8)
        .into_iter()
        .filter(|d| matches!(d.family(), Family::A | Family::B | Family::C | Family::D))
        .collect();
    for s in ["G2", "F4", "E6"] {
        out.push(s.parse().expect("descriptor"));
    }
    out
}

/// Pairwise orthogonality straight from the Gram matrix.
fn orthogonal_exact(rs: &RootSystem, d0: &OrthogonalSubset) -> bool {
    let v = d0.to_vec();
    v.iter().all(|&i| v.iter().all(|&j| i == j || rs.gram()[i][j] == 0))
}

fn key_lemma(_: &mut Shared) -> Outcome {
    const SAMPLES: usize = 1000;
    let types = key_lemma_types();
    let mut not_orthogonal = 0;
    let mut quarter_violations = 0;
    let mut corrected_violations = 0;
    let mut errors = Vec::new();
    let mut worst: Option<(String, usize, f64)> = None;
    for (k, desc) in types.iter().enumerate() {
        let rs = RootSystem::build(*desc);
        let r = rs.rank() as f64;
        let mut rng = stream(SEED ^ 0x4b4c, k);
        for _ in 0..SAMPLES {
            let h = TorusElement::random(*desc, &mut rng);
            let theta = sigma(&rs, &h).expect("rank matches").value();
            if theta <= 0.0 {
                continue;
            }
            let sel = match key_lemma_select_torus(&rs, &h, theta) {
                Ok(s) => s,
                Err(e) => {
                    errors.push(format!("{desc}: {e}"));
                    continue;
                }
            };
            let s = sel.delta0.len() as f64;
            not_orthogonal += !orthogonal_exact(&rs, &sel.delta0) as usize;
            if s < r * theta / 4.0 {
                quarter_violations += 1;
                let gap = r * theta / 4.0 - s;
                if worst.as_ref().is_none_or(|w| gap > w.2) {
                    worst = Some((desc.to_string(), sel.delta0.len(), gap));
                }
            }
            corrected_violations += (s < r * theta / (2.0 * (2.0 * PI - theta))) as usize;
        }
    }
    let total = types.len() * SAMPLES;
    let pass = not_orthogonal == 0 && quarter_violations == 0 && errors.is_empty();
    let mut detail = format!(
        "{} types x {SAMPLES} elements: {not_orthogonal} non-orthogonal, {quarter_violations}/{total} below r*theta/4",
        types.len()
    );
    if let Some((d, s, gap)) = worst {
        detail.push_str(&format!(" (worst {d}: #Delta0 = {s}, short by {gap:.3})"));
    }
    detail.push_str(&format!(
        "; {corrected_violations} below r*theta/(2(2pi-theta)), the bound the counting argument supports{}",
        summarize(&errors)
    ));
    Outcome::new(pass, detail)
}

fn representation(_: &mut Shared) -> Outcome {
    let mut descs: Vec<RootSystemDescriptor> = descriptors_up_to_rank(4);
    descs.push("A5".parse().expect("descriptor"));
    descs.push("D5".parse().expect("descriptor"));
    let mut problems = Vec::new();
    let mut rows = 0;
    let mut singletons = 0;
    for desc in &descs {
        let rs = RootSystem::build(*desc);
        let (red, blue) = two_color(&rs.dynkin_graph()).expect("Dynkin diagrams are trees");
        for d0 in [red, blue].into_iter().filter(|c| !c.is_empty()) {
            rows += 1;
            let s = d0.len();
            let bound = translate_bound(rs.rank(), s);
            let constructive = spanning_translates(&rs, &d0, SpanMode::Constructive, DEFAULT_WEYL_CAP);
            let minimal = spanning_translates(&rs, &d0, SpanMode::Minimal, DEFAULT_WEYL_CAP);
            let (c, m) = match (constructive, minimal) {
                (Ok(c), Ok(m)) => (c.len(), m.len()),
                (c, m) => {
                    problems.push(format!("{desc} {d0}: {:?} / {:?}", c.err(), m.err()));
                    continue;
                }
            };
            if c as f64 > bound || m as f64 > bound || m > c {
                problems.push(format!("{desc} {d0}: constructive {c}, minimal {m}, bound {bound:.2}"));
            }
            if s == 1 {
                singletons += 1;
                if m != rs.rank() {
                    problems.push(format!("{desc} {d0}: s = 1 but minimal t = {m} != r = {}", rs.rank()));
                }
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!(
            "{} root systems, {rows} color classes ({singletons} with s = 1){}",
            descs.len(),
            summarize(&problems)
        ),
    )
}

/// Center orders of the simply connected groups.
fn classical_center_order(d: RootSystemDescriptor) -> usize {
    match (d.family(), d.rank()) {
        (Family::A, r) => r + 1,
        (Family::B, _) | (Family::C, _) => 2,
        (Family::D, _) => 4,
        (Family::E, 6) => 3,
        (Family::E, 7) => 2,
        _ => 1,
    }
}

fn sigma_suite(_: &mut Shared) -> Outcome {
    const PAIRS: usize = 10_000;
    let mut types = key_lemma_types();
    for s in ["E7", "E8"] {
        types.push(s.parse().expect("descriptor"));
    }
    let mut problems = Vec::new();
    let mut worst_excess = f64::NEG_INFINITY;
    for (k, desc) in types.iter().enumerate() {
        let rs = RootSystem::build(*desc);
        let mut rng = stream(SEED ^ 0x5349, k);
        let mut bad = BTreeSet::new();
        for _ in 0..PAIRS {
            let a = TorusElement::random(*desc, &mut rng);
            let b = TorusElement::random(*desc, &mut rng);
            let sa = sigma(&rs, &a).expect("rank").value();
            let sb = sigma(&rs, &b).expect("rank").value();
            let sab = sigma(&rs, &a.mul(&b)).expect("rank").value();
            if sigma(&rs, &a.inverse()).expect("rank").value() != sa {
                bad.insert("symmetry");
            }
            worst_excess = worst_excess.max(sab - sa - sb);
            if sab > sa + sb + 1e-12 {
                bad.insert("subadditivity");
            }
            if ![sa, sb, sab].iter().all(|v| (0.0..=PI).contains(v)) {
                bad.insert("range");
            }
        }
        let center = center_elements(&rs);
        if center.len() != classical_center_order(*desc) {
            bad.insert("center order");
        }
        if center.iter().any(|z| !sigma_over_pi_exact(&rs, z).is_zero()) {
            bad.insert("sigma on center");
        }
        // A non-central rational point must have positive σ.
        let half: Vec<Rational64> = (0..rs.rank()).map(|i| Rational64::new((i == 0) as i64, 3)).collect();
        if sigma_over_pi_exact(&rs, &half).is_zero() {
            bad.insert("sigma vanishes off the center");
        }
        if !bad.is_empty() {
            problems.push(format!("{desc}: {}", bad.into_iter().collect::<Vec<_>>().join(", ")));
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!(
            "{} types x {PAIRS} pairs, max sigma(ab) - sigma(a) - sigma(b) = {worst_excess:.3e}{}",
            types.len(),
            summarize(&problems)
        ),
    )
}

fn reflections(_: &mut Shared) -> Outcome {
    let mut rng = stream(SEED ^ 0x534f, 0);
    let mut problems = Vec::new();
    let mut worst = 0.0_f64;
    for k in 1..=5 {
        let angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.3..PI - 0.3)).collect();
        let r = block_rotation(&angles);
        match min_reflections(&r) {
            Ok(f) => {
                let err = (f.product(2 * k + 1) - &r).amax();
                worst = worst.max(err);
                if f.count != 2 * k || f.normals.len() != 2 * k || !(err <= 1e-8) {
                    problems.push(format!("k = {k}: {} reflections, error {err:e}", f.count));
                }
            }
            Err(e) => problems.push(format!("k = {k}: {e}")),
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("SO(2k+1), k = 1..5: 2k reflections each, max product error {worst:.2e}{}", summarize(&problems)),
    )
}

fn timed_width(g: &PermGroup) -> Result<(usize, bool, Duration), String> {
    let start = Instant::now();
    let table = CommutatorTable::new(g).map_err(|e| e.to_string())?;
    let order = g.order().map_err(|e| e.to_string())?;
    Ok((table.width(), table.derived_order() == order, start.elapsed()))
}

fn finite_oracles(_: &mut Shared) -> Outcome {
    let mut problems = Vec::new();
    let mut parts = Vec::new();
    for (name, g) in [("A5", PermGroup::alternating(5).expect("A5")), ("SL(2,5)", PermGroup::sl25())] {
        match timed_width(&g) {
            Ok((c, perfect, t)) => {
                parts.push(format!("c({name}) = {c} in {t:.2?}"));
                if c != 1 || !perfect || t >= Duration::from_secs(60) {
                    problems.push(format!("{name}: width {c}, perfect {perfect}, {t:.2?}"));
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let a5 = PermGroup::alternating(5).expect("A5");
    let product = ProductGroup::new(vec![a5.clone(), a5]).expect("product");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    match stalk_trials(&product, 100, &mut rng) {
        Ok(s) => {
            parts.push(format!("stalk {}/{} pass ({} with surjective projections)", s.passed, s.trials, s.premise_held));
            if s.passed != 100 || !s.counterexamples.is_empty() {
                problems.push(format!("counterexamples: {}", s.counterexamples.join(" | ")));
            }
        }
        Err(e) => problems.push(format!("stalk: {e}")),
    }
    Outcome::new(problems.is_empty(), format!("{}{}", parts.join(", "), summarize(&problems)))
}

/// Runs the `verify` subcommand on a file and returns its exit code.
fn cli_verify(path: &Path) -> i32 {
    let cli = Cli::parse_from(["conjwidth", "verify", path.to_str().expect("utf-8 path")]);
    match run(&cli, &mut Vec::new()) {
        Ok(()) => 0,
        Err(e) => e.code(),
    }
}

fn perturbed(cert: &ConjugacyCertificate, index: usize) -> ConjugacyCertificate {
    let mut out = cert.clone();
    let mut m = out.factors[index].conjugator.as_matrix().clone();
    m[(0, 0)] += Complex64::new(1e-3, 0.0);
    out.factors[index].conjugator = UnitaryMatrix::new_unchecked(m);
    out
}

fn round_trip(shared: &mut Shared) -> Outcome {
    if shared.certificates.is_empty() {
        return Outcome::new(false, "no certificates from criteria 1-2");
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("certificate.json");
    let mut problems = Vec::new();
    let mut perturbations = 0;
    let mut last_label = String::new();
    for (label, cert) in &shared.certificates {
        std::fs::write(&path, cert.to_json()).expect("write certificate");
        let code = cli_verify(&path);
        if code != 0 {
            problems.push(format!("{label}: verify exit {code}"));
        }
        let back = ConjugacyCertificate::from_json(&cert.to_json());
        if back.as_ref().ok() != Some(cert) {
            problems.push(format!("{label}: JSON round-trip changed the certificate"));
        }
        for i in 0..cert.count() {
            perturbations += 1;
            let bad = perturbed(cert, i);
            if bad.verify(1e-6).passed() {
                problems.push(format!("{label}: perturbing factor {i} still verifies"));
            }
        }
        // One perturbed file per campaign goes through the command itself.
        let campaign = label.split(" trial").next().unwrap_or_default().to_string();
        if campaign != last_label && cert.count() > 0 {
            std::fs::write(&path, perturbed(cert, cert.count() / 2).to_json()).expect("write certificate");
            let code = cli_verify(&path);
            if code != CliError::Verification(String::new()).code() {
                problems.push(format!("{label}: perturbed certificate gave exit {code}"));
            }
            last_label = campaign;
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!(
            "{} certificates verified, {perturbations} single-conjugator perturbations all rejected{}",
            shared.certificates.len(),
            summarize(&problems)
        ),
    )
}

fn summarize(problems: &[String]) -> String {
    match problems {
        [] => String::new(),
        [one] => format!("; {one}"),
        [first, rest @ ..] => format!("; {first} (+{} more)", rest.len()),
    }
}
