use std::io::Write;

use conjwidth::oracles::{
    parse_factors, parse_group, parse_perm, parse_product, perfect_product_check, stalk_trials, CommutatorLength,
    CommutatorTable, OracleError,
};
use conjwidth::rootsys::{spanning_translates, translate_bound, two_color, RootSystem, RootSystemError, SpanMode};
use conjwidth::sunpipe::to_precise_json;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{GlobalOpts, OracleCommand};
use crate::CliError;

fn root_err(e: RootSystemError) -> CliError {
    match e {
        RootSystemError::Parse(_) | RootSystemError::Inadmissible { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Precondition(e.to_string()),
    }
}

fn oracle_err(e: OracleError) -> CliError {
    match e {
        OracleError::Parse(_) | OracleError::DegreeTooLarge { .. } | OracleError::DegreeMismatch { .. } => {
            CliError::Usage(e.to_string())
        }
        _ => CliError::Precondition(e.to_string()),
    }
}

#[derive(Debug, Serialize)]
struct ClassRow {
    /// 1-based simple roots.
    class: Vec<usize>,
    s: usize,
    constructive: usize,
    minimal: Option<usize>,
    bound: f64,
}

#[derive(Debug, Serialize)]
struct RootInfo {
    descriptor: String,
    rank: usize,
    weyl_order: u128,
    center_order: usize,
    cartan: Vec<Vec<i64>>,
    classes: Vec<ClassRow>,
}

pub fn cmd_rootinfo(descriptor: &str, minimal: bool, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    let rs = RootSystem::from_descriptor_str(descriptor).map_err(root_err)?;
    let desc = rs.descriptor();
    let (red, blue) = two_color(&rs.dynkin_graph()).map_err(root_err)?;
    let mut classes = Vec::new();
    for class in [red, blue].into_iter().filter(|c| !c.is_empty()) {
        let constructive = spanning_translates(&rs, &class, SpanMode::Constructive, global.weyl_cap).map_err(root_err)?;
        let min = if minimal {
            Some(spanning_translates(&rs, &class, SpanMode::Minimal, global.weyl_cap).map_err(root_err)?.len())
        } else {
            None
        };
        classes.push(ClassRow {
            class: class.indices().map(|i| i + 1).collect(),
            s: class.len(),
            constructive: constructive.len(),
            minimal: min,
            bound: translate_bound(rs.rank(), class.len()),
        });
    }
    let info = RootInfo {
        descriptor: desc.to_string(),
        rank: rs.rank(),
        weyl_order: desc.weyl_order(),
        center_order: desc.center_order(),
        cartan: rs.cartan().to_vec(),
        classes,
    };
    if global.json {
        writeln!(out, "{}", to_precise_json(&info))?;
        return Ok(());
    }
    writeln!(out, "{}  rank {}  |W| = {}  |Z| = {}", info.descriptor, info.rank, info.weyl_order, info.center_order)?;
    writeln!(out, "Cartan matrix:")?;
    for row in &info.cartan {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        writeln!(out, "  {}", cells.join(""))?;
    }
    for (name, row) in ["red", "blue"].iter().zip(&info.classes) {
        let list: Vec<String> = row.class.iter().map(usize::to_string).collect();
        write!(
            out,
            "{name:<5} {{{}}}  s = {}  t = {}",
            list.join(","),
            row.s,
            row.constructive
        )?;
        if let Some(m) = row.minimal {
            write!(out, "  minimal t = {m}")?;
        }
        writeln!(out, "  2r/s+3 = {}", row.bound)?;
    }
    Ok(())
}

pub fn cmd_oracles(cmd: &OracleCommand, global: &GlobalOpts, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        OracleCommand::Clen { group, element } => {
            let g = parse_group(group).map_err(oracle_err)?;
            let table = CommutatorTable::new(&g).map_err(oracle_err)?;
            if let Some(word) = element {
                let x = parse_perm(g.degree(), word).map_err(oracle_err)?;
                let len = table.length(&x).map_err(oracle_err)?;
                if global.json {
                    writeln!(out, "{}", serde_json::json!({ "element": x.to_string(), "length": len.to_string() }))?;
                } else {
                    writeln!(out, "cl({x}) = {len}")?;
                }
                return Ok(());
            }
            let order = g.order().map_err(oracle_err)?;
            let derived = table.derived_order();
            let infinite = table
                .elements()
                .iter()
                .filter(|x| matches!(table.length(x), Ok(CommutatorLength::Infinite)))
                .count();
            let width = (derived == order).then(|| table.width());
            if global.json {
                let doc = serde_json::json!({
                    "group": group,
                    "order": order,
                    "derived_order": derived,
                    "commutators": table.commutator_count(),
                    "perfect": width.is_some(),
                    "width": width,
                    "infinite": infinite,
                });
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "|G| = {order}  |G'| = {derived}  commutators = {}", table.commutator_count())?;
                match width {
                    Some(c) => writeln!(out, "c(G) = {c}")?,
                    None => writeln!(
                        out,
                        "not perfect: {infinite} elements have infinite commutator length; width of G' = {}",
                        table.width()
                    )?,
                }
            }
            Ok(())
        }
        OracleCommand::Perfect { factors, samples } => {
            let mut groups = Vec::new();
            for f in factors {
                groups.extend(parse_factors(f).map_err(oracle_err)?);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
            let v = perfect_product_check(&groups, *samples, &mut rng).map_err(oracle_err)?;
            if global.json {
                writeln!(out, "{}", to_precise_json(&v))?;
            } else if let Some(b) = v.bound {
                writeln!(out, "perfect: yes  c <= {b}  ({}/{} sampled elements confirmed)", v.verified, v.sampled)?;
            } else {
                writeln!(out, "perfect: no")?;
            }
            if v.verified < v.sampled {
                return Err(CliError::Verification(format!(
                    "only {}/{} sampled elements were products of {} commutators",
                    v.verified,
                    v.sampled,
                    v.bound.unwrap_or(0)
                )));
            }
            Ok(())
        }
        OracleCommand::Stalk { group, trials } => {
            let g = parse_product(group).map_err(oracle_err)?;
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
            let s = stalk_trials(&g, *trials, &mut rng).map_err(oracle_err)?;
            if global.json {
                writeln!(out, "{}", to_precise_json(&s))?;
            } else {
                writeln!(out, "{}/{} pass ({} with surjective projections)", s.passed, s.trials, s.premise_held)?;
                for c in &s.counterexamples {
                    writeln!(out, "  counterexample: {c}")?;
                }
            }
            if s.counterexamples.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("{} counterexamples", s.counterexamples.len())))
            }
        }
    }
}
