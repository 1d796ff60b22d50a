//! Group notation: `A5`, `S4`, `C6`, `SL25`, `gens:(1,2,3);(1,2)`,
//! and products joined by `x`, e.g. `A5xA5`.

use super::{OracleError, Perm, PermGroup, ProductGroup};

/// Parses a product description into its factors.
pub fn parse_factors(text: &str) -> Result<Vec<PermGroup>, OracleError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(OracleError::Parse("empty group description".into()));
    }
    if text.starts_with("gens:") {
        return Ok(vec![parse_single(text)?]);
    }
    text.split(['x', 'X']).map(parse_single).collect()
}

/// A single factor, or the product group for `AxB…`.
pub fn parse_group(text: &str) -> Result<PermGroup, OracleError> {
    let mut factors = parse_factors(text)?;
    if factors.len() == 1 {
        return Ok(factors.pop().expect("one factor"));
    }
    Ok(ProductGroup::new(factors)?.as_group().clone())
}

pub fn parse_product(text: &str) -> Result<ProductGroup, OracleError> {
    ProductGroup::new(parse_factors(text)?)
}

fn parse_single(text: &str) -> Result<PermGroup, OracleError> {
    let s = text.trim();
    if let Some(body) = s.strip_prefix("gens:") {
        return parse_generators(body);
    }
    if s.eq_ignore_ascii_case("SL25") || s.eq_ignore_ascii_case("SL(2,5)") {
        return Ok(PermGroup::sl25());
    }
    let mut chars = s.chars();
    let family = chars.next().map(|c| c.to_ascii_uppercase());
    let degree: usize = chars
        .as_str()
        .parse()
        .map_err(|_| OracleError::Parse(format!("unrecognized group '{s}'")))?;
    match family {
        Some('A') => PermGroup::alternating(degree),
        Some('S') => PermGroup::symmetric(degree),
        Some('C') => PermGroup::cyclic(degree),
        _ => Err(OracleError::Parse(format!("unrecognized group '{s}'"))),
    }
}

/// Points of each cycle in a word such as `(1,2,3)(4,5)`, made 0-based.
fn parse_cycles(word: &str) -> Result<Vec<Vec<usize>>, OracleError> {
    let mut cycles = Vec::new();
    let mut rest = word.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| OracleError::Parse(format!("malformed cycle in '{word}'")))?;
        let points = if inner.0.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .0
                .split(',')
                .map(|p| match p.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(OracleError::Parse(format!("bad point '{p}' in '{word}'"))),
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        cycles.push(points);
        rest = inner.1.trim_start();
    }
    Ok(cycles)
}

/// A permutation of `degree` points in 1-based cycle notation; `()` is the identity.
pub fn parse_perm(degree: usize, word: &str) -> Result<Perm, OracleError> {
    let cycles = parse_cycles(word)?;
    let top = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
    if top > degree {
        return Err(OracleError::DegreeMismatch { expected: degree, got: top });
    }
    Perm::from_cycles(degree, &cycles).ok_or_else(|| OracleError::Parse("cycle repeats a point".into()))
}

/// `;`-separated generators, each a product of 1-based cycles.
fn parse_generators(body: &str) -> Result<PermGroup, OracleError> {
    let gens_cycles = body
        .split(';')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(parse_cycles)
        .collect::<Result<Vec<_>, _>>()?;
    if gens_cycles.is_empty() {
        return Err(OracleError::Parse("no generators given".into()));
    }
    let degree = gens_cycles.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(0).max(1);
    let gens = gens_cycles
        .iter()
        .map(|cycles| {
            Perm::from_cycles(degree, cycles)
                .ok_or_else(|| OracleError::Parse("cycle repeats a point".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_generated() {
        assert_eq!(parse_group("A5").unwrap().order().unwrap(), 60);
        assert_eq!(parse_group("s4").unwrap().order().unwrap(), 24);
        assert_eq!(parse_group("C6").unwrap().order().unwrap(), 6);
        assert_eq!(parse_group("SL25").unwrap().order().unwrap(), 120);
        assert_eq!(parse_group("gens:(1,2,3);(1,2)").unwrap().order().unwrap(), 6);
        assert_eq!(parse_group("gens:(1,2)(3,4)").unwrap().degree(), 4);
        assert_eq!(parse_group("A5xA5").unwrap().order().unwrap(), 3600);
        assert_eq!(parse_product("A5xC2").unwrap().factors().len(), 2);
    }

    #[test]
    fn single_permutations() {
        let p = parse_perm(5, "(1,2,3)(4,5)").unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert!(parse_perm(5, "()").unwrap().is_identity());
        assert!(parse_perm(3, "(1,4)").is_err());
        assert!(parse_perm(3, "(1,2").is_err());
    }

    #[test]
    fn errors() {
        for bad in ["", "B5", "A", "gens:", "gens:(1,2", "gens:(0,1)", "gens:(1,1)", "A12"] {
            assert!(parse_group(bad).is_err(), "{bad}");
        }
    }
}
