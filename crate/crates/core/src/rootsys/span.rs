//! Weyl translates of an orthogonal set of simple roots that together span `V`.

use std::collections::{HashSet, VecDeque};

use super::weyl::{enumerate_weyl, WeylElement};
use super::{exact, Family, OrthogonalSubset, RootSystem, RootSystemError};

/// Upper limit on distinct images of `Δ₀` explored by the constructive search.
const ORBIT_STATE_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanMode {
    /// Greedy rank-increasing search; never enumerates the whole Weyl group.
    Constructive,
    /// Shortest list, by exhaustive search over the orbit of `Δ₀`.
    Minimal,
}

/// `2r/s + 3`, the guaranteed upper bound on the number of translates.
pub fn translate_bound(rank: usize, s: usize) -> f64 {
    2.0 * rank as f64 / s as f64 + 3.0
}

/// Finds `w₁, …, w_t` with `w₁(Δ₀) ∪ ⋯ ∪ w_t(Δ₀)` spanning `V`.
pub fn spanning_translates(
    rs: &RootSystem,
    d0: &OrthogonalSubset,
    mode: SpanMode,
    weyl_cap: usize,
) -> Result<Vec<WeylElement>, RootSystemError> {
    if d0.is_empty() {
        return Err(RootSystemError::EmptySubset);
    }
    if !d0.is_pairwise_orthogonal(rs.cartan()) {
        let v = d0.to_vec();
        return Err(RootSystemError::NotOrthogonal(v[0], v[1]));
    }
    let constructive = constructive_translates(rs, d0)?;
    match mode {
        SpanMode::Constructive => Ok(constructive),
        SpanMode::Minimal => minimal_translates(rs, d0, constructive.len(), weyl_cap),
    }
}

/// Whether the translates of `d0` under `ws` span `V` (exact rank).
pub fn translates_span(rs: &RootSystem, d0: &OrthogonalSubset, ws: &[WeylElement]) -> bool {
    let rows: Vec<Vec<i64>> = ws
        .iter()
        .flat_map(|w| d0.indices().map(move |i| w.apply(&rs.simple_root(i))))
        .collect();
    exact::rank(&rows) == rs.rank()
}

fn images(rs: &RootSystem, d0: &OrthogonalSubset, w: &WeylElement) -> Vec<Vec<i64>> {
    d0.indices().map(|i| w.apply(&rs.simple_root(i))).collect()
}

/// Orbit key: the set of lines spanned by the image roots.
fn line_key(vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut lines: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| {
            let neg = v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
            if neg {
                v.iter().map(|c| -c).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    lines.sort();
    lines
}

fn rank_with(base: &[Vec<i64>], extra: &[Vec<i64>]) -> usize {
    let mut rows = base.to_vec();
    rows.extend_from_slice(extra);
    exact::rank(&rows)
}

fn constructive_translates(
    rs: &RootSystem,
    d0: &OrthogonalSubset,
) -> Result<Vec<WeylElement>, RootSystemError> {
    let r = rs.rank();
    let s = d0.len();

    // Candidate translates: type-A sliding windows first, then the orbit of Δ₀
    // in breadth-first order (identity first).
    let mut candidates: Vec<(Vec<Vec<i64>>, Vec<usize>)> = Vec::new();
    if rs.descriptor().family() == Family::A {
        for w in type_a_windows(rs, d0) {
            candidates.push((images(rs, d0, &w), w.word()));
        }
    }
    let start: Vec<Vec<i64>> = d0.indices().map(|i| rs.simple_root(i)).collect();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    seen.insert(line_key(&start));
    let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
    while let Some((imgs, word)) = queue.pop_front() {
        for i in 0..r {
            let next: Vec<Vec<i64>> = imgs.iter().map(|v| rs.reflect(i, v)).collect();
            if seen.len() < ORBIT_STATE_CAP && seen.insert(line_key(&next)) {
                let mut next_word = Vec::with_capacity(word.len() + 1);
                next_word.push(i);
                next_word.extend_from_slice(&word);
                queue.push_back((next, next_word));
            }
        }
        candidates.push((imgs, word));
    }

    let mut span: Vec<Vec<i64>> = Vec::new();
    let mut current = 0;
    let mut chosen = Vec::new();
    while current < r {
        let mut best: Option<(usize, usize)> = None;
        for (k, (imgs, _)) in candidates.iter().enumerate() {
            let gain = rank_with(&span, imgs) - current;
            if gain > best.map_or(0, |(_, g)| g) {
                best = Some((k, gain));
                if gain == s {
                    break;
                }
            }
        }
        let Some((k, gain)) = best else {
            return Err(RootSystemError::SpanSearchFailed {
                descriptor: rs.descriptor().to_string(),
                subset: d0.to_string(),
            });
        };
        span.extend(candidates[k].0.iter().cloned());
        current += gain;
        chosen.push(WeylElement::from_word(rs, &candidates[k].1));
    }
    Ok(chosen)
}

/// Weyl elements of `A_r` carrying `Δ₀ = {δ_{i₁}, …, δ_{i_s}}` onto windows
/// `{δ_k, δ_{k+2}, …, δ_{k+2s−2}}`; the windows together cover every simple root.
pub fn type_a_windows(rs: &RootSystem, d0: &OrthogonalSubset) -> Vec<WeylElement> {
    let r = rs.rank();
    let s = d0.len();
    let points = r + 1;
    if s == 0 || 2 * s > points {
        return Vec::new();
    }
    let kmax = points - 2 * s;
    let mut starts = Vec::new();
    let mut base = 0;
    loop {
        for k in [base, base + 1] {
            let k = k.min(kmax);
            if !starts.contains(&k) {
                starts.push(k);
            }
        }
        // Window pair at `base` covers roots base..base+2s-1.
        if base + 2 * s >= r {
            break;
        }
        base += 2 * s;
    }
    let src = d0.to_vec();
    starts
        .into_iter()
        .map(|k| {
            // π sends the transposition (iₘ, iₘ+1) to (k+2m, k+2m+1).
            let mut perm = vec![usize::MAX; points];
            let mut used = vec![false; points];
            for (m, &i) in src.iter().enumerate() {
                perm[i] = k + 2 * m;
                perm[i + 1] = k + 2 * m + 1;
                used[k + 2 * m] = true;
                used[k + 2 * m + 1] = true;
            }
            let mut free = (0..points).filter(|&p| !used[p]);
            for p in perm.iter_mut() {
                if *p == usize::MAX {
                    *p = free.next().unwrap();
                }
            }
            WeylElement::from_word(rs, &permutation_word(&perm))
        })
        .collect()
}

/// Word in the simple transpositions `sᵢ = (i, i+1)` for the permutation
/// `x ↦ perm[x]` of `{0, …, n−1}`.
pub fn permutation_word(perm: &[usize]) -> Vec<usize> {
    // Bubble-sort by right multiplication: π·s_{k₁}⋯s_{k_m} = id, so
    // π = s_{k_m}⋯s_{k₁}.
    let mut p = perm.to_vec();
    let mut swaps = Vec::new();
    let n = p.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(1 + pass) {
            if p[k] > p[k + 1] {
                p.swap(k, k + 1);
                swaps.push(k);
            }
        }
    }
    swaps.reverse();
    swaps
}

fn minimal_translates(
    rs: &RootSystem,
    d0: &OrthogonalSubset,
    upper: usize,
    weyl_cap: usize,
) -> Result<Vec<WeylElement>, RootSystemError> {
    let r = rs.rank();
    let s = d0.len();
    let weyl = enumerate_weyl(rs, weyl_cap)?;

    // Distinct images of Δ₀; the first translate may be taken to be the
    // identity because applying w₁⁻¹ to a spanning family keeps it spanning.
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut orbit: Vec<(Vec<Vec<i64>>, usize)> = Vec::new();
    for (k, w) in weyl.iter().enumerate() {
        let imgs = images(rs, d0, w);
        if seen.insert(line_key(&imgs)) {
            orbit.push((imgs, k));
        }
    }

    struct Search<'a> {
        orbit: &'a [(Vec<Vec<i64>>, usize)],
        r: usize,
        s: usize,
    }
    impl Search<'_> {
        fn dfs(&self, rows: &mut Vec<Vec<i64>>, rank: usize, from: usize, left: usize, picked: &mut Vec<usize>) -> bool {
            if rank == self.r {
                return true;
            }
            if left == 0 || rank + self.s * left < self.r {
                return false;
            }
            for k in from..self.orbit.len() {
                let imgs = &self.orbit[k].0;
                let new_rank = rank_with(rows, imgs);
                if new_rank == rank || new_rank + self.s * (left - 1) < self.r {
                    continue;
                }
                let len = rows.len();
                rows.extend(imgs.iter().cloned());
                picked.push(k);
                if self.dfs(rows, new_rank, k + 1, left - 1, picked) {
                    return true;
                }
                picked.pop();
                rows.truncate(len);
            }
            false
        }
    }

    let search = Search { orbit: &orbit, r, s };
    let lower = r.div_ceil(s).max(1);
    for t in lower..=upper {
        let mut rows = orbit[0].0.clone();
        let mut picked = vec![0];
        let rank = exact::rank(&rows);
        if search.dfs(&mut rows, rank, 1, t - 1, &mut picked) {
            return Ok(picked.into_iter().map(|k| weyl[orbit[k].1].clone()).collect());
        }
    }
    Err(RootSystemError::SpanSearchFailed {
        descriptor: rs.descriptor().to_string(),
        subset: d0.to_string(),
    })
}
