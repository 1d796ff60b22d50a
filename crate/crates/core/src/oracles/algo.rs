use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::group::COMMUTATOR_CAP;
use super::{OracleError, Perm, PermGroup, ProductGroup};

/// Smallest normal subgroup of `g` containing `s`: close under conjugation
/// by the generators of `g` until nothing new appears.
pub fn normal_closure(g: &PermGroup, s: &[Perm]) -> Result<PermGroup, OracleError> {
    for x in s {
        if !g.contains(x)? {
            return Err(OracleError::NotSubgroup(x.to_string()));
        }
    }
    let mut gens: Vec<Perm> = Vec::new();
    for x in s {
        if !x.is_identity() && !gens.contains(x) {
            gens.push(x.clone());
        }
    }
    let mut h = g.subgroup(gens.clone())?;
    loop {
        let mut fresh = None;
        'search: for x in h.generators() {
            for c in g.generators() {
                let y = x.conjugate(c);
                if !h.contains(&y)? {
                    fresh = Some(y);
                    break 'search;
                }
            }
        }
        match fresh {
            Some(y) => {
                gens.push(y);
                h = g.subgroup(gens.clone())?;
            }
            None => return Ok(h),
        }
    }
}

/// Whether `n ≤ g` is normal (generator conjugates suffice).
pub fn is_normal(g: &PermGroup, n: &PermGroup) -> Result<bool, OracleError> {
    for x in n.generators() {
        for c in g.generators() {
            if !n.contains(&x.conjugate(c))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[G, G]`, the normal closure of the commutators of generators.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup, OracleError> {
    let gens = g.generators();
    let comms: Vec<Perm> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| a.commutator(b)))
        .collect();
    normal_closure(g, &comms)
}

pub fn is_perfect(g: &PermGroup) -> Result<bool, OracleError> {
    Ok(derived_subgroup(g)?.order()? == g.order()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CommutatorLength {
    Finite(usize),
    /// Not in the derived subgroup.
    Infinite,
}

impl fmt::Display for CommutatorLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorLength::Finite(n) => write!(f, "{n}"),
            CommutatorLength::Infinite => write!(f, "infinity"),
        }
    }
}

/// Commutator lengths of every element of a group, by breadth-first search
/// over right multiplication by the commutator set.
#[derive(Debug, Clone)]
pub struct CommutatorTable {
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `(a, b)` with `[a, b]` the k-th distinct commutator.
    commutators: Vec<(Perm, Perm)>,
    lengths: Vec<Option<usize>>,
    /// `(predecessor, commutator index)` on a shortest path from the identity.
    parent: Vec<Option<(usize, usize)>>,
}

impl CommutatorTable {
    pub fn new(g: &PermGroup) -> Result<Self, OracleError> {
        let order = g.order()?;
        if order > COMMUTATOR_CAP {
            return Err(OracleError::CapExceeded { what: "group order for commutator search", limit: COMMUTATOR_CAP });
        }
        let elements = g.elements()?.to_vec();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let commutators = commutator_set(g, &elements, &index);
        let values: Vec<Perm> = commutators.iter().map(|(a, b)| a.commutator(b)).collect();

        let mut lengths = vec![None; order];
        let mut parent = vec![None; order];
        lengths[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let d = lengths[u].expect("queued elements have lengths");
            for (k, c) in values.iter().enumerate() {
                let v = index[&elements[u].mul(c)];
                if lengths[v].is_none() {
                    lengths[v] = Some(d + 1);
                    parent[v] = Some((u, k));
                    queue.push_back(v);
                }
            }
        }
        Ok(Self { elements, index, commutators, lengths, parent })
    }

    pub fn length(&self, x: &Perm) -> Result<CommutatorLength, OracleError> {
        let i = *self
            .index
            .get(x)
            .ok_or_else(|| OracleError::NotSubgroup(x.to_string()))?;
        Ok(self.lengths[i].map_or(CommutatorLength::Infinite, CommutatorLength::Finite))
    }

    /// Largest finite commutator length: `c(G)` when `G` is perfect.
    pub fn width(&self) -> usize {
        self.lengths.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Number of elements of the derived subgroup.
    pub fn derived_order(&self) -> usize {
        self.lengths.iter().filter(|l| l.is_some()).count()
    }

    pub fn commutator_count(&self) -> usize {
        self.commutators.len()
    }

    /// Pairs `(aᵢ, bᵢ)` with `x = [a₁,b₁]⋯[a_k,b_k]`, `k` minimal.
    pub fn word(&self, x: &Perm) -> Option<Vec<(Perm, Perm)>> {
        let mut i = *self.index.get(x)?;
        self.lengths[i]?;
        let mut out = Vec::new();
        while let Some((prev, k)) = self.parent[i] {
            out.push(self.commutators[k].clone());
            i = prev;
        }
        out.reverse();
        Some(out)
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
}

/// Distinct commutators `[a, b] = a⁻¹·a^b`, with a witnessing pair each.
/// For `a = r^x` in the class of `r` and `c = r^{y}`, `a^{x⁻¹y} = c`.
fn commutator_set(g: &PermGroup, elements: &[Perm], index: &HashMap<Perm, usize>) -> Vec<(Perm, Perm)> {
    let n = elements.len();
    let mut class_of = vec![usize::MAX; n];
    // Per class: members with conjugators from the representative.
    let mut classes: Vec<Vec<(usize, Perm)>> = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![(start, Perm::identity(g.degree()))];
        class_of[start] = id;
        let mut q = 0;
        while q < members.len() {
            let (m, ref x) = members[q];
            let x = x.clone();
            for c in g.generators() {
                let y = elements[m].conjugate(c);
                let j = index[&y];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push((j, x.mul(c)));
                }
            }
            q += 1;
        }
        classes.push(members);
    }
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for members in &classes {
        for (a_idx, x) in members {
            let a = &elements[*a_idx];
            let x_inv = x.inverse();
            for (c_idx, y) in members {
                let comm = a.inverse().mul(&elements[*c_idx]);
                if seen.insert(comm) {
                    out.push((a.clone(), x_inv.mul(y)));
                }
            }
        }
    }
    out
}

/// Commutator length of one element.
pub fn commutator_length(g: &PermGroup, x: &Perm) -> Result<CommutatorLength, OracleError> {
    CommutatorTable::new(g)?.length(x)
}

/// Result of checking "surjective projections ⇒ contains `[G, G]`" for a
/// normal subgroup `N` of a finite product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalkVerdict {
    pub surjective: Vec<bool>,
    pub premise: bool,
    pub contains_derived: bool,
    pub holds: bool,
    /// A generator of `[G, G]` outside `N`, when the implication fails.
    pub counterexample: Option<String>,
}

pub fn stalk_detection_check(g: &ProductGroup, n: &PermGroup) -> Result<StalkVerdict, OracleError> {
    let whole = g.as_group();
    if !whole.contains_group(n)? {
        return Err(OracleError::NotSubgroup("N is not contained in G".into()));
    }
    if !is_normal(whole, n)? {
        return Err(OracleError::NotNormal);
    }
    let mut surjective = Vec::with_capacity(g.factors().len());
    for (i, f) in g.factors().iter().enumerate() {
        surjective.push(g.projection(n, i)?.order()? == f.order()?);
    }
    let premise = surjective.iter().all(|&s| s);
    let derived = derived_subgroup(whole)?;
    let mut counterexample = None;
    for x in derived.generators() {
        if !n.contains(x)? {
            counterexample = Some(x.to_string());
            break;
        }
    }
    let contains_derived = counterexample.is_none();
    Ok(StalkVerdict {
        surjective,
        premise,
        contains_derived,
        holds: !premise || contains_derived,
        counterexample: if premise { counterexample } else { None },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalkSummary {
    pub trials: usize,
    pub premise_held: usize,
    pub passed: usize,
    pub counterexamples: Vec<String>,
}

/// Seeded instances: `N` is the normal closure of one or two random
/// elements, some of them supported on a single factor.
pub fn stalk_trials<R: Rng + ?Sized>(g: &ProductGroup, trials: usize, rng: &mut R) -> Result<StalkSummary, OracleError> {
    let elements = g.as_group().elements()?;
    let m = g.factors().len();
    let mut summary = StalkSummary { trials, premise_held: 0, passed: 0, counterexamples: Vec::new() };
    for _ in 0..trials {
        let k = rng.random_range(1..=2);
        let mut s = Vec::with_capacity(k);
        for _ in 0..k {
            let mut x = elements[rng.random_range(0..elements.len())].clone();
            if m > 1 && rng.random_range(0..3) == 0 {
                // Keep a single coordinate.
                let keep = rng.random_range(0..m);
                let parts: Vec<Perm> = (0..m)
                    .map(|i| if i == keep { g.project(&x, i) } else { Perm::identity(g.factors()[i].degree()) })
                    .collect();
                x = g.tuple(&parts);
            }
            s.push(x);
        }
        let n = normal_closure(g.as_group(), &s)?;
        let v = stalk_detection_check(g, &n)?;
        summary.premise_held += v.premise as usize;
        if v.holds {
            summary.passed += 1;
        } else if let Some(c) = v.counterexample {
            summary.counterexamples.push(c);
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectProductVerdict {
    pub perfect: bool,
    /// `max c(Gᵢ)`, when every factor is perfect.
    pub bound: Option<usize>,
    pub sampled: usize,
    /// Sampled product elements confirmed as products of `bound` commutators.
    pub verified: usize,
}

/// The product is perfect iff every factor is; then every element of the
/// product is a product of `max c(Gᵢ)` commutators, built coordinatewise
/// and checked on `samples` random elements.
pub fn perfect_product_check<R: Rng + ?Sized>(
    factors: &[PermGroup],
    samples: usize,
    rng: &mut R,
) -> Result<PerfectProductVerdict, OracleError> {
    let mut perfect = true;
    for f in factors {
        perfect &= is_perfect(f)?;
    }
    if !perfect {
        return Ok(PerfectProductVerdict { perfect, bound: None, sampled: 0, verified: 0 });
    }
    let tables = factors.iter().map(CommutatorTable::new).collect::<Result<Vec<_>, _>>()?;
    let bound = tables.iter().map(CommutatorTable::width).max().unwrap_or(0);
    let mut verified = 0;
    for _ in 0..samples {
        let parts: Vec<Perm> = tables
            .iter()
            .map(|t| t.elements()[rng.random_range(0..t.elements().len())].clone())
            .collect();
        let target = Perm::concat(&parts);
        let words: Vec<Vec<(Perm, Perm)>> = tables
            .iter()
            .zip(&parts)
            .map(|(t, x)| t.word(x).expect("perfect group"))
            .collect();
        let mut acc = Perm::identity(target.degree());
        for k in 0..bound {
            let pick = |j: usize, first: bool| -> Perm {
                words[j].get(k).map_or_else(
                    || Perm::identity(factors[j].degree()),
                    |(a, b)| if first { a.clone() } else { b.clone() },
                )
            };
            let a = Perm::concat(&(0..factors.len()).map(|j| pick(j, true)).collect::<Vec<_>>());
            let b = Perm::concat(&(0..factors.len()).map(|j| pick(j, false)).collect::<Vec<_>>());
            acc = acc.mul(&a.commutator(&b));
        }
        verified += (acc == target) as usize;
    }
    Ok(PerfectProductVerdict { perfect, bound: Some(bound), sampled: samples, verified })
}
