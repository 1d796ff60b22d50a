use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{OracleError, Perm};

/// Cap on the size of an enumerated element set.
pub const ELEMENT_CAP: usize = 1_000_000;
/// Cap on `|G|` for commutator searches (quadratic in `|G|` at worst).
pub const COMMUTATOR_CAP: usize = 10_000;
/// Cap on the order of each factor of a [`ProductGroup`].
pub const PRODUCT_FACTOR_CAP: usize = 360;
/// Largest degree for the symmetric and alternating constructors.
pub const MAX_NAMED_DEGREE: usize = 8;

#[derive(Debug, Clone)]
struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

/// A permutation group given by generators; the element set is enumerated
/// on first use.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: OnceLock<Result<Elements, OracleError>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, OracleError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(OracleError::DegreeMismatch { expected: degree, got: g.degree() });
        }
        Ok(Self {
            degree,
            generators,
            cap: ELEMENT_CAP,
            elements: OnceLock::new(),
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.elements = OnceLock::new();
        self
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    /// `C_n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::Parse("C0 is not a group".into()));
        }
        Self::new(n, vec![Perm::from_cycles(n, &[(0..n).collect()]).expect("valid cycle")])
    }

    pub fn symmetric(n: usize) -> Result<Self, OracleError> {
        check_named_degree('S', n)?;
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).expect("valid"));
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).expect("valid"));
        }
        Self::new(n, gens)
    }

    /// Generated by the 3-cycles `(1,2,k)`.
    pub fn alternating(n: usize) -> Result<Self, OracleError> {
        check_named_degree('A', n)?;
        let gens = (2..n)
            .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).expect("valid"))
            .collect();
        Self::new(n, gens)
    }

    /// `SL(2, 5)` acting on the 24 nonzero vectors of `F₅²`.
    pub fn sl25() -> Self {
        let vectors: Vec<(u8, u8)> = (0..5u8)
            .flat_map(|x| (0..5u8).map(move |y| (x, y)))
            .filter(|&v| v != (0, 0))
            .collect();
        let index = |v: (u8, u8)| vectors.iter().position(|&w| w == v).expect("nonzero vector");
        let act = |m: [[u8; 2]; 2]| {
            let images = vectors
                .iter()
                .map(|&(x, y)| {
                    let a = (m[0][0] * x + m[0][1] * y) % 5;
                    let b = (m[1][0] * x + m[1][1] * y) % 5;
                    index((a, b))
                })
                .collect();
            Perm::from_images(images).expect("invertible matrix")
        };
        Self::new(24, vec![act([[1, 1], [0, 1]]), act([[0, 4], [1, 0]])]).expect("degree 24")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn enumerate(&self) -> Result<&Elements, OracleError> {
        self.elements
            .get_or_init(|| closure(self.degree, &self.generators, self.cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// All elements, identity first, in breadth-first order.
    pub fn elements(&self) -> Result<&[Perm], OracleError> {
        Ok(&self.enumerate()?.list)
    }

    pub fn order(&self) -> Result<usize, OracleError> {
        Ok(self.enumerate()?.list.len())
    }

    pub fn index_of(&self, p: &Perm) -> Result<Option<usize>, OracleError> {
        Ok(self.enumerate()?.index.get(p).map(|&i| i as usize))
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, OracleError> {
        Ok(p.degree() == self.degree && self.index_of(p)?.is_some())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Subgroup generated by `generators` (same degree and cap).
    pub fn subgroup(&self, generators: Vec<Perm>) -> Result<Self, OracleError> {
        Ok(Self::new(self.degree, generators)?.with_cap(self.cap))
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &Self) -> Result<bool, OracleError> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_named_degree(family: char, n: usize) -> Result<(), OracleError> {
    if n == 0 || n > MAX_NAMED_DEGREE {
        return Err(OracleError::DegreeTooLarge { family, degree: n, max: MAX_NAMED_DEGREE });
    }
    Ok(())
}

fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Elements, OracleError> {
    let id = Perm::identity(degree);
    let mut list = vec![id.clone()];
    let mut index = HashMap::from([(id, 0u32)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in generators {
            let next = list[k].mul(g);
            if !index.contains_key(&next) {
                if list.len() >= cap {
                    return Err(OracleError::CapExceeded { what: "group order", limit: cap });
                }
                index.insert(next.clone(), list.len() as u32);
                queue.push_back(list.len());
                list.push(next);
            }
        }
    }
    Ok(Elements { list, index })
}

/// `G₁ × ⋯ × G_m` acting on the disjoint union of the factors' points.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    factors: Vec<PermGroup>,
    offsets: Vec<usize>,
    whole: PermGroup,
}

impl ProductGroup {
    pub fn new(factors: Vec<PermGroup>) -> Result<Self, OracleError> {
        for f in &factors {
            let order = f.order()?;
            if order > PRODUCT_FACTOR_CAP {
                return Err(OracleError::FactorTooLarge { order, cap: PRODUCT_FACTOR_CAP });
            }
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut degree = 0;
        for f in &factors {
            offsets.push(degree);
            degree += f.degree();
        }
        let identities: Vec<Perm> = factors.iter().map(|f| Perm::identity(f.degree())).collect();
        let mut gens = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for g in f.generators() {
                let mut parts = identities.clone();
                parts[i] = g.clone();
                gens.push(Perm::concat(&parts));
            }
        }
        let whole = PermGroup::new(degree, gens)?;
        Ok(Self { factors, offsets, whole })
    }

    pub fn factors(&self) -> &[PermGroup] {
        &self.factors
    }

    pub fn as_group(&self) -> &PermGroup {
        &self.whole
    }

    /// The `i`-th coordinate of an element.
    pub fn project(&self, p: &Perm, i: usize) -> Perm {
        p.restrict(self.offsets[i], self.factors[i].degree())
    }

    /// `(g₁, …, g_m)`.
    pub fn tuple(&self, parts: &[Perm]) -> Perm {
        Perm::concat(parts)
    }

    /// Image of a subgroup under the `i`-th projection.
    pub fn projection(&self, n: &PermGroup, i: usize) -> Result<PermGroup, OracleError> {
        let gens = n.generators().iter().map(|g| self.project(g, i)).collect();
        self.factors[i].subgroup(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        assert_eq!(PermGroup::cyclic(6).unwrap().order().unwrap(), 6);
        assert_eq!(PermGroup::symmetric(4).unwrap().order().unwrap(), 24);
        assert_eq!(PermGroup::alternating(5).unwrap().order().unwrap(), 60);
        assert_eq!(PermGroup::alternating(4).unwrap().order().unwrap(), 12);
        assert_eq!(PermGroup::symmetric(1).unwrap().order().unwrap(), 1);
        assert_eq!(PermGroup::sl25().order().unwrap(), 120);
        assert!(PermGroup::alternating(9).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = PermGroup::symmetric(5).unwrap().with_cap(100);
        assert!(matches!(g.order(), Err(OracleError::CapExceeded { .. })));
    }

    #[test]
    fn product_projections() {
        let a5 = PermGroup::alternating(5).unwrap();
        let p = ProductGroup::new(vec![a5.clone(), a5.clone()]).unwrap();
        assert_eq!(p.as_group().order().unwrap(), 3600);
        let x = p.as_group().elements().unwrap()[77].clone();
        let y = p.as_group().elements().unwrap()[1234].clone();
        // Projections are homomorphisms.
        for i in 0..2 {
            assert_eq!(p.project(&x.mul(&y), i), p.project(&x, i).mul(&p.project(&y, i)));
            assert!(a5.contains(&p.project(&x, i)).unwrap());
        }
        assert!(ProductGroup::new(vec![PermGroup::symmetric(6).unwrap()]).is_err());
    }
}
