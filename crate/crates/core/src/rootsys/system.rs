use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::exact;
use super::RootSystemError;

/// Cartan–Killing family of an irreducible reduced root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A (family, rank) pair naming an irreducible root system, e.g. `D5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemDescriptor {
    family: Family,
    rank: usize,
}

impl RootSystemDescriptor {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::Inadmissible {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of roots, from the classical tables.
    pub fn root_count(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1),
            Family::B | Family::C => 2 * r * r,
            Family::D => 2 * r * (r - 1),
            Family::E => match r {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the Weyl group, from the classical tables.
    pub fn weyl_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => (1u128 << r) * fact(r),
            Family::D => (1u128 << (r - 1)) * fact(r),
            Family::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Order of the center of the simply connected compact group of this type.
    pub fn center_order(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => match self.rank {
                6 => 3,
                7 => 2,
                _ => 1,
            },
            Family::F | Family::G => 1,
        }
    }
}

impl fmt::Display for RootSystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemDescriptor {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = || RootSystemError::Parse(s.to_string());
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank = digits.parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

/// An irreducible root system with its simple roots fixed.
///
/// Vectors of `V` are stored in coordinates with respect to the simple roots,
/// so the simple root `δᵢ` is the unit vector `eᵢ` and every root has integer
/// coordinates. The invariant inner product is the integer Gram matrix
/// `gram[i][j] = (δᵢ, δⱼ)` (scaled so all entries are integers), and
/// `cartan[i][j] = ⟨δⱼ, δᵢ^∨⟩ = 2 (δᵢ, δⱼ) / (δᵢ, δᵢ)`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    descriptor: RootSystemDescriptor,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn build(descriptor: RootSystemDescriptor) -> Self {
        let r = descriptor.rank;
        // (squared lengths, edges with their Gram entry); Bourbaki numbering.
        let (norms, edges): (Vec<i64>, Vec<(usize, usize, i64)>) = match descriptor.family {
            Family::A => (vec![2; r], (0..r - 1).map(|i| (i, i + 1, -1)).collect()),
            Family::B => {
                let mut norms = vec![2; r];
                norms[r - 1] = 1;
                (norms, (0..r - 1).map(|i| (i, i + 1, -1)).collect())
            }
            Family::C => {
                let mut norms = vec![2; r];
                norms[r - 1] = 4;
                let edges = (0..r - 1)
                    .map(|i| (i, i + 1, if i + 2 == r { -2 } else { -1 }))
                    .collect();
                (norms, edges)
            }
            Family::D => {
                let mut edges: Vec<_> = (0..r - 2).map(|i| (i, i + 1, -1)).collect();
                edges.push((r - 3, r - 1, -1));
                (vec![2; r], edges)
            }
            Family::E => {
                let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]
                    .into_iter()
                    .filter(|&(i, j)| i < r && j < r)
                    .map(|(i, j)| (i, j, -1))
                    .collect();
                (vec![2; r], edges)
            }
            Family::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
            Family::G => (vec![2, 6], vec![(0, 1, -3)]),
        };
        let mut gram = vec![vec![0i64; r]; r];
        for (i, &n) in norms.iter().enumerate() {
            gram[i][i] = n;
        }
        for (i, j, g) in edges {
            gram[i][j] = g;
            gram[j][i] = g;
        }
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        debug_assert_eq!((2 * gram[i][j]) % gram[i][i], 0);
                        2 * gram[i][j] / gram[i][i]
                    })
                    .collect()
            })
            .collect();
        let mut rs = Self {
            descriptor,
            gram,
            cartan,
            roots: Vec::new(),
        };
        rs.roots = rs.reflection_closure();
        rs
    }

    pub fn from_descriptor_str(s: &str) -> Result<Self, RootSystemError> {
        Ok(Self::build(s.parse()?))
    }

    /// Orbit of the simple roots under the simple reflections.
    fn reflection_closure(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..r {
                let w = self.reflect(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            hb.cmp(&ha).then_with(|| b.cmp(a))
        });
        roots
    }

    pub fn descriptor(&self) -> RootSystemDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.descriptor.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// All roots in simple-root coordinates, sorted by decreasing height.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// Invariant inner product `(u, v)` in the scaled integer normalization.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| u[i] * self.gram[i][j] * v[j]).sum::<i64>())
            .sum()
    }

    /// `⟨v, δᵢ^∨⟩`, always an integer for `v` in the root lattice.
    pub fn coroot_pairing(&self, v: &[i64], i: usize) -> i64 {
        v.iter().zip(&self.cartan[i]).map(|(a, c)| a * c).sum()
    }

    /// Simple reflection `sᵢ(v) = v − ⟨v, δᵢ^∨⟩ δᵢ`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let mut w = v.to_vec();
        w[i] -= self.coroot_pairing(v, i);
        w
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|x| x.as_slice() == v)
    }

    /// Whether simple roots `i` and `j` are orthogonal.
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] == 0
    }

    pub fn dynkin_graph(&self) -> super::DynkinGraph {
        super::DynkinGraph::from_cartan(&self.cartan)
    }

    /// `|det C|`, which equals the order of the center of the simply
    /// connected group.
    pub fn cartan_determinant(&self) -> i64 {
        exact::abs_det(&self.cartan)
    }
}

/// Every admissible descriptor used by the test suites: A–D up to rank 8 and
/// the exceptional types.
pub fn descriptors_up_to_rank(max_rank: usize) -> Vec<RootSystemDescriptor> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for rank in 1..=max_rank {
            if let Ok(d) = RootSystemDescriptor::new(family, rank) {
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_descriptor_str(s).unwrap()
    }

    #[test]
    fn parse_descriptors() {
        let d: RootSystemDescriptor = "a4".parse().unwrap();
        assert_eq!(d.to_string(), "A4");
        assert_eq!("E6".parse::<RootSystemDescriptor>().unwrap().rank(), 6);
        assert!("D3".parse::<RootSystemDescriptor>().is_err());
        assert!("C2".parse::<RootSystemDescriptor>().is_err());
        assert!("E9".parse::<RootSystemDescriptor>().is_err());
        assert!("F5".parse::<RootSystemDescriptor>().is_err());
        assert!("G".parse::<RootSystemDescriptor>().is_err());
        assert!("X3".parse::<RootSystemDescriptor>().is_err());
        assert!("A-1".parse::<RootSystemDescriptor>().is_err());
        assert!("A0".parse::<RootSystemDescriptor>().is_err());
    }

    #[test]
    fn a1_has_two_roots() {
        let a1 = rs("A1");
        assert_eq!(a1.roots(), &[vec![1], vec![-1]]);
        assert_eq!(a1.cartan(), &[vec![2]]);
    }

    #[test]
    fn a4_cartan_is_tridiagonal() {
        let a4 = rs("A4");
        assert_eq!(a4.roots().len(), 20);
        for i in 0..4usize {
            for j in 0..4usize {
                let expected = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(a4.cartan()[i][j], expected);
            }
        }
    }

    #[test]
    fn g2_has_twelve_roots() {
        assert_eq!(rs("G2").roots().len(), 12);
    }

    #[test]
    fn non_simply_laced_cartan_entries() {
        let b3 = rs("B3");
        assert_eq!(b3.cartan()[1][2], -1);
        assert_eq!(b3.cartan()[2][1], -2);
        let c3 = rs("C3");
        assert_eq!(c3.cartan()[1][2], -2);
        assert_eq!(c3.cartan()[2][1], -1);
        let f4 = rs("F4");
        assert_eq!(f4.cartan()[1][2], -1);
        assert_eq!(f4.cartan()[2][1], -2);
        let g2 = rs("G2");
        assert_eq!(g2.cartan()[0][1] * g2.cartan()[1][0], 3);
    }

    #[test]
    fn coroot_pairs_to_two_with_its_root() {
        for d in descriptors_up_to_rank(8) {
            let rs = RootSystem::build(d);
            for i in 0..rs.rank() {
                assert_eq!(rs.coroot_pairing(&rs.simple_root(i), i), 2, "{d}");
            }
        }
    }

    #[test]
    fn root_counts_and_sign_coherence() {
        for d in descriptors_up_to_rank(8) {
            let rs = RootSystem::build(d);
            assert_eq!(rs.roots().len(), d.root_count(), "{d}");
            for root in rs.roots() {
                let pos = root.iter().all(|&c| c >= 0);
                let neg = root.iter().all(|&c| c <= 0);
                assert!(pos ^ neg, "{d}: {root:?}");
                let minus: Vec<i64> = root.iter().map(|c| -c).collect();
                assert!(rs.is_root(&minus));
            }
            for i in 0..rs.rank() {
                assert_eq!(rs.cartan()[i][i], 2);
                for j in 0..rs.rank() {
                    if i != j {
                        assert!(rs.cartan()[i][j] <= 0);
                    }
                }
            }
            assert_eq!(exact::rank(&rs.roots().to_vec()), rs.rank());
        }
    }

    #[test]
    fn cartan_determinant_is_center_order() {
        for d in descriptors_up_to_rank(8) {
            let rs = RootSystem::build(d);
            assert_eq!(rs.cartan_determinant() as usize, d.center_order(), "{d}");
        }
    }
}
