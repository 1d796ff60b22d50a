use std::collections::{HashMap, VecDeque};

use super::exact;
use super::{RootSystem, RootSystemError};

/// Default cap on the number of Weyl group elements held in memory.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// An element of the Weyl group.
///
/// `word = [i₁, …, iₖ]` means `w = s_{i₁} ⋯ s_{iₖ}` (rightmost applied first).
/// `matrix` is the action on `V` in simple-root coordinates and
/// `coroot_matrix` the action on `Lie(T)` in simple-coroot coordinates; both
/// are integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<u8>,
    matrix: Vec<Vec<i64>>,
    coroot_matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            word: Vec::new(),
            matrix: exact::identity(rank),
            coroot_matrix: exact::identity(rank),
        }
    }

    /// The simple reflection `sᵢ`.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let r = rs.rank();
        let c = rs.cartan();
        let mut matrix = exact::identity(r);
        let mut coroot_matrix = exact::identity(r);
        // sᵢ(v)ᵢ = vᵢ − Σⱼ C[i][j] vⱼ
        // sᵢ(x)ᵢ = xᵢ − Σⱼ C[j][i] xⱼ   (coroot coordinates)
        for j in 0..r {
            matrix[i][j] -= c[i][j];
            coroot_matrix[i][j] -= c[j][i];
        }
        Self {
            word: vec![i as u8],
            matrix,
            coroot_matrix,
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(rs.rank()), |acc, &i| {
            acc.compose(&Self::simple_reflection(rs, i))
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self {
            word,
            matrix: exact::mat_mul(&self.matrix, &other.matrix),
            coroot_matrix: exact::mat_mul(&self.coroot_matrix, &other.coroot_matrix),
        }
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&i| i as usize).collect()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn coroot_matrix(&self) -> &[Vec<i64>] {
        &self.coroot_matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == exact::identity(self.matrix.len())
    }

    /// Image of a vector of `V` (simple-root coordinates).
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        exact::mat_vec(&self.matrix, v)
    }

    /// Image of a point of `Lie(T)` given in coroot coordinates.
    pub fn apply_coroot(&self, x: &[f64]) -> Vec<f64> {
        self.coroot_matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum())
            .collect()
    }

    /// `Mᵀ G M = G` for the Gram matrix `G`.
    pub fn preserves_form(&self, rs: &RootSystem) -> bool {
        let g = rs.gram();
        let mt = exact::transpose(&self.matrix);
        exact::mat_mul(&exact::mat_mul(&mt, g), &self.matrix) == g
    }

    pub fn permutes_roots(&self, rs: &RootSystem) -> bool {
        let mut images: Vec<Vec<i64>> = rs.roots().iter().map(|r| self.apply(r)).collect();
        images.sort();
        let mut roots = rs.roots().to_vec();
        roots.sort();
        images == roots
    }
}

/// All elements of the Weyl group, identity first, in breadth-first order of
/// word length. Refuses when the group order exceeds `cap`.
pub fn enumerate_weyl(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>, RootSystemError> {
    let order = rs.descriptor().weyl_order();
    if order > cap as u128 {
        return Err(RootSystemError::WeylTooLarge {
            descriptor: rs.descriptor().to_string(),
            order,
            cap,
        });
    }
    let r = rs.rank();
    let gens: Vec<WeylElement> = (0..r).map(|i| WeylElement::simple_reflection(rs, i)).collect();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::with_capacity(order as usize);
    let mut elements = vec![WeylElement::identity(r)];
    index.insert(flatten(&elements[0].matrix), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in &gens {
            let next = elements[k].compose(g);
            let key = flatten(&next.matrix);
            if !index.contains_key(&key) {
                index.insert(key, elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    debug_assert_eq!(elements.len() as u128, order);
    Ok(elements)
}

fn flatten(m: &[Vec<i64>]) -> Vec<i64> {
    m.iter().flatten().copied().collect()
}
