use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::{RootSystem, RootSystemError};

/// Underlying simple graph of a Dynkin diagram: vertices are simple-root
/// indices (0-based), edges join non-orthogonal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    adjacency: Vec<Vec<usize>>,
}

impl DynkinGraph {
    pub fn from_cartan(cartan: &[Vec<i64>]) -> Self {
        let n = cartan.len();
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && cartan[i][j] != 0).collect())
            .collect();
        Self { adjacency }
    }

    /// Graph on `n` vertices with the given undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Self { adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| nbrs.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        if self.edges().len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A set of pairwise orthogonal simple roots, by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct OrthogonalSubset {
    indices: BTreeSet<usize>,
}

impl OrthogonalSubset {
    /// Checks pairwise orthogonality against the Cartan matrix.
    pub fn new(
        rs: &RootSystem,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, RootSystemError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        for &i in &indices {
            if i >= rs.rank() {
                return Err(RootSystemError::IndexOutOfRange { index: i, rank: rs.rank() });
            }
        }
        for &i in &indices {
            for &j in &indices {
                if i < j && !rs.orthogonal(i, j) {
                    return Err(RootSystemError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(Self { indices })
    }

    fn from_set_unchecked(indices: BTreeSet<usize>) -> Self {
        Self { indices }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// Re-checks the defining invariant.
    pub fn is_pairwise_orthogonal(&self, cartan: &[Vec<i64>]) -> bool {
        self.indices
            .iter()
            .all(|&i| self.indices.iter().all(|&j| i == j || cartan[i][j] == 0))
    }
}

impl fmt::Display for OrthogonalSubset {
    /// 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Proper red/blue coloring of a forest. In each component the vertex with
/// the smallest index is colored red.
pub fn two_color(
    graph: &DynkinGraph,
) -> Result<(OrthogonalSubset, OrthogonalSubset), RootSystemError> {
    let n = graph.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in graph.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return Err(RootSystemError::OddCycle),
                    Some(_) => {}
                }
            }
        }
    }
    let red = (0..n).filter(|&v| color[v] == Some(true)).collect();
    let blue = (0..n).filter(|&v| color[v] == Some(false)).collect();
    Ok((
        OrthogonalSubset::from_set_unchecked(red),
        OrthogonalSubset::from_set_unchecked(blue),
    ))
}

/// Larger of the two color classes of the Dynkin coloring restricted to
/// `delta1`. Equal sizes go to the class holding the smallest index.
pub fn select_orthogonal_subset(
    rs: &RootSystem,
    delta1: &BTreeSet<usize>,
) -> Result<OrthogonalSubset, RootSystemError> {
    if let Some(&i) = delta1.iter().find(|&&i| i >= rs.rank()) {
        return Err(RootSystemError::IndexOutOfRange { index: i, rank: rs.rank() });
    }
    let (red, blue) = two_color(&rs.dynkin_graph())?;
    let red: BTreeSet<usize> = red.indices().filter(|i| delta1.contains(i)).collect();
    let blue: BTreeSet<usize> = blue.indices().filter(|i| delta1.contains(i)).collect();
    let pick_red = match red.len().cmp(&blue.len()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => red.first() <= blue.first(),
    };
    let chosen = if pick_red { red } else { blue };
    Ok(OrthogonalSubset::from_set_unchecked(chosen))
}
