//! Root systems of types A–G, Dynkin-diagram combinatorics and Weyl groups.
//!
//! All combinatorial data is held in exact integer arithmetic: vectors of `V`
//! are written in the basis of simple roots, so orthogonality and span checks
//! never involve a tolerance.

pub mod exact;

mod dynkin;
mod span;
mod system;
mod weyl;

pub use dynkin::{select_orthogonal_subset, two_color, DynkinGraph, OrthogonalSubset};
pub use span::{
    permutation_word, spanning_translates, translate_bound, translates_span, type_a_windows,
    SpanMode,
};
pub use system::{descriptors_up_to_rank, Family, RootSystem, RootSystemDescriptor};
pub use weyl::{enumerate_weyl, WeylElement, DEFAULT_WEYL_CAP};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("cannot parse root system descriptor {0:?} (expected e.g. \"A4\", \"E6\")")]
    Parse(String),
    #[error("no irreducible root system of type {family}{rank} (A r>=1, B r>=2, C r>=3, D r>=4, E 6..8, F4, G2)")]
    Inadmissible { family: char, rank: usize },
    #[error("graph is not bipartite (odd cycle)")]
    OddCycle,
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("simple roots {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("subset of simple roots must be nonempty")]
    EmptySubset,
    #[error("Weyl group of {descriptor} has order {order}, above the enumeration cap {cap}")]
    WeylTooLarge {
        descriptor: String,
        order: u128,
        cap: usize,
    },
    #[error("no spanning family of translates found for {descriptor}, subset {subset}")]
    SpanSearchFailed { descriptor: String, subset: String },
}
