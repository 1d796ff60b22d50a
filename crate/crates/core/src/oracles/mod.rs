//! Brute-force oracles for finite permutation groups: derived subgroups,
//! normal closures, commutator lengths, perfectness, and the finite form of
//! stalk detection for products.

mod algo;
mod group;
mod parse;
mod perm;

pub use algo::{
    commutator_length, derived_subgroup, is_normal, is_perfect, normal_closure, perfect_product_check,
    stalk_detection_check, stalk_trials, CommutatorLength, CommutatorTable, PerfectProductVerdict, StalkSummary,
    StalkVerdict,
};
pub use group::{PermGroup, ProductGroup, COMMUTATOR_CAP, ELEMENT_CAP, MAX_NAMED_DEGREE, PRODUCT_FACTOR_CAP};
pub use parse::{parse_factors, parse_group, parse_perm, parse_product};
pub use perm::Perm;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("{family}{degree}: degree must be between 1 and {max}")]
    DegreeTooLarge { family: char, degree: usize, max: usize },
    #[error("permutation of degree {got} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("product factors must have order at most {cap}, got {order}")]
    FactorTooLarge { order: usize, cap: usize },
    #[error("not an element of the group: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("cannot parse group: {0}")]
    Parse(String),
}
