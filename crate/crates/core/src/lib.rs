//! Quantitative normal generation in compact simple Lie groups.
//!
//! Given a non-central `h` in `SU(n)` with `σ̂(h) ≥ θ`, [`sunpipe::decompose`]
//! writes any target `g` as a product of fewer than
//! `f(θ) = 2(8/θ + 3)(2π/θ + 1)` conjugates of `h` and `h⁻¹` and returns a
//! certificate that can be re-verified by multiplication. The supporting
//! pieces are:
//!
//! * [`rootsys`]: root systems, Dynkin colorings, Weyl groups, spanning
//!   Weyl translates;
//! * [`classfn`]: the circle length `ℓ` and the class functions `σ`, `σ̂`;
//! * [`su2`]: unit-quaternion geometry of conjugacy classes in `SU(2)`;
//! * [`sunpipe`]: the `SU(n)` factorization pipeline and the reflection
//!   count in `O(m)`;
//! * [`oracles`]: brute-force finite permutation group checks (commutator
//!   length, derived subgroups, normal closures in products).

pub mod classfn;
pub mod oracles;
pub mod rootsys;
pub mod su2;
pub mod sunpipe;
