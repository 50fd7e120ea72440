//! Monte Carlo laboratory for the extrema of the multinomial random
//! assignment process `S(σ) = Σ_i X_{iσ(i)}`, where the `n×n` matrix `X`
//! holds the cell counts of `m` balls thrown uniformly onto the grid.
//!
//! The crate samples such matrices, computes exact and greedy assignment
//! extrema, decides zero minima through matchings on empty cells, and
//! compares Monte Carlo means with the regime-dependent leading-order
//! predictions.

pub mod error;
pub mod experiment;
pub mod greedy;
pub mod lap;
pub mod matrix;
pub mod sampling;
pub mod theory;
pub mod words;
pub mod zero;

pub use error::{Error, Result};
pub use lap::{AssignmentSolution, Objective, Permutation, SolverId};
pub use matrix::{CountMatrix, Representation};
pub use sampling::SeedSpec;
