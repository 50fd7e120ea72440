//! Exact optimization of `S(σ) = Σ_i X_{iσ(i)}` over permutations.
//!
//! Three independent solvers are provided so they can check one another:
//! literal enumeration for tiny `n`, a dense shortest-augmenting-path solver
//! with dual potentials, and a sparse successive-shortest-path solver for the
//! maximum that only touches occupied cells.

mod brute;
mod dense;
mod sparse;

use std::fmt;

use serde::Serialize;

pub use brute::{solve_bruteforce, BRUTEFORCE_LIMIT};
pub use dense::solve_dense;
pub use sparse::solve_sparse_max;

use crate::error::{Error, Result};
use crate::matrix::{check_bijection, CountMatrix};
use crate::zero;

/// Largest side the dense `O(n³)` solver accepts through [`solve`].
pub const DENSE_BUDGET: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverId {
    Oracle,
    Dense,
    Sparse,
    ZeroMatching,
    Greedy,
}

/// A bijection of `[0..n)`; position `i` holds `σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        check_bijection(&mapping, mapping.len())?;
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }
}

impl fmt::Display for Permutation {
    /// 1-based, e.g. `(2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentSolution {
    pub value: u64,
    pub permutation: Permutation,
    pub objective: Objective,
    pub solver: SolverId,
}

impl AssignmentSolution {
    /// Evaluates `permutation` on `matrix` to fill in `value`.
    pub fn evaluate(
        matrix: &CountMatrix,
        permutation: Permutation,
        objective: Objective,
        solver: SolverId,
    ) -> Self {
        let value = matrix.assignment_value(permutation.as_slice());
        AssignmentSolution {
            value,
            permutation,
            objective,
            solver,
        }
    }

    /// True when the stored value equals the permutation's sum on `matrix`.
    pub fn is_consistent_with(&self, matrix: &CountMatrix) -> bool {
        self.permutation.len() == matrix.n()
            && matrix.assignment_value(self.permutation.as_slice()) == self.value
    }
}

/// Exact optimum with automatic solver selection.
///
/// Maximum: the sparse solver when at most `n²/4` cells are occupied, the
/// dense solver otherwise. Minimum: a zero perfect matching answers `0`
/// outright; anything else goes to the dense solver. Dense solves beyond
/// [`DENSE_BUDGET`] are refused with [`Error::OverBudget`].
pub fn solve(matrix: &CountMatrix, objective: Objective) -> Result<AssignmentSolution> {
    let n = matrix.n();
    let quarter = (n as u128 * n as u128) / 4;
    match objective {
        Objective::Max if (matrix.occupied() as u128) <= quarter => Ok(solve_sparse_max(matrix)),
        Objective::Min => {
            let pattern = zero::zero_pattern(matrix);
            if let Some(perm) = zero::perfect_zero_matching(&pattern) {
                return Ok(AssignmentSolution::evaluate(
                    matrix,
                    perm,
                    Objective::Min,
                    SolverId::ZeroMatching,
                ));
            }
            dense_within_budget(matrix, objective)
        }
        Objective::Max => dense_within_budget(matrix, objective),
    }
}

fn dense_within_budget(matrix: &CountMatrix, objective: Objective) -> Result<AssignmentSolution> {
    if matrix.n() > DENSE_BUDGET {
        return Err(Error::OverBudget {
            n: matrix.n(),
            limit: DENSE_BUDGET,
        });
    }
    Ok(solve_dense(matrix, objective))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_validation_and_display() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert_eq!(Permutation::new(vec![1, 0]).unwrap().to_string(), "(2,1)");
        assert_eq!(Permutation::identity(3).as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn dispatch_routes_and_agrees() {
        let x = CountMatrix::from_rows(&[vec![0, 2], vec![3, 1]]).unwrap();
        let max = solve(&x, Objective::Max).unwrap();
        let min = solve(&x, Objective::Min).unwrap();
        assert_eq!((max.value, min.value), (5, 1));
        assert_eq!(min.solver, SolverId::Dense);

        let sparse = CountMatrix::from_cells(6, [(1, 2, 4)]).unwrap();
        let max = solve(&sparse, Objective::Max).unwrap();
        assert_eq!((max.value, max.solver), (4, SolverId::Sparse));
        let min = solve(&sparse, Objective::Min).unwrap();
        assert_eq!((min.value, min.solver), (0, SolverId::ZeroMatching));
        assert!(min.is_consistent_with(&sparse));
    }

    #[test]
    fn over_budget_is_refused() {
        let n = DENSE_BUDGET + 1;
        let full = CountMatrix::from_cells(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j, 1))))
            .unwrap();
        assert!(matches!(
            solve(&full, Objective::Min),
            Err(Error::OverBudget { .. })
        ));
    }
}
