//! Greedy quasi-optimal permutation and the row-maximum upper bound.
//!
//! Rows are visited in order `0..n`; each takes the best still-unused column,
//! lowest index on ties. Greedy max never exceeds the exact maximum, and the
//! sum of row maxima never falls below it, so the two bracket the optimum.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::lap::{AssignmentSolution, Objective, Permutation, SolverId};
use crate::matrix::CountMatrix;

pub fn greedy_permutation(matrix: &CountMatrix, objective: Objective) -> AssignmentSolution {
    let (mapping, _) = greedy_trace(matrix, objective);
    AssignmentSolution::evaluate(
        matrix,
        Permutation::new(mapping).expect("greedy uses each column once"),
        objective,
        SolverId::Greedy,
    )
}

/// Greedy column choices together with the value picked at each step.
pub fn greedy_trace(matrix: &CountMatrix, objective: Objective) -> (Vec<usize>, Vec<u64>) {
    let n = matrix.n();
    let mut mapping = Vec::with_capacity(n);
    let mut picked = Vec::with_capacity(n);

    if matrix.dense_row(0).is_some() {
        let mut used = vec![false; n];
        for i in 0..n {
            let row = matrix.dense_row(i).expect("dense storage");
            let mut best: Option<(usize, u64)> = None;
            for (j, &x) in row.iter().enumerate() {
                if used[j] {
                    continue;
                }
                let better = match (best, objective) {
                    (None, _) => true,
                    (Some((_, b)), Objective::Max) => x > b,
                    (Some((_, b)), Objective::Min) => x < b,
                };
                if better {
                    best = Some((j, x));
                }
            }
            let (j, x) = best.expect("a column is always left");
            used[j] = true;
            mapping.push(j);
            picked.push(x);
        }
        return (mapping, picked);
    }

    let mut free: BTreeSet<usize> = (0..n).collect();
    for i in 0..n {
        let (j, x) = match objective {
            Objective::Max => {
                let mut best: Option<(usize, u64)> = None;
                for (j, x) in matrix.row(i) {
                    if free.contains(&j) && best.is_none_or(|(_, b)| x > b) {
                        best = Some((j, x));
                    }
                }
                match best {
                    // A positive entry beats every zero; among equal maxima the
                    // row iterator already yields the lowest column first.
                    Some(b) => b,
                    None => (*free.first().expect("a column is always left"), 0),
                }
            }
            Objective::Min => sparse_row_min(matrix, i, &free),
        };
        free.remove(&j);
        mapping.push(j);
        picked.push(x);
    }
    (mapping, picked)
}

/// Lowest free column holding a zero in row `i`, else the smallest free entry.
fn sparse_row_min(matrix: &CountMatrix, i: usize, free: &BTreeSet<usize>) -> (usize, u64) {
    let row: Vec<(usize, u64)> = matrix.row(i).collect();
    for &j in free {
        match row.binary_search_by_key(&j, |&(c, _)| c) {
            Err(_) => return (j, 0),
            Ok(_) => continue,
        }
    }
    // Every free column is occupied in this row.
    row.into_iter()
        .filter(|(j, _)| free.contains(j))
        .fold(None, |best: Option<(usize, u64)>, (j, x)| match best {
            Some((_, b)) if b <= x => best,
            _ => Some((j, x)),
        })
        .expect("a column is always left")
}

/// `Σ_i max_j X_ij`, an upper bound on the assignment maximum.
pub fn row_max_sum(matrix: &CountMatrix) -> u64 {
    (0..matrix.n()).map(|i| matrix.row_max(i)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub lower: u64,
    pub upper: u64,
}

/// Greedy maximum as lower bound, row-maximum sum as upper bound.
pub fn bracket_max(matrix: &CountMatrix) -> Bracket {
    Bracket {
        lower: greedy_permutation(matrix, Objective::Max).value,
        upper: row_max_sum(matrix),
    }
}
