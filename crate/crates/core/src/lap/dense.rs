use super::{AssignmentSolution, Objective, Permutation, SolverId};
use crate::matrix::CountMatrix;

const UNASSIGNED: usize = usize::MAX;

/// Shortest-augmenting-path assignment with row and column potentials, `O(n³)`.
///
/// Costs are nonnegative: the entries themselves for the minimum and the
/// reflection `max_entry − X_ij` for the maximum, so every permutation's cost
/// is `n·max_entry − S(σ)` and the arithmetic stays in integers.
pub fn solve_dense(matrix: &CountMatrix, objective: Objective) -> AssignmentSolution {
    let n = matrix.n();
    let top = matrix.max_entry() as i64;
    let mut cost = vec![0i64; n * n];
    for i in 0..n {
        let row = &mut cost[i * n..(i + 1) * n];
        if objective == Objective::Max {
            row.fill(top);
        }
        for (j, c) in matrix.row(i) {
            row[j] = match objective {
                Objective::Min => c as i64,
                Objective::Max => top - c as i64,
            };
        }
    }
    let assignment = min_cost_assignment(n, &cost);
    AssignmentSolution::evaluate(matrix, Permutation(assignment), objective, SolverId::Dense)
}

/// Returns `row -> col` minimizing `Σ cost[i*n + σ(i)]`.
fn min_cost_assignment(n: usize, cost: &[i64]) -> Vec<usize> {
    const INF: i64 = i64::MAX / 4;
    let mut row_pot = vec![0i64; n];
    let mut col_pot = vec![0i64; n];
    let mut col_owner = vec![UNASSIGNED; n];
    let mut row_match = vec![UNASSIGNED; n];

    // Column reduction seeds the column potentials with each column's minimum.
    for j in 0..n {
        col_pot[j] = (0..n).map(|i| cost[i * n + j]).min().unwrap_or(0);
    }

    let mut dist = vec![INF; n];
    let mut via = vec![UNASSIGNED; n];
    let mut pending: Vec<usize> = Vec::with_capacity(n);
    let mut done: Vec<usize> = Vec::with_capacity(n);

    for start in 0..n {
        dist.fill(INF);
        pending.clear();
        pending.extend(0..n);
        done.clear();

        // Dijkstra over columns in reduced costs; `row` is the row being expanded.
        let mut row = start;
        let mut offset = 0i64;
        let end_col = loop {
            let base = &cost[row * n..(row + 1) * n];
            let shift = offset - row_pot[row];
            let mut best = INF;
            let mut best_k = 0;
            for (k, &j) in pending.iter().enumerate() {
                let d = base[j] + shift - col_pot[j];
                if d < dist[j] {
                    dist[j] = d;
                    via[j] = row;
                }
                if dist[j] < best {
                    best = dist[j];
                    best_k = k;
                }
            }
            let j = pending.swap_remove(best_k);
            offset = best;
            done.push(j);
            if col_owner[j] == UNASSIGNED {
                break j;
            }
            row = col_owner[j];
        };

        // Potential update keeps reduced costs nonnegative.
        for &j in &done {
            let delta = offset - dist[j];
            col_pot[j] -= delta;
            if col_owner[j] != UNASSIGNED {
                row_pot[col_owner[j]] += delta;
            }
        }
        row_pot[start] += offset;

        let mut j = end_col;
        loop {
            let i = via[j];
            let prev = row_match[i];
            row_match[i] = j;
            col_owner[j] = i;
            if i == start {
                break;
            }
            j = prev;
        }
    }
    row_match
}
