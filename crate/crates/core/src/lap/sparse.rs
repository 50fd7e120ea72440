use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{AssignmentSolution, Objective, Permutation, SolverId};
use crate::matrix::CountMatrix;

const NONE: u32 = u32::MAX;
const INF: i64 = i64::MAX / 4;

/// Maximum of `S(σ)` using only the occupied cells.
///
/// Any matching of occupied cells extends to a permutation through zero
/// cells, so the problem is a maximum-weight bipartite matching on the
/// occupied cells. It is solved by successive shortest augmenting paths on the
/// reflected costs `W − X_ij` (`W` the largest entry): each augmenting path
/// adds exactly one matched pair, so its reflected length is `W − gain`, and
/// augmentation stops once no path has positive gain. Dijkstra runs on
/// reduced costs and stops at the first free column; node potentials absorb
/// `min(dist, D)` which keeps all reduced costs nonnegative.
///
/// Unmatched rows are completed with the unused columns in ascending order.
pub fn solve_sparse_max(matrix: &CountMatrix) -> AssignmentSolution {
    let n = matrix.n();
    let w_top = matrix.max_entry() as i64;

    // Compressed copy of the occupied cells with reflected costs.
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols: Vec<u32> = Vec::with_capacity(matrix.occupied());
    let mut costs: Vec<i64> = Vec::with_capacity(matrix.occupied());
    row_ptr.push(0usize);
    for i in 0..n {
        for (j, c) in matrix.row(i) {
            cols.push(j as u32);
            costs.push(w_top - c as i64);
        }
        row_ptr.push(cols.len());
    }

    let mut row_match = vec![NONE; n];
    let mut col_match = vec![NONE; n];
    // Reflected cost of the matched cell in each row.
    let mut row_match_cost = vec![0i64; n];

    // Node ids: rows 0..n, columns n..2n, sink 2n. The source is implicit.
    let sink = 2 * n;
    let mut pot = vec![0i64; 2 * n + 1];
    let mut pot_source = 0i64;
    let mut dist = vec![INF; 2 * n + 1];
    let mut done = vec![false; 2 * n + 1];
    let mut touched: Vec<usize> = Vec::new();
    let mut pred_col_row = vec![NONE; n];
    let mut pred_sink;
    let mut heap: BinaryHeap<Reverse<(i64, u32)>> = BinaryHeap::new();

    // Rows without occupied cells can never gain anything.
    let active_rows: Vec<usize> = (0..n).filter(|&i| row_ptr[i + 1] > row_ptr[i]).collect();

    loop {
        for &v in &touched {
            dist[v] = INF;
            done[v] = false;
        }
        touched.clear();
        heap.clear();
        pred_sink = NONE;
        dist[sink] = INF;
        done[sink] = false;

        for &i in &active_rows {
            if row_match[i] == NONE {
                let d = pot_source - pot[i];
                if d < dist[i] {
                    dist[i] = d;
                    touched.push(i);
                    heap.push(Reverse((d, i as u32)));
                }
            }
        }

        let mut reached = None;
        while let Some(Reverse((d, v))) = heap.pop() {
            let v = v as usize;
            if done[v] || d > dist[v] {
                continue;
            }
            done[v] = true;
            if v == sink {
                reached = Some(d);
                break;
            }
            if v < n {
                let i = v;
                let base = d + pot[i];
                for k in row_ptr[i]..row_ptr[i + 1] {
                    let j = cols[k] as usize;
                    if row_match[i] == j as u32 {
                        continue;
                    }
                    let node = n + j;
                    let nd = base + costs[k] - pot[node];
                    if nd < dist[node] {
                        if dist[node] == INF {
                            touched.push(node);
                        }
                        dist[node] = nd;
                        pred_col_row[j] = i as u32;
                        heap.push(Reverse((nd, node as u32)));
                    }
                }
            } else {
                let j = v - n;
                let owner = col_match[j];
                if owner == NONE {
                    let nd = d + pot[v] - pot[sink];
                    if nd < dist[sink] {
                        dist[sink] = nd;
                        pred_sink = j as u32;
                        heap.push(Reverse((nd, sink as u32)));
                    }
                } else {
                    let i = owner as usize;
                    let nd = d - row_match_cost[i] + pot[v] - pot[i];
                    if nd < dist[i] {
                        if dist[i] == INF {
                            touched.push(i);
                        }
                        dist[i] = nd;
                        heap.push(Reverse((nd, i as u32)));
                    }
                }
            }
        }

        let Some(reduced) = reached else { break };
        let path_cost = reduced - pot_source + pot[sink];
        if path_cost >= w_top {
            break;
        }

        // p(v) += min(dist(v), D) for every node, shifted by -D overall so
        // that unreached nodes and the sink stay put.
        for &v in &touched {
            if done[v] {
                pot[v] += dist[v] - reduced;
            }
        }
        pot_source -= reduced;

        let mut j = pred_sink as usize;
        loop {
            let i = pred_col_row[j] as usize;
            let prev = row_match[i];
            let k = row_ptr[i]
                + cols[row_ptr[i]..row_ptr[i + 1]]
                    .binary_search(&(j as u32))
                    .unwrap();
            row_match[i] = j as u32;
            row_match_cost[i] = costs[k];
            col_match[j] = i as u32;
            if prev == NONE {
                break;
            }
            j = prev as usize;
        }
    }

    let mut free_cols = (0..n).filter(|&j| col_match[j] == NONE);
    let mapping: Vec<usize> = row_match
        .iter()
        .map(|&j| {
            if j == NONE {
                free_cols.next().expect("as many free columns as free rows")
            } else {
                j as usize
            }
        })
        .collect();
    AssignmentSolution::evaluate(
        matrix,
        Permutation(mapping),
        Objective::Max,
        SolverId::Sparse,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lap::{solve_bruteforce, solve_dense};
    use crate::sampling::{sample_ball_throwing, SeedSpec};

    #[test]
    fn empty_matrix_gives_identity() {
        let s = solve_sparse_max(&CountMatrix::zeros(5));
        assert_eq!(s.value, 0);
        assert_eq!(s.permutation, Permutation::identity(5));
    }

    #[test]
    fn single_cell() {
        let x = CountMatrix::from_cells(3, [(1, 2, 4)]).unwrap();
        let s = solve_sparse_max(&x);
        assert_eq!(s.value, 4);
        assert!(s.is_consistent_with(&x));
    }

    #[test]
    fn needs_rerouting() {
        // Greedy takes (0,0)=5 and strands row 1; optimum is 5 + 9 via (0,1),(1,0).
        let x = CountMatrix::from_rows(&[vec![5, 5], vec![9, 0]]).unwrap();
        assert_eq!(solve_sparse_max(&x).value, 14);
        let x = CountMatrix::from_rows(&[vec![3, 2, 0], vec![3, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            solve_sparse_max(&x).value,
            solve_bruteforce(&x, Objective::Max).unwrap().value
        );
    }

    #[test]
    fn agrees_with_dense_on_samples() {
        for seed in 0..40 {
            let n = 5 + (seed as usize * 7) % 60;
            let m = (n as u64 * n as u64) / 6 + seed;
            let x = sample_ball_throwing(n, m, SeedSpec::new(seed, 1));
            assert_eq!(
                solve_sparse_max(&x).value,
                solve_dense(&x, Objective::Max).value,
                "n={n} m={m}"
            );
        }
    }
}
