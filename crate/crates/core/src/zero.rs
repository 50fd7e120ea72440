//! Zero pattern of a count matrix and perfect matchings on it.
//!
//! `min_σ S(σ) = 0` exactly when the bipartite graph of empty cells has a
//! perfect matching. Matching uses Hopcroft–Karp. When more than half the
//! cells are empty the pattern is kept as the complement of the occupied
//! cells and each row's zero columns are enumerated on the fly, so memory
//! stays proportional to the occupied cells.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::lap::Permutation;
use crate::matrix::CountMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Cells {
    /// Zero columns of each row, ascending.
    Explicit(Vec<Vec<u32>>),
    /// Occupied columns of each row, ascending; zeros are everything else.
    Complement(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    n: usize,
    len: usize,
    cells: Cells,
}

impl ZeroPattern {
    /// Builds a pattern from explicit zero cells; duplicates are ignored.
    pub fn from_cells<I>(n: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, j) in cells {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!(
                    "zero cell ({i}, {j}) outside {n}x{n}"
                )));
            }
            rows[i].push(j as u32);
        }
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
        }
        let len = rows.iter().map(Vec::len).sum();
        Ok(ZeroPattern {
            n,
            len,
            cells: Cells::Explicit(rows),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of zero cells.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self.cells, Cells::Complement(_))
    }

    pub fn row_len(&self, i: usize) -> usize {
        match &self.cells {
            Cells::Explicit(rows) => rows[i].len(),
            Cells::Complement(occ) => self.n - occ[i].len(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        match &self.cells {
            Cells::Explicit(rows) => rows[i].binary_search(&(j as u32)).is_ok(),
            Cells::Complement(occ) => occ[i].binary_search(&(j as u32)).is_err(),
        }
    }

    fn every_column_has_zero(&self) -> bool {
        match &self.cells {
            Cells::Explicit(rows) => {
                let mut hit = vec![false; self.n];
                rows.iter().flatten().for_each(|&j| hit[j as usize] = true);
                hit.into_iter().all(|h| h)
            }
            Cells::Complement(occ) => {
                let mut filled = vec![0usize; self.n];
                occ.iter().flatten().for_each(|&j| filled[j as usize] += 1);
                filled.into_iter().all(|f| f < self.n)
            }
        }
    }

    /// First zero column of row `i` at or after cursor `from`, with the
    /// cursor to resume from.
    fn next_zero(&self, i: usize, from: usize) -> Option<(usize, usize)> {
        match &self.cells {
            Cells::Explicit(rows) => rows[i].get(from).map(|&j| (j as usize, from + 1)),
            Cells::Complement(occ) => {
                let occ = &occ[i];
                let mut j = from;
                let mut k = occ.partition_point(|&c| (c as usize) < j);
                while j < self.n {
                    if k < occ.len() && occ[k] as usize == j {
                        j += 1;
                        k += 1;
                    } else {
                        return Some((j, j + 1));
                    }
                }
                None
            }
        }
    }

    pub fn row_zeros(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cursor = 0;
        std::iter::from_fn(move || {
            let (j, next) = self.next_zero(i, cursor)?;
            cursor = next;
            Some(j)
        })
    }

    /// All zero cells in row-major order.
    pub fn zero_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row_zeros(i).map(move |j| (i, j)))
    }
}

pub fn zero_pattern(matrix: &CountMatrix) -> ZeroPattern {
    let n = matrix.n();
    let len = n * n - matrix.occupied();
    let implicit = 2 * len > n * n;
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            if implicit {
                matrix.row(i).map(|(j, _)| j as u32).collect()
            } else {
                let mut zeros = Vec::with_capacity(n);
                let mut occ = matrix.row(i).map(|(j, _)| j).peekable();
                for j in 0..n {
                    if occ.peek() == Some(&j) {
                        occ.next();
                    } else {
                        zeros.push(j as u32);
                    }
                }
                zeros
            }
        })
        .collect();
    ZeroPattern {
        n,
        len,
        cells: if implicit {
            Cells::Complement(rows)
        } else {
            Cells::Explicit(rows)
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroMatching {
    pub size: usize,
    pub row_to_col: Vec<Option<usize>>,
}

/// Maximum matching on the zero cells (Hopcroft–Karp).
pub fn max_zero_matching(pattern: &ZeroPattern) -> ZeroMatching {
    const NIL: usize = usize::MAX;
    let n = pattern.n;
    let mut row_to_col = vec![NIL; n];
    let mut col_to_row = vec![NIL; n];
    let mut size = 0;

    // Greedy warm start.
    for (i, slot) in row_to_col.iter_mut().enumerate() {
        if let Some(j) = pattern.row_zeros(i).find(|&j| col_to_row[j] == NIL) {
            *slot = j;
            col_to_row[j] = i;
            size += 1;
        }
    }

    let mut layer = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut cursor = vec![0usize; n];
    let mut stack: Vec<usize> = Vec::new();

    while size < n {
        // BFS from free rows; layer[i] is the alternating distance of row i.
        layer.fill(usize::MAX);
        queue.clear();
        for i in 0..n {
            if row_to_col[i] == NIL {
                layer[i] = 0;
                queue.push_back(i);
            }
        }
        let mut free_depth = usize::MAX;
        while let Some(i) = queue.pop_front() {
            if layer[i] >= free_depth {
                continue;
            }
            for j in pattern.row_zeros(i) {
                let owner = col_to_row[j];
                if owner == NIL {
                    free_depth = free_depth.min(layer[i] + 1);
                } else if layer[owner] == usize::MAX {
                    layer[owner] = layer[i] + 1;
                    queue.push_back(owner);
                }
            }
        }
        if free_depth == usize::MAX {
            break;
        }

        // Layered DFS with per-row cursors; each row's column scan resumes
        // where it left off, so a phase touches each edge at most once.
        cursor.fill(0);
        let mut augmented = false;
        for root in 0..n {
            if row_to_col[root] != NIL || layer[root] != 0 {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&i) = stack.last() {
                let mut advanced = false;
                while let Some((j, next)) = pattern.next_zero(i, cursor[i]) {
                    cursor[i] = next;
                    let owner = col_to_row[j];
                    if owner == NIL {
                        if layer[i] + 1 == free_depth {
                            // Augment along the stack.
                            let mut col = j;
                            while let Some(r) = stack.pop() {
                                let prev = row_to_col[r];
                                row_to_col[r] = col;
                                col_to_row[col] = r;
                                col = prev;
                            }
                            size += 1;
                            augmented = true;
                            advanced = true;
                            break;
                        }
                    } else if layer[owner] == layer[i] + 1 {
                        stack.push(owner);
                        advanced = true;
                        break;
                    }
                }
                if stack.is_empty() {
                    break;
                }
                if !advanced {
                    layer[i] = usize::MAX;
                    stack.pop();
                }
            }
        }
        if !augmented {
            break;
        }
    }

    ZeroMatching {
        size,
        row_to_col: row_to_col
            .into_iter()
            .map(|j| (j != NIL).then_some(j))
            .collect(),
    }
}

/// A permutation supported on zero cells, if one exists.
pub fn perfect_zero_matching(pattern: &ZeroPattern) -> Option<Permutation> {
    let n = pattern.n;
    if pattern.len < n || (0..n).any(|i| pattern.row_len(i) == 0) {
        return None;
    }
    if !pattern.every_column_has_zero() {
        return None;
    }
    let m = max_zero_matching(pattern);
    (m.size == n).then(|| {
        Permutation::new(
            m.row_to_col
                .into_iter()
                .map(|j| j.expect("perfect"))
                .collect(),
        )
        .expect("matching is a bijection")
    })
}

/// True iff some permutation avoids every occupied cell, i.e. `min_σ S(σ) = 0`.
pub fn has_perfect_zero_matching(pattern: &ZeroPattern) -> bool {
    perfect_zero_matching(pattern).is_some()
}

/// `edges / n − ln n`; large positive values make a perfect matching in a
/// uniform random bipartite graph with that many edges likely.
pub fn er_margin(n: usize, edge_count: u64) -> f64 {
    edge_count as f64 / n as f64 - (n as f64).ln()
}
