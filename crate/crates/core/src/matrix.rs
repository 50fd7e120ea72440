//! Count matrices: n×n nonnegative integer tables with a fixed total mass.
//!
//! Indices are 0-based throughout the library. The canonical text form
//! (`"n m"` header, then `"row col count"` triples in row-major order) is
//! 1-based, matching how cells are written down by hand.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// Storage layout of a [`CountMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Dense,
    Sparse,
}

impl Representation {
    /// Sparse storage when `m < n²/4`, dense otherwise.
    pub fn for_mass(n: usize, total: u64) -> Self {
        let cells = (n as u128) * (n as u128);
        if 4 * (total as u128) < cells {
            Representation::Sparse
        } else {
            Representation::Dense
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    /// Row-major, `n * n` entries.
    Dense(Vec<u64>),
    /// Compressed rows: row `i` owns `cols[row_ptr[i]..row_ptr[i + 1]]`,
    /// sorted ascending, with strictly positive `counts`.
    Sparse {
        row_ptr: Vec<usize>,
        cols: Vec<u32>,
        counts: Vec<u64>,
    },
}

/// An immutable n×n matrix of nonnegative counts summing to `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    total: u64,
    occupied: usize,
    storage: Storage,
}

impl CountMatrix {
    pub fn zeros(n: usize) -> Self {
        Self::from_sorted_cells(n, std::iter::empty())
    }

    /// Builds a matrix from a row-major buffer of `n * n` counts.
    pub fn from_dense(n: usize, data: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("side must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        let total = data.iter().sum::<u64>();
        let occupied = data.iter().filter(|&&x| x > 0).count();
        let m = CountMatrix {
            n,
            total,
            occupied,
            storage: Storage::Dense(data),
        };
        Ok(m.into_representation(Representation::for_mass(n, total)))
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Self::from_dense(n, rows.concat())
    }

    /// Builds a matrix from `(row, col, count)` triples; duplicates are summed.
    pub fn from_cells<I>(n: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if n == 0 {
            return Err(Error::InvalidMatrix("side must be at least 1".into()));
        }
        let mut v: Vec<(usize, usize, u64)> = Vec::new();
        for (i, j, c) in cells {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!(
                    "cell ({i}, {j}) outside a {n}x{n} matrix"
                )));
            }
            if c > 0 {
                v.push((i, j, c));
            }
        }
        v.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, u64)> = Vec::with_capacity(v.len());
        for (i, j, c) in v {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += c,
                _ => merged.push((i, j, c)),
            }
        }
        Ok(Self::from_sorted_cells(n, merged))
    }

    /// `cells` must be strictly increasing in row-major order with positive counts.
    pub(crate) fn from_sorted_cells<I>(n: usize, cells: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::new();
        let mut counts = Vec::new();
        let mut total = 0u64;
        for (i, j, c) in cells {
            debug_assert!(i < n && j < n && c > 0);
            row_ptr[i + 1] += 1;
            cols.push(j as u32);
            counts.push(c);
            total += c;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let m = CountMatrix {
            n,
            total,
            occupied: cols.len(),
            storage: Storage::Sparse {
                row_ptr,
                cols,
                counts,
            },
        };
        m.into_representation(Representation::for_mass(n, total))
    }

    /// Converts to the requested storage layout. Values are unchanged.
    pub fn into_representation(self, repr: Representation) -> Self {
        if self.representation() == repr {
            return self;
        }
        let n = self.n;
        let storage = match repr {
            Representation::Dense => {
                let mut data = vec![0u64; n * n];
                for (i, j, c) in self.cells() {
                    data[i * n + j] = c;
                }
                Storage::Dense(data)
            }
            Representation::Sparse => {
                let mut row_ptr = Vec::with_capacity(n + 1);
                let mut cols = Vec::with_capacity(self.occupied);
                let mut counts = Vec::with_capacity(self.occupied);
                row_ptr.push(0);
                for i in 0..n {
                    for (j, c) in self.row(i) {
                        cols.push(j as u32);
                        counts.push(c);
                    }
                    row_ptr.push(cols.len());
                }
                Storage::Sparse {
                    row_ptr,
                    cols,
                    counts,
                }
            }
        };
        CountMatrix { storage, ..self }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total mass `m`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Cell probability `p = n^-2` of the underlying multinomial law.
    pub fn p(&self) -> f64 {
        1.0 / (self.n as f64 * self.n as f64)
    }

    /// Number of cells with a positive count.
    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn representation(&self) -> Representation {
        match self.storage {
            Storage::Dense(_) => Representation::Dense,
            Storage::Sparse { .. } => Representation::Sparse,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.n && j < self.n, "cell ({i}, {j}) out of range");
        match &self.storage {
            Storage::Dense(d) => d[i * self.n + j],
            Storage::Sparse {
                row_ptr,
                cols,
                counts,
            } => {
                let span = row_ptr[i]..row_ptr[i + 1];
                match cols[span.clone()].binary_search(&(j as u32)) {
                    Ok(k) => counts[span.start + k],
                    Err(_) => 0,
                }
            }
        }
    }

    /// Nonzero cells of row `i` as `(col, count)`, columns ascending.
    pub fn row(&self, i: usize) -> RowIter<'_> {
        match &self.storage {
            Storage::Dense(d) => RowIter::Dense {
                data: &d[i * self.n..(i + 1) * self.n],
                pos: 0,
            },
            Storage::Sparse {
                row_ptr,
                cols,
                counts,
            } => {
                let span = row_ptr[i]..row_ptr[i + 1];
                RowIter::Sparse {
                    cols: &cols[span.clone()],
                    counts: &counts[span],
                    pos: 0,
                }
            }
        }
    }

    /// Dense row slice, when stored densely.
    pub fn dense_row(&self, i: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Dense(d) => Some(&d[i * self.n..(i + 1) * self.n]),
            Storage::Sparse { .. } => None,
        }
    }

    /// All nonzero cells `(row, col, count)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, c)| (i, j, c)))
    }

    pub fn row_max(&self, i: usize) -> u64 {
        self.row(i).map(|(_, c)| c).max().unwrap_or(0)
    }

    pub fn max_entry(&self) -> u64 {
        (0..self.n).map(|i| self.row_max(i)).max().unwrap_or(0)
    }

    /// `Σ_i X_{i,σ(i)}` for a column mapping `sigma`.
    pub fn assignment_value(&self, sigma: &[usize]) -> u64 {
        debug_assert_eq!(sigma.len(), self.n);
        sigma.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }

    /// Returns the matrix `Y` with `Y[rows[i]][cols[j]] = X[i][j]`.
    pub fn relabeled(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        check_bijection(rows, self.n)?;
        check_bijection(cols, self.n)?;
        Self::from_cells(self.n, self.cells().map(|(i, j, c)| (rows[i], cols[j], c)))
    }

    /// Canonical text form: `"n m"`, then one `"row col count"` line per
    /// occupied cell, 1-based, row-major.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.total);
        for (i, j, c) in self.cells() {
            let _ = writeln!(s, "{} {} {}", i + 1, j + 1, c);
        }
        s
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidMatrix("missing header".into()))?;
        let nums = parse_fields(header, 2)?;
        let (n, m) = (nums[0] as usize, nums[1]);
        if n == 0 {
            return Err(Error::InvalidMatrix("side must be at least 1".into()));
        }
        let mut cells = Vec::new();
        let mut prev: Option<(usize, usize)> = None;
        for line in lines {
            let f = parse_fields(line, 3)?;
            let (i, j, c) = (f[0] as usize, f[1] as usize, f[2]);
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidMatrix(format!(
                    "cell ({i}, {j}) outside [1..{n}]"
                )));
            }
            if c == 0 {
                return Err(Error::InvalidMatrix(format!(
                    "zero count stored at ({i}, {j})"
                )));
            }
            let key = (i - 1, j - 1);
            if prev.is_some_and(|p| p >= key) {
                return Err(Error::InvalidMatrix(
                    "cells not in strict row-major order".into(),
                ));
            }
            prev = Some(key);
            cells.push((key.0, key.1, c));
        }
        let mat = Self::from_sorted_cells(n, cells);
        if mat.total != m {
            return Err(Error::InvalidMatrix(format!(
                "header says m = {m} but counts sum to {}",
                mat.total
            )));
        }
        Ok(mat)
    }
}

fn parse_fields(line: &str, want: usize) -> Result<Vec<u64>> {
    let f: Vec<u64> = line
        .split_whitespace()
        .map(|t| t.parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidMatrix(format!("bad line {line:?}: {e}")))?;
    if f.len() != want {
        return Err(Error::InvalidMatrix(format!(
            "bad line {line:?}: expected {want} fields"
        )));
    }
    Ok(f)
}

pub(crate) fn check_bijection(map: &[usize], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} for n = {n}",
            map.len()
        )));
    }
    let mut seen = vec![false; n];
    for &j in map {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidPermutation(format!("{map:?}")));
        }
    }
    Ok(())
}

/// Iterator over the nonzero cells of one row.
pub enum RowIter<'a> {
    Dense {
        data: &'a [u64],
        pos: usize,
    },
    Sparse {
        cols: &'a [u32],
        counts: &'a [u64],
        pos: usize,
    },
}

impl Iterator for RowIter<'_> {
    type Item = (usize, u64);

    #[inline]
    fn next(&mut self) -> Option<(usize, u64)> {
        match self {
            RowIter::Dense { data, pos } => {
                while *pos < data.len() {
                    let j = *pos;
                    *pos += 1;
                    if data[j] > 0 {
                        return Some((j, data[j]));
                    }
                }
                None
            }
            RowIter::Sparse { cols, counts, pos } => {
                let k = *pos;
                if k < cols.len() {
                    *pos += 1;
                    Some((cols[k] as usize, counts[k]))
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_threshold() {
        assert_eq!(Representation::for_mass(4, 3), Representation::Sparse);
        assert_eq!(Representation::for_mass(4, 4), Representation::Dense);
        assert_eq!(Representation::for_mass(1, 0), Representation::Sparse);
        assert_eq!(Representation::for_mass(1, 1), Representation::Dense);
    }

    #[test]
    fn dense_and_sparse_agree() {
        let rows = vec![vec![0, 2, 0], vec![3, 0, 1], vec![0, 0, 0]];
        let m = CountMatrix::from_rows(&rows).unwrap();
        assert_eq!(m.total(), 6);
        assert_eq!(m.occupied(), 3);
        let d = m.clone().into_representation(Representation::Dense);
        let s = m.into_representation(Representation::Sparse);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(d.get(i, j), v);
                assert_eq!(s.get(i, j), v);
            }
            assert!(d.row(i).eq(s.row(i)));
        }
        assert_eq!(d.row_max(1), 3);
        assert_eq!(s.max_entry(), 3);
    }

    #[test]
    fn from_cells_sums_duplicates_and_rejects_out_of_range() {
        let m = CountMatrix::from_cells(2, [(0, 1, 2), (0, 1, 3), (1, 0, 0)]).unwrap();
        assert_eq!(m.get(0, 1), 5);
        assert_eq!(m.occupied(), 1);
        assert!(CountMatrix::from_cells(2, [(2, 0, 1)]).is_err());
        assert!(CountMatrix::from_dense(2, vec![1, 2, 3]).is_err());
        assert!(CountMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn text_format() {
        let m = CountMatrix::from_rows(&[vec![0, 2], vec![3, 1]]).unwrap();
        let t = m.to_text();
        assert_eq!(t, "2 6\n1 2 2\n2 1 3\n2 2 1\n");
        assert_eq!(CountMatrix::parse_text(&t).unwrap(), m);
        assert_eq!(CountMatrix::zeros(3).to_text(), "3 0\n");
    }

    #[test]
    fn text_parse_errors() {
        assert!(CountMatrix::parse_text("").is_err());
        assert!(CountMatrix::parse_text("2 1\n3 1 1\n").is_err());
        assert!(CountMatrix::parse_text("2 2\n1 1 1\n").is_err());
        assert!(CountMatrix::parse_text("2 2\n1 2 1\n1 1 1\n").is_err());
        assert!(CountMatrix::parse_text("2 0\n1 1 0\n").is_err());
    }

    #[test]
    fn relabel_moves_cells() {
        let m = CountMatrix::from_rows(&[vec![1, 0], vec![0, 7]]).unwrap();
        let r = m.relabeled(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(r.get(1, 0), 1);
        assert_eq!(r.get(0, 1), 7);
        assert!(m.relabeled(&[0, 0], &[0, 1]).is_err());
    }
}
