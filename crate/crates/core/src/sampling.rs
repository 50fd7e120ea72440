//! Samplers for the multinomial law `M(m, n²)` and per-trial seeding.
//!
//! Every sampler is a pure function of its parameters and a [`SeedSpec`].
//! The generator is PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`). The per-trial state
//! is derived from `(master_seed, stream_index)` with the SplitMix64 finalizer:
//!
//! ```text
//! a     = mix64(master_seed ^ mix64(stream_index + 0x9E3779B97F4A7C15))
//! b     = mix64(a + 0x9E3779B97F4A7C15)
//! state = (a << 64) | b,   increment stream = stream_index
//! ```

use std::collections::HashSet;

use rand::RngExt;
use rand_distr::{Binomial, Distribution};
use rand_pcg::Pcg64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CountMatrix, Representation};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> Pcg64 {
        let a = mix64(self.master_seed ^ mix64(self.stream_index.wrapping_add(GOLDEN_GAMMA)));
        let b = mix64(a.wrapping_add(GOLDEN_GAMMA));
        let state = ((a as u128) << 64) | b as u128;
        Pcg64::new(state, self.stream_index as u128)
    }
}

/// Ordered record of where each ball landed, `(row, col)` 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThrowTrace {
    pub n: usize,
    pub throws: Vec<(u32, u32)>,
}

impl ThrowTrace {
    /// Number of throws landing in a row and a column both unused by earlier throws.
    pub fn fresh_count(&self) -> u64 {
        let mut rows = vec![false; self.n];
        let mut cols = vec![false; self.n];
        let mut fresh = 0;
        for &(u, v) in &self.throws {
            let (u, v) = (u as usize, v as usize);
            if !rows[u] && !cols[v] {
                fresh += 1;
            }
            rows[u] = true;
            cols[v] = true;
        }
        fresh
    }
}

/// Counts throws `k` with `u_k ∉ {u_1..u_{k-1}}` and `v_k ∉ {v_1..v_{k-1}}`.
///
/// The fresh throws occupy distinct rows and columns, so they lie on one
/// permutation and the count is a lower bound for the assignment maximum.
pub fn fresh_throw_count(throws: &[(usize, usize)]) -> u64 {
    let mut rows = HashSet::new();
    let mut cols = HashSet::new();
    let mut fresh = 0;
    for &(u, v) in throws {
        let new_row = rows.insert(u);
        let new_col = cols.insert(v);
        if new_row && new_col {
            fresh += 1;
        }
    }
    fresh
}

/// Which exact sampler produced a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    BallThrowing,
    BinomialChain,
}

impl SamplerKind {
    /// Ball throwing is `O(m)`, the binomial chain `O(n²)`; pick the cheaper.
    pub fn auto(n: usize, m: u64) -> Self {
        if (m as u128) <= (n as u128) * (n as u128) {
            SamplerKind::BallThrowing
        } else {
            SamplerKind::BinomialChain
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub matrix: CountMatrix,
    pub trace: Option<ThrowTrace>,
    pub sampler: SamplerKind,
}

impl Sample {
    pub fn fresh_throws(&self) -> Result<u64> {
        self.trace
            .as_ref()
            .map(ThrowTrace::fresh_count)
            .ok_or(Error::NoThrowTrace)
    }
}

/// Draws a matrix with the sampler picked by [`SamplerKind::auto`], forcing
/// ball throwing when a trace is requested.
pub fn sample(n: usize, m: u64, seed: SeedSpec, retain_trace: bool) -> Sample {
    if retain_trace {
        return sample_ball_throwing_traced(n, m, seed, true);
    }
    match SamplerKind::auto(n, m) {
        SamplerKind::BallThrowing => sample_ball_throwing_traced(n, m, seed, false),
        SamplerKind::BinomialChain => Sample {
            matrix: sample_binomial_chain(n, m, seed),
            trace: None,
            sampler: SamplerKind::BinomialChain,
        },
    }
}

/// Throws `m` balls independently and uniformly onto the `n×n` grid.
pub fn sample_ball_throwing(n: usize, m: u64, seed: SeedSpec) -> CountMatrix {
    sample_ball_throwing_traced(n, m, seed, false).matrix
}

pub fn sample_ball_throwing_traced(n: usize, m: u64, seed: SeedSpec, retain_trace: bool) -> Sample {
    assert!(n >= 1, "matrix side must be positive");
    let mut rng = seed.rng();
    let mut trace = retain_trace.then(|| Vec::with_capacity(m as usize));
    let mut throw = |rng: &mut Pcg64| {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if let Some(t) = trace.as_mut() {
            t.push((u as u32, v as u32));
        }
        u * n + v
    };

    let matrix = match Representation::for_mass(n, m) {
        Representation::Dense => {
            let mut data = vec![0u64; n * n];
            for _ in 0..m {
                data[throw(&mut rng)] += 1;
            }
            CountMatrix::from_dense(n, data).expect("n*n buffer")
        }
        Representation::Sparse => {
            let mut cells: Vec<usize> = (0..m).map(|_| throw(&mut rng)).collect();
            cells.sort_unstable();
            let mut runs: Vec<(usize, usize, u64)> = Vec::new();
            for cell in cells {
                match runs.last_mut() {
                    Some(r) if r.0 * n + r.1 == cell => r.2 += 1,
                    _ => runs.push((cell / n, cell % n, 1)),
                }
            }
            CountMatrix::from_sorted_cells(n, runs)
        }
    };
    Sample {
        matrix,
        trace: trace.map(|throws| ThrowTrace { n, throws }),
        sampler: SamplerKind::BallThrowing,
    }
}

/// Exact multinomial sampler that walks the cells in row-major order and draws
/// each count from `Binomial(remaining_m, 1 / remaining_cells)`.
///
/// Cost is `O(n²)` binomial draws regardless of `m`.
pub fn sample_binomial_chain(n: usize, m: u64, seed: SeedSpec) -> CountMatrix {
    assert!(n >= 1, "matrix side must be positive");
    let mut rng = seed.rng();
    let cells = n * n;
    let mut remaining = m;
    let mut out: Vec<(usize, usize, u64)> = Vec::new();
    for k in 0..cells {
        if remaining == 0 {
            break;
        }
        let left = cells - k;
        let x = if left == 1 {
            remaining
        } else {
            Binomial::new(remaining, 1.0 / left as f64)
                .expect("probability in (0, 1)")
                .sample(&mut rng)
        };
        if x > 0 {
            out.push((k / n, k % n, x));
            remaining -= x;
        }
    }
    CountMatrix::from_sorted_cells(n, out)
}
