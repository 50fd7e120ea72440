//! Roots of `H log H − (H − 1) = 1/c` on either side of `H = 1`.
//!
//! Written in `x = H − 1` as `g(x) = (1 + x)·ln(1 + x) − x − 1/c`, which is
//! convex with `g'(x) = ln(1 + x)` and minimum `g(0) = −1/c`. The upper root
//! (`x > 0`) exists for every `c > 0`; the lower root (`−1 < x < 0`) exists
//! only when `g(−1⁺) = 1 − 1/c > 0`, i.e. `c > 1`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HStarSolution {
    pub c: f64,
    pub h: f64,
    pub branch: Branch,
    /// `|h log h − (h − 1) − 1/c|`.
    pub residual: f64,
}

const BISECTION_WIDTH: f64 = 1e-14;
const NEWTON_STEPS: usize = 4;

fn g(x: f64, inv_c: f64) -> f64 {
    (1.0 + x) * x.ln_1p() - x - inv_c
}

/// `|h log h − (h − 1) − 1/c|` evaluated in the shifted variable.
pub fn residual(h: f64, c: f64) -> f64 {
    g(h - 1.0, 1.0 / c).abs()
}

/// Root with `H > 1`, for any `c > 0`.
pub fn h_star(c: f64) -> Result<HStarSolution> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NonPositiveC(c));
    }
    let inv_c = 1.0 / c;
    // g(x) ≥ x²/(2(1+x)), so x = 2 + 2/c already has g > 0.
    let mut hi = 2.0 + 2.0 * inv_c;
    while g(hi, inv_c) <= 0.0 {
        hi *= 2.0;
    }
    let x = solve(0.0, hi, inv_c);
    Ok(finish(c, x, Branch::Upper))
}

/// Root with `0 < H < 1`; exists only for `c > 1`.
pub fn h_tilde_star(c: f64) -> Result<HStarSolution> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::NonPositiveC(c));
    }
    if c <= 1.0 {
        return Err(Error::NoLowerBranch(c));
    }
    let inv_c = 1.0 / c;
    // g decreases on (−1, 0): g(−1⁺) = 1 − 1/c > 0 and g(0) = −1/c < 0.
    let x = solve(-1.0 + 1e-15, 0.0, inv_c);
    Ok(finish(c, x, Branch::Lower))
}

/// Bisection on a sign change in `[lo, hi]`, then Newton polishing that is
/// only accepted while it stays inside the bracket and lowers `|g|`.
fn solve(mut lo: f64, mut hi: f64, inv_c: f64) -> f64 {
    let lo_sign = g(lo, inv_c) > 0.0;
    while hi - lo > BISECTION_WIDTH * (1.0 + lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid, inv_c) > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        let slope = x.ln_1p();
        if slope == 0.0 {
            break;
        }
        let next = x - g(x, inv_c) / slope;
        if !(next > lo && next < hi) || g(next, inv_c).abs() >= g(x, inv_c).abs() {
            break;
        }
        x = next;
    }
    x
}

fn finish(c: f64, x: f64, branch: Branch) -> HStarSolution {
    HStarSolution {
        c,
        h: 1.0 + x,
        branch,
        residual: g(x, 1.0 / c).abs(),
    }
}
