use serde::Serialize;

use super::roots::{h_star, h_tilde_star};
use super::{m_of_n, RegimeFamily, RegimeSpec};

/// Which asymptotic law a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    /// Quasi-Gaussian: both extrema are `m/n`.
    T1,
    /// Critical: max `c·H*·n·log n`, min `c·H̃*·n·log n` for `c > 1`.
    T2,
    /// Zero minimum with probability tending to one when `mp/log n ≤ c < 1`.
    T3,
    /// Quasi-Poissonian max `n log n / log(log n / mp)`.
    T4,
    /// Rather sparse max `k·n`, or between `(k−1)·n` and `k·n` when `a = 1/k`.
    T5,
    /// Very sparse max `m`.
    T6,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Estimate {
    Point { value: f64 },
    Interval { low: f64, high: f64 },
    ZeroWhp,
    NotCovered,
}

impl Estimate {
    pub fn kind(&self) -> &'static str {
        match self {
            Estimate::Point { .. } => "point",
            Estimate::Interval { .. } => "interval",
            Estimate::ZeroWhp => "zero_whp",
            Estimate::NotCovered => "not_covered",
        }
    }

    pub fn point(&self) -> Option<f64> {
        match *self {
            Estimate::Point { value } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    #[serde(flatten)]
    pub estimate: Estimate,
    pub theorem: Theorem,
    pub n: usize,
    pub m: u64,
}

/// `k` with `1/(k+1) < a < 1/k`, and whether `a = 1/k` exactly (the irregular
/// case, where `k = 1/a`).
pub fn rather_sparse_k(a: f64) -> (u64, bool) {
    let inv = 1.0 / a;
    let nearest = inv.round();
    if (inv - nearest).abs() <= 1e-9 * inv {
        (nearest as u64, true)
    } else {
        (inv.floor() as u64, false)
    }
}

pub fn predict_max(spec: &RegimeSpec, n: usize) -> Prediction {
    predict_max_for(spec, n, m_of_n(spec, n))
}

pub fn predict_min(spec: &RegimeSpec, n: usize) -> Prediction {
    predict_min_for(spec, n, m_of_n(spec, n))
}

/// Leading-order `E max_σ S(σ)` at an explicit ball count `m`.
///
/// The quasi-Poissonian value uses the finite-`n` expression with the actual
/// `mp = m/n²`; if `log n / mp ≤ 1` the formula has no meaning and the result
/// is `NotCovered`.
pub fn predict_max_for(spec: &RegimeSpec, n: usize, m: u64) -> Prediction {
    let nf = n as f64;
    let log_n = nf.ln();
    let (estimate, theorem) = match spec.family {
        RegimeFamily::QuasiGaussian => (point(m as f64 / nf), Theorem::T1),
        RegimeFamily::Critical => {
            let est = match h_star(spec.c) {
                Ok(h) => point(spec.c * h.h * nf * log_n),
                Err(_) => Estimate::NotCovered,
            };
            (est, Theorem::T2)
        }
        RegimeFamily::QuasiPoissonian => {
            let mp = m as f64 / (nf * nf);
            let denom = (log_n / mp).ln();
            let est = if denom > 0.0 && denom.is_finite() {
                point(nf * log_n / denom)
            } else {
                Estimate::NotCovered
            };
            (est, Theorem::T4)
        }
        RegimeFamily::RatherSparse => {
            let est = match spec.a {
                Some(a) if a > 0.0 && a < 1.0 => {
                    let (k, irregular) = rather_sparse_k(a);
                    if irregular {
                        Estimate::Interval {
                            low: (k - 1) as f64 * nf,
                            high: k as f64 * nf,
                        }
                    } else {
                        point(k as f64 * nf)
                    }
                }
                _ => Estimate::NotCovered,
            };
            (est, Theorem::T5)
        }
        RegimeFamily::VerySparse => (point(m as f64), Theorem::T6),
    };
    Prediction {
        estimate,
        theorem,
        n,
        m,
    }
}

/// Leading-order `E min_σ S(σ)` at an explicit ball count `m`.
///
/// Critical `c < 1` and every sparser family predict a zero minimum with
/// high probability; the boundary `c = 1` is reported as `NotCovered`.
pub fn predict_min_for(spec: &RegimeSpec, n: usize, m: u64) -> Prediction {
    let nf = n as f64;
    let (estimate, theorem) = match spec.family {
        RegimeFamily::QuasiGaussian => (point(m as f64 / nf), Theorem::T1),
        RegimeFamily::Critical if spec.c > 1.0 => {
            let est = match h_tilde_star(spec.c) {
                Ok(h) => point(spec.c * h.h * nf * nf.ln()),
                Err(_) => Estimate::NotCovered,
            };
            (est, Theorem::T2)
        }
        RegimeFamily::Critical if spec.c < 1.0 => (Estimate::ZeroWhp, Theorem::T3),
        RegimeFamily::Critical => (Estimate::NotCovered, Theorem::T3),
        RegimeFamily::QuasiPoissonian | RegimeFamily::RatherSparse | RegimeFamily::VerySparse => {
            (Estimate::ZeroWhp, Theorem::T3)
        }
    };
    Prediction {
        estimate,
        theorem,
        n,
        m,
    }
}

fn point(value: f64) -> Estimate {
    Estimate::Point { value }
}
