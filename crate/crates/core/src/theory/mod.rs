//! Sparsity regimes, their ball-count growth rules, and leading-order
//! predictions for the assignment extrema.
//!
//! Every regime is defined through the cell intensity `mp` with `p = n^-2`:
//!
//! | family            | growth rule (default)   | defining limit            |
//! |-------------------|-------------------------|---------------------------|
//! | quasi-Gaussian    | `m = c·n⁴`              | `mp / log n → ∞`          |
//! | critical          | `m = c·n²·log n`        | `mp / log n → c`          |
//! | quasi-Poissonian  | `m = c·n²`              | `mp / log n → 0`          |
//! | rather sparse     | `m = c·n^(2−a)`         | `mp = c·n^(−a)`           |
//! | very sparse       | `m = √n`                | `1 ≪ m ≪ n`               |
//!
//! All logarithms are natural. Ball counts are rounded to the nearest
//! integer, with a floor of 1.

mod predict;
pub mod roots;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use predict::{
    predict_max, predict_max_for, predict_min, predict_min_for, rather_sparse_k, Estimate,
    Prediction, Theorem,
};
pub use roots::{h_star, h_tilde_star, Branch, HStarSolution};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeFamily {
    QuasiGaussian,
    Critical,
    QuasiPoissonian,
    RatherSparse,
    VerySparse,
}

impl RegimeFamily {
    pub const ALL: [RegimeFamily; 5] = [
        RegimeFamily::QuasiGaussian,
        RegimeFamily::Critical,
        RegimeFamily::QuasiPoissonian,
        RegimeFamily::RatherSparse,
        RegimeFamily::VerySparse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegimeFamily::QuasiGaussian => "quasi-gaussian",
            RegimeFamily::Critical => "critical",
            RegimeFamily::QuasiPoissonian => "quasi-poissonian",
            RegimeFamily::RatherSparse => "rather-sparse",
            RegimeFamily::VerySparse => "very-sparse",
        }
    }
}

impl fmt::Display for RegimeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegimeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "quasi-gaussian" | "qg" | "gaussian" => RegimeFamily::QuasiGaussian,
            "critical" | "crit" => RegimeFamily::Critical,
            "quasi-poissonian" | "qp" | "poisson" | "poissonian" => RegimeFamily::QuasiPoissonian,
            "rather-sparse" | "rs" => RegimeFamily::RatherSparse,
            "very-sparse" | "vs" => RegimeFamily::VerySparse,
            _ => return Err(Error::InvalidRegime(format!("unknown family {s:?}"))),
        })
    }
}

/// A regime family with its parameters.
///
/// `c` is the critical constant (critical), the prefactor of `mp = c·n^(−a)`
/// (rather sparse), or an intensity scale (quasi-Gaussian: `m = c·n⁴`;
/// quasi-Poissonian: `mp = c`). It is ignored by the very sparse family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeSpec {
    pub family: RegimeFamily,
    pub c: f64,
    pub a: Option<f64>,
}

impl RegimeSpec {
    pub fn new(family: RegimeFamily, c: Option<f64>, a: Option<f64>) -> Result<Self> {
        let spec = RegimeSpec {
            family,
            c: c.unwrap_or(1.0),
            a: if family == RegimeFamily::RatherSparse {
                a
            } else {
                None
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quasi_gaussian(scale: f64) -> Self {
        RegimeSpec {
            family: RegimeFamily::QuasiGaussian,
            c: scale,
            a: None,
        }
    }

    pub fn critical(c: f64) -> Self {
        RegimeSpec {
            family: RegimeFamily::Critical,
            c,
            a: None,
        }
    }

    pub fn quasi_poissonian(intensity: f64) -> Self {
        RegimeSpec {
            family: RegimeFamily::QuasiPoissonian,
            c: intensity,
            a: None,
        }
    }

    pub fn rather_sparse(c: f64, a: f64) -> Self {
        RegimeSpec {
            family: RegimeFamily::RatherSparse,
            c,
            a: Some(a),
        }
    }

    pub fn very_sparse() -> Self {
        RegimeSpec {
            family: RegimeFamily::VerySparse,
            c: 1.0,
            a: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidRegime(format!(
                "{} requires c > 0, got {}",
                self.family, self.c
            )));
        }
        if self.family == RegimeFamily::RatherSparse {
            match self.a {
                Some(a) if a > 0.0 && a < 1.0 => {}
                Some(a) => {
                    return Err(Error::InvalidRegime(format!(
                        "rather-sparse requires a in (0,1), got {a}"
                    )))
                }
                None => return Err(Error::InvalidRegime("rather-sparse requires a".into())),
            }
        }
        Ok(())
    }
}

/// Ball count for side `n` under the family's growth rule.
pub fn m_of_n(spec: &RegimeSpec, n: usize) -> u64 {
    let nf = n as f64;
    let raw = match spec.family {
        RegimeFamily::QuasiGaussian => spec.c * nf.powi(4),
        RegimeFamily::Critical => spec.c * nf * nf * nf.ln(),
        RegimeFamily::QuasiPoissonian => spec.c * nf * nf,
        RegimeFamily::RatherSparse => spec.c * nf.powf(2.0 - spec.a.unwrap_or(0.5)),
        RegimeFamily::VerySparse => nf.sqrt(),
    };
    (raw.round() as u64).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub n: usize,
    pub m: u64,
    pub mp: f64,
    pub mp_over_log_n: f64,
    /// The quantity the family's defining limit constrains.
    pub metric: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub family: RegimeFamily,
    pub rows: Vec<ConsistencyRow>,
    pub ok: bool,
    pub detail: String,
}

/// Numerically checks the family's defining limit along `n_values`.
///
/// Advisory only. Critical: `mp/log n` within 1% of `c` at the largest `n`.
/// Rather sparse: `mp·n^a` within 1% of `c` at every `n`. Quasi-Gaussian:
/// `mp/log n` increasing. Quasi-Poissonian: `mp/log n` decreasing. Very
/// sparse: `m ≥ 1` and `m/n < 0.1` at the largest `n`.
pub fn classify_consistency(spec: &RegimeSpec, n_values: &[usize]) -> ConsistencyReport {
    let rows: Vec<ConsistencyRow> = n_values
        .iter()
        .map(|&n| {
            let m = m_of_n(spec, n);
            let nf = n as f64;
            let mp = m as f64 / (nf * nf);
            let mp_over_log_n = mp / nf.ln();
            let metric = match spec.family {
                RegimeFamily::RatherSparse => mp * nf.powf(spec.a.unwrap_or(0.5)),
                RegimeFamily::VerySparse => m as f64 / nf,
                _ => mp_over_log_n,
            };
            ConsistencyRow {
                n,
                m,
                mp,
                mp_over_log_n,
                metric,
            }
        })
        .collect();

    let metrics: Vec<f64> = rows.iter().map(|r| r.metric).collect();
    let last = metrics.last().copied().unwrap_or(f64::NAN);
    let (ok, detail) = match spec.family {
        RegimeFamily::Critical => {
            let dev = (last / spec.c - 1.0).abs();
            (
                dev < 0.01,
                format!("relative deviation of mp/log n from c at largest n: {dev:.3e}"),
            )
        }
        RegimeFamily::RatherSparse => {
            let dev = metrics
                .iter()
                .map(|m| (m / spec.c - 1.0).abs())
                .fold(0.0, f64::max);
            (
                dev < 0.01,
                format!("max relative deviation of mp·n^a from c: {dev:.3e}"),
            )
        }
        RegimeFamily::QuasiGaussian => (
            metrics.windows(2).all(|w| w[1] > w[0]),
            format!("mp/log n at largest n: {last:.4}"),
        ),
        RegimeFamily::QuasiPoissonian => (
            metrics.windows(2).all(|w| w[1] < w[0]),
            format!("mp/log n at largest n: {last:.4}"),
        ),
        RegimeFamily::VerySparse => (
            rows.iter().all(|r| r.m >= 1) && last < 0.1,
            format!("m/n at largest n: {last:.4}"),
        ),
    };
    ConsistencyReport {
        family: spec.family,
        rows,
        ok: ok && !n_values.is_empty(),
        detail,
    }
}
