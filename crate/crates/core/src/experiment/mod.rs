//! Seeded Monte Carlo experiments comparing sampled extrema with predictions.
//!
//! Trial `t` of a plan always draws its matrix from
//! `SeedSpec::new(master_seed, t)`, whatever the thread count, and results are
//! reduced in trial order, so serial and parallel runs produce identical
//! summaries.

mod emit;
pub mod stats;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use emit::{emit, write_csv, write_json, write_svg, OutputFormat, CSV_HEADER};
pub use stats::{mean_std, two_sample_chi_square, wilson_interval, ChiSquareTest};

use crate::error::{Error, Result};
use crate::greedy::{greedy_permutation, greedy_trace, row_max_sum};
use crate::lap::{self, Objective, DENSE_BUDGET};
use crate::matrix::CountMatrix;
use crate::sampling::{sample, SeedSpec};
use crate::theory::{m_of_n, predict_max_for, predict_min_for, Prediction, RegimeSpec};
use crate::zero::{has_perfect_zero_matching, zero_pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    MaxExact,
    MinExact,
    GreedyMax,
    GreedyMin,
    RowMaxSum,
    /// Shorthand for `greedy_max` and `row_max_sum`; expanded by the plan.
    Bracket,
    MinIsZero,
    FreshThrows,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::MaxExact => "max_exact",
            Statistic::MinExact => "min_exact",
            Statistic::GreedyMax => "greedy_max",
            Statistic::GreedyMin => "greedy_min",
            Statistic::RowMaxSum => "row_max_sum",
            Statistic::Bracket => "bracket",
            Statistic::MinIsZero => "min_is_zero",
            Statistic::FreshThrows => "fresh_throws",
        }
    }

    /// Whether the statistic estimates the maximum side of the process.
    pub fn is_max_side(self) -> bool {
        matches!(
            self,
            Statistic::MaxExact
                | Statistic::GreedyMax
                | Statistic::RowMaxSum
                | Statistic::Bracket
                | Statistic::FreshThrows
        )
    }

    /// Parses a comma-separated list such as `max_exact,min_is_zero`.
    pub fn parse_list(s: &str) -> Result<Vec<Statistic>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(
            match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
                "max_exact" | "max" => Statistic::MaxExact,
                "min_exact" | "min" => Statistic::MinExact,
                "greedy_max" => Statistic::GreedyMax,
                "greedy_min" => Statistic::GreedyMin,
                "row_max_sum" => Statistic::RowMaxSum,
                "bracket" => Statistic::Bracket,
                "min_is_zero" => Statistic::MinIsZero,
                "fresh_throws" => Statistic::FreshThrows,
                _ => return Err(Error::InvalidPlan(format!("unknown statistic {s:?}"))),
            },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    Exact,
    Bracket,
    #[default]
    Auto,
}

impl FromStr for SolverMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(SolverMode::Exact),
            "bracket" => Ok(SolverMode::Bracket),
            "auto" => Ok(SolverMode::Auto),
            _ => Err(Error::InvalidPlan(format!("unknown solver mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentPlan {
    /// Regime used for `m(n)` and for predictions; `None` for a bare `(n, m)`.
    pub spec: Option<RegimeSpec>,
    /// Overrides the regime's `m(n)`; required when `spec` is `None`.
    pub m: Option<u64>,
    pub n_list: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    pub stats: Vec<Statistic>,
    pub solver_mode: SolverMode,
}

impl ExperimentPlan {
    pub fn regime(
        spec: RegimeSpec,
        n_list: Vec<usize>,
        trials: u64,
        master_seed: u64,
        stats: Vec<Statistic>,
    ) -> Self {
        ExperimentPlan {
            spec: Some(spec),
            m: None,
            n_list,
            trials,
            master_seed,
            stats,
            solver_mode: SolverMode::Auto,
        }
    }

    pub fn explicit(
        n: usize,
        m: u64,
        trials: u64,
        master_seed: u64,
        stats: Vec<Statistic>,
    ) -> Self {
        ExperimentPlan {
            spec: None,
            m: Some(m),
            n_list: vec![n],
            trials,
            master_seed,
            stats,
            solver_mode: SolverMode::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidPlan("trials must be at least 1".into()));
        }
        if self.n_list.is_empty() {
            return Err(Error::InvalidPlan("n list is empty".into()));
        }
        if self.n_list[0] == 0 || self.n_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPlan(
                "n list must be positive and strictly increasing".into(),
            ));
        }
        if self.stats.is_empty() {
            return Err(Error::InvalidPlan("no statistics requested".into()));
        }
        match (&self.spec, self.m) {
            (None, None) => Err(Error::InvalidPlan("explicit plans need m".into())),
            (Some(spec), _) => spec.validate(),
            _ => Ok(()),
        }
    }

    pub fn m_for(&self, n: usize) -> u64 {
        match (self.m, &self.spec) {
            (Some(m), _) => m,
            (None, Some(spec)) => m_of_n(spec, n),
            (None, None) => 0,
        }
    }

    /// Statistics actually computed at side `n` with ball count `m`, sorted and
    /// deduplicated, after `bracket` expansion and solver-mode substitution.
    ///
    /// Exact mode keeps everything and lets over-budget solves fail. Bracket
    /// mode replaces `max_exact` by `greedy_max` and `row_max_sum`, and
    /// `min_exact` by `greedy_min`. Auto mode behaves like exact mode for
    /// `n ≤ DENSE_BUDGET`; above it keeps `max_exact` only when the sparse
    /// solver applies (`m ≤ n²/4`) and otherwise falls back to bracket.
    pub fn resolved_stats(&self, n: usize, m: u64) -> Result<Vec<Statistic>> {
        let sparse_max = (m as u128) * 4 <= (n as u128) * (n as u128);
        let mut out = Vec::new();
        for &s in &self.stats {
            match s {
                Statistic::Bracket => out.extend([Statistic::GreedyMax, Statistic::RowMaxSum]),
                Statistic::MaxExact => match self.solver_mode {
                    SolverMode::Exact if n > DENSE_BUDGET && !sparse_max => {
                        return Err(Error::OverBudget {
                            n,
                            limit: DENSE_BUDGET,
                        })
                    }
                    SolverMode::Bracket => out.extend([Statistic::GreedyMax, Statistic::RowMaxSum]),
                    SolverMode::Auto if n > DENSE_BUDGET && !sparse_max => {
                        out.extend([Statistic::GreedyMax, Statistic::RowMaxSum])
                    }
                    _ => out.push(s),
                },
                Statistic::MinExact => match self.solver_mode {
                    SolverMode::Bracket => out.push(Statistic::GreedyMin),
                    SolverMode::Auto if n > DENSE_BUDGET => out.push(Statistic::GreedyMin),
                    _ => out.push(s),
                },
                _ => out.push(s),
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatSummary {
    pub statistic: Statistic,
    pub mean: f64,
    pub std: f64,
    pub stderr: f64,
    pub prediction: Option<Prediction>,
    /// `mean / prediction` for exact extrema with a point prediction.
    pub ratio: Option<f64>,
    pub zero_fraction: Option<f64>,
    pub zero_ci: Option<(f64, f64)>,
    /// Per-trial values in trial order.
    #[serde(skip)]
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub spec: Option<RegimeSpec>,
    pub n: usize,
    pub m: u64,
    pub trials: u64,
    pub seed: u64,
    pub stats: Vec<StatSummary>,
}

impl ExperimentSummary {
    pub fn stat(&self, s: Statistic) -> Option<&StatSummary> {
        self.stats.iter().find(|x| x.statistic == s)
    }
}

/// Runs every trial of `plan` for each `n` on the current rayon pool.
///
/// Per-trial coherence between the computed statistics is checked and a
/// violation aborts the run with [`Error::Coherence`].
pub fn run_trials(plan: &ExperimentPlan) -> Result<Vec<ExperimentSummary>> {
    plan.validate()?;
    plan.n_list.iter().map(|&n| run_one_side(plan, n)).collect()
}

fn run_one_side(plan: &ExperimentPlan, n: usize) -> Result<ExperimentSummary> {
    let m = plan.m_for(n);
    let stats = plan.resolved_stats(n, m)?;
    let outcomes: Vec<Result<Vec<u64>>> = (0..plan.trials)
        .into_par_iter()
        .map(|t| run_trial(n, m, &stats, SeedSpec::new(plan.master_seed, t), t))
        .collect();
    let mut columns = vec![Vec::with_capacity(plan.trials as usize); stats.len()];
    for outcome in outcomes {
        for (col, v) in columns.iter_mut().zip(outcome?) {
            col.push(v);
        }
    }

    let summaries = stats
        .iter()
        .zip(columns)
        .map(|(&s, values)| summarize(plan.spec.as_ref(), n, m, s, values))
        .collect();
    Ok(ExperimentSummary {
        spec: plan.spec,
        n,
        m,
        trials: plan.trials,
        seed: plan.master_seed,
        stats: summaries,
    })
}

fn summarize(
    spec: Option<&RegimeSpec>,
    n: usize,
    m: u64,
    s: Statistic,
    values: Vec<u64>,
) -> StatSummary {
    let floats: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    let (mean, std) = mean_std(&floats);
    let stderr = std / (values.len() as f64).sqrt();
    let prediction = spec.map(|spec| {
        if s.is_max_side() {
            predict_max_for(spec, n, m)
        } else {
            predict_min_for(spec, n, m)
        }
    });
    let ratio = match s {
        Statistic::MaxExact | Statistic::MinExact => prediction
            .and_then(|p| p.estimate.point())
            .filter(|&v| v != 0.0)
            .map(|v| mean / v),
        _ => None,
    };
    let (zero_fraction, zero_ci) = if s == Statistic::MinIsZero {
        let zeros = values.iter().filter(|&&v| v == 1).count() as u64;
        (
            Some(mean),
            Some(wilson_interval(zeros, values.len() as u64)),
        )
    } else {
        (None, None)
    };
    StatSummary {
        statistic: s,
        mean,
        std,
        stderr,
        prediction,
        ratio,
        zero_fraction,
        zero_ci,
        values,
    }
}

/// The matrix trial `trial` of `plan` draws at side `n`.
pub fn trial_matrix(plan: &ExperimentPlan, n: usize, trial: u64) -> Result<CountMatrix> {
    let m = plan.m_for(n);
    let traced = plan.resolved_stats(n, m)?.contains(&Statistic::FreshThrows);
    Ok(sample(n, m, SeedSpec::new(plan.master_seed, trial), traced).matrix)
}

/// Computes `stats` (already resolved and sorted) on one sampled matrix.
fn run_trial(
    n: usize,
    m: u64,
    stats: &[Statistic],
    seed: SeedSpec,
    trial: u64,
) -> Result<Vec<u64>> {
    let drawn = sample(n, m, seed, stats.contains(&Statistic::FreshThrows));
    let x = &drawn.matrix;
    if x.total() != m {
        return Err(Error::Coherence {
            n,
            trial,
            what: format!("sampled mass {} differs from m = {m}", x.total()),
        });
    }
    let mut values = Values::default();
    for &s in stats {
        let v = match s {
            Statistic::MaxExact => lap::solve(x, Objective::Max)?.value,
            Statistic::MinExact => lap::solve(x, Objective::Min)?.value,
            Statistic::GreedyMax => greedy_permutation(x, Objective::Max).value,
            Statistic::GreedyMin => greedy_permutation(x, Objective::Min).value,
            Statistic::RowMaxSum => row_max_sum(x),
            Statistic::MinIsZero => has_perfect_zero_matching(&zero_pattern(x)) as u64,
            Statistic::FreshThrows => drawn.fresh_throws()?,
            Statistic::Bracket => unreachable!("bracket is expanded by the plan"),
        };
        values.set(s, v);
    }
    values.check(x, trial)?;
    Ok(stats
        .iter()
        .map(|&s| values.get(s).expect("computed above"))
        .collect())
}

#[derive(Default)]
struct Values {
    max_exact: Option<u64>,
    min_exact: Option<u64>,
    greedy_max: Option<u64>,
    greedy_min: Option<u64>,
    row_max_sum: Option<u64>,
    min_is_zero: Option<u64>,
    fresh_throws: Option<u64>,
}

impl Values {
    fn slot(&mut self, s: Statistic) -> &mut Option<u64> {
        match s {
            Statistic::MaxExact => &mut self.max_exact,
            Statistic::MinExact => &mut self.min_exact,
            Statistic::GreedyMax => &mut self.greedy_max,
            Statistic::GreedyMin => &mut self.greedy_min,
            Statistic::RowMaxSum => &mut self.row_max_sum,
            Statistic::MinIsZero => &mut self.min_is_zero,
            Statistic::FreshThrows => &mut self.fresh_throws,
            Statistic::Bracket => unreachable!("bracket is expanded by the plan"),
        }
    }

    fn set(&mut self, s: Statistic, v: u64) {
        *self.slot(s) = Some(v);
    }

    fn get(&mut self, s: Statistic) -> Option<u64> {
        *self.slot(s)
    }

    fn check(&self, x: &CountMatrix, trial: u64) -> Result<()> {
        let n = x.n() as u64;
        let m = x.total();
        let fail = |what: String| {
            Err(Error::Coherence {
                n: x.n(),
                trial,
                what,
            })
        };
        if let Some(max) = self.max_exact {
            if max < m.div_ceil(n) || max > m {
                return fail(format!(
                    "max_exact {max} outside [ceil(m/n), m] with m = {m}"
                ));
            }
            if let Some(g) = self.greedy_max.filter(|&g| g > max) {
                return fail(format!("greedy_max {g} > max_exact {max}"));
            }
            if let Some(r) = self.row_max_sum.filter(|&r| r < max) {
                return fail(format!("row_max_sum {r} < max_exact {max}"));
            }
            if let Some(f) = self.fresh_throws.filter(|&f| f > max) {
                return fail(format!("fresh_throws {f} > max_exact {max}"));
            }
        }
        if let (Some(g), Some(r)) = (self.greedy_max, self.row_max_sum) {
            if g > r {
                return fail(format!("greedy_max {g} > row_max_sum {r}"));
            }
        }
        if let Some(min) = self.min_exact {
            if min > m / n {
                return fail(format!("min_exact {min} > floor(m/n) = {}", m / n));
            }
            if let Some(z) = self.min_is_zero {
                if (z == 1) != (min == 0) {
                    return fail(format!("min_is_zero = {z} but min_exact = {min}"));
                }
            }
            if let Some(g) = self.greedy_min.filter(|&g| g < min) {
                return fail(format!("greedy_min {g} < min_exact {min}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroProbResult {
    pub n: usize,
    pub m: u64,
    pub trials: u64,
    pub zeros: u64,
    pub zero_fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Per-trial verdicts in trial order.
    #[serde(skip)]
    pub verdicts: Vec<bool>,
}

/// Fraction of trials whose minimum is zero, decided by zero-pattern matching
/// alone. Trial seeds follow [`run_trials`], so verdicts line up with a
/// `min_exact` run on the same `(n, m, seed)`.
pub fn zero_prob(n: usize, m: u64, trials: u64, master_seed: u64) -> Result<ZeroProbResult> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidPlan(
            "zero_prob needs n ≥ 1 and trials ≥ 1".into(),
        ));
    }
    let verdicts: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let x = sample(n, m, SeedSpec::new(master_seed, t), false).matrix;
            has_perfect_zero_matching(&zero_pattern(&x))
        })
        .collect();
    let zeros = verdicts.iter().filter(|&&z| z).count() as u64;
    let (ci_low, ci_high) = wilson_interval(zeros, trials);
    Ok(ZeroProbResult {
        n,
        m,
        trials,
        zeros,
        zero_fraction: zeros as f64 / trials as f64,
        ci_low,
        ci_high,
        verdicts,
    })
}

/// Largest `n` and `m` accepted by [`lemma1_test`].
pub const LEMMA1_MAX_N: usize = 6;
pub const LEMMA1_MAX_M: u64 = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Result {
    pub n: usize,
    pub m: u64,
    pub step: usize,
    pub samples: u64,
    pub greedy_mean: f64,
    pub reference_mean: f64,
    #[serde(flatten)]
    pub test: ChiSquareTest,
}

/// Compares the greedy maximum picked at row `step` (1-based) with the
/// maximum over the first `n − step + 1` entries of the same row in an
/// independent matrix.
///
/// Sample `k` uses stream `2k` for the greedy side and `2k + 1` for the
/// reference side. The two empirical laws are compared with
/// [`two_sample_chi_square`].
pub fn lemma1_test(n: usize, m: u64, step: usize, samples: u64, seed: u64) -> Result<Lemma1Result> {
    if n == 0 || n > LEMMA1_MAX_N || m > LEMMA1_MAX_M {
        return Err(Error::InvalidPlan(format!(
            "lemma1 test needs 1 ≤ n ≤ {LEMMA1_MAX_N} and m ≤ {LEMMA1_MAX_M}"
        )));
    }
    if step == 0 || step > n || samples == 0 {
        return Err(Error::InvalidPlan(format!(
            "step must lie in [1, {n}] and samples ≥ 1"
        )));
    }
    let row = step - 1;
    let width = n - row;
    let pairs: Vec<(u64, u64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let a = sample(n, m, SeedSpec::new(seed, 2 * k), false).matrix;
            let (_, picked) = greedy_trace(&a, Objective::Max);
            let b = sample(n, m, SeedSpec::new(seed, 2 * k + 1), false).matrix;
            let reference = (0..width).map(|j| b.get(row, j)).max().unwrap_or(0);
            (picked[row], reference)
        })
        .collect();
    let (greedy, reference): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
    let avg = |v: &[u64]| v.iter().sum::<u64>() as f64 / v.len() as f64;
    Ok(Lemma1Result {
        n,
        m,
        step,
        samples,
        greedy_mean: avg(&greedy),
        reference_mean: avg(&reference),
        test: two_sample_chi_square(&greedy, &reference),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{Estimate, RegimeFamily};

    #[test]
    fn one_by_one_is_deterministic() {
        let mut plan = ExperimentPlan::explicit(1, 5, 3, 7, vec![Statistic::MaxExact]);
        plan.spec = Some(RegimeSpec::very_sparse());
        let s = &run_trials(&plan).unwrap()[0];
        let st = s.stat(Statistic::MaxExact).unwrap();
        assert_eq!(st.mean, 5.0);
        assert_eq!(st.std, 0.0);
        assert_eq!(st.ratio, Some(1.0));
    }

    #[test]
    fn empty_matrix_min_is_zero() {
        let plan =
            ExperimentPlan::explicit(2, 0, 10, 1, vec![Statistic::MinIsZero, Statistic::MinExact]);
        let s = &run_trials(&plan).unwrap()[0];
        let z = s.stat(Statistic::MinIsZero).unwrap();
        assert_eq!(z.zero_fraction, Some(1.0));
        let (lo, hi) = z.zero_ci.unwrap();
        assert!(lo < 1.0 && hi == 1.0);
        assert_eq!(zero_prob(2, 0, 10, 1).unwrap().zero_fraction, 1.0);
    }

    #[test]
    fn bracket_expands() {
        let plan =
            ExperimentPlan::explicit(5, 20, 4, 1, vec![Statistic::Bracket, Statistic::MaxExact]);
        let got = plan.resolved_stats(5, 20).unwrap();
        assert_eq!(
            got,
            vec![
                Statistic::MaxExact,
                Statistic::GreedyMax,
                Statistic::RowMaxSum
            ]
        );
        let mut b = plan.clone();
        b.solver_mode = SolverMode::Bracket;
        assert_eq!(
            b.resolved_stats(5, 20).unwrap(),
            vec![Statistic::GreedyMax, Statistic::RowMaxSum]
        );
        let s = &run_trials(&plan).unwrap()[0];
        assert_eq!(s.stats.len(), 3);
    }

    #[test]
    fn exact_mode_over_budget() {
        let n = DENSE_BUDGET + 1;
        let mut plan = ExperimentPlan::explicit(n, (n * n) as u64, 1, 0, vec![Statistic::MaxExact]);
        plan.solver_mode = SolverMode::Exact;
        assert!(matches!(
            plan.resolved_stats(n, plan.m_for(n)),
            Err(Error::OverBudget { .. })
        ));
        plan.solver_mode = SolverMode::Auto;
        assert_eq!(
            plan.resolved_stats(n, plan.m_for(n)).unwrap(),
            vec![Statistic::GreedyMax, Statistic::RowMaxSum]
        );
        // Sparse enough for the sparse solver: stays exact.
        assert_eq!(
            plan.resolved_stats(n, 1000).unwrap(),
            vec![Statistic::MaxExact]
        );
    }

    #[test]
    fn plan_validation() {
        let mut plan = ExperimentPlan::explicit(3, 4, 0, 0, vec![Statistic::MaxExact]);
        assert!(plan.validate().is_err());
        plan.trials = 1;
        plan.n_list = vec![4, 3];
        assert!(plan.validate().is_err());
        plan.n_list = vec![3];
        assert!(plan.validate().is_ok());
        plan.m = None;
        assert!(plan.validate().is_err());
    }

    #[test]
    fn thread_count_does_not_matter() {
        let spec = RegimeSpec::new(RegimeFamily::Critical, Some(1.5), None).unwrap();
        let plan = ExperimentPlan::regime(
            spec,
            vec![8, 16],
            12,
            99,
            vec![
                Statistic::MaxExact,
                Statistic::MinExact,
                Statistic::MinIsZero,
                Statistic::FreshThrows,
            ],
        );
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let par = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = serial.install(|| run_trials(&plan)).unwrap();
        let b = par.install(|| run_trials(&plan)).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            a[0].stat(Statistic::MinExact)
                .unwrap()
                .prediction
                .unwrap()
                .estimate,
            Estimate::Point { .. }
        ));
    }

    #[test]
    fn lemma1_first_step_and_guards() {
        let r = lemma1_test(4, 12, 1, 20_000, 5).unwrap();
        assert!(r.test.p_value > 0.001, "{r:?}");
        assert!(lemma1_test(7, 10, 1, 10, 0).is_err());
        assert!(lemma1_test(4, 31, 1, 10, 0).is_err());
        assert!(lemma1_test(4, 10, 5, 10, 0).is_err());
    }

    #[test]
    fn lemma1_detects_a_wrong_reference() {
        // Step 1 greedy picks the row maximum over all n columns; the
        // reference at step 3 only looks at n − 2 of them, so the laws differ.
        let n = 5;
        let m = 20;
        let greedy: Vec<u64> = (0..20_000)
            .map(|k| {
                let a = sample(n, m, SeedSpec::new(3, 2 * k), false).matrix;
                greedy_trace(&a, Objective::Max).1[0]
            })
            .collect();
        let reference: Vec<u64> = (0..20_000)
            .map(|k| {
                let b = sample(n, m, SeedSpec::new(3, 2 * k + 1), false).matrix;
                (0..n - 2).map(|j| b.get(0, j)).max().unwrap()
            })
            .collect();
        assert!(two_sample_chi_square(&greedy, &reference).p_value < 1e-6);
    }
}
