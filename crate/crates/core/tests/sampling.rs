use std::collections::BTreeMap;

use massign::experiment::two_sample_chi_square;
use massign::sampling::{
    fresh_throw_count, sample, sample_ball_throwing, sample_binomial_chain, SeedSpec,
};
use massign::CountMatrix;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const SAMPLES: u64 = 100_000;

fn key(x: &CountMatrix) -> u64 {
    // (X11, X12, X21) determines X22 once m is fixed.
    x.get(0, 0) * 49 + x.get(0, 1) * 7 + x.get(1, 0)
}

fn factorial(k: u64) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Exact law of `(X11, X12, X21)` for `n = 2`, `m = 6`.
fn exact_pmf(m: u64) -> BTreeMap<u64, f64> {
    let mut pmf = BTreeMap::new();
    for a in 0..=m {
        for b in 0..=m - a {
            for c in 0..=m - a - b {
                let d = m - a - b - c;
                let p = factorial(m)
                    / (factorial(a) * factorial(b) * factorial(c) * factorial(d))
                    / 4f64.powi(m as i32);
                pmf.insert(a * 49 + b * 7 + c, p);
            }
        }
    }
    pmf
}

/// Goodness of fit against `pmf`, pooling outcomes in ascending probability
/// until each bin expects at least 5 hits.
fn gof_p_value(counts: &BTreeMap<u64, u64>, pmf: &BTreeMap<u64, f64>, samples: u64) -> f64 {
    let mut cells: Vec<(f64, u64)> = pmf
        .iter()
        .map(|(k, &p)| (p * samples as f64, counts.get(k).copied().unwrap_or(0)))
        .collect();
    cells.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut bins: Vec<(f64, u64)> = Vec::new();
    let mut acc = (0.0, 0);
    for (e, o) in cells {
        acc.0 += e;
        acc.1 += o;
        if acc.0 >= 5.0 {
            bins.push(acc);
            acc = (0.0, 0);
        }
    }
    if acc.0 > 0.0 {
        let last = bins.last_mut().unwrap();
        last.0 += acc.0;
        last.1 += acc.1;
    }
    let stat: f64 = bins.iter().map(|&(e, o)| (o as f64 - e).powi(2) / e).sum();
    ChiSquared::new((bins.len() - 1) as f64).unwrap().sf(stat)
}

#[test]
fn ball_throwing_matches_exact_pmf() {
    let pmf = exact_pmf(6);
    assert!((pmf.values().sum::<f64>() - 1.0).abs() < 1e-12);
    let mut counts = BTreeMap::new();
    for k in 0..SAMPLES {
        let x = sample_ball_throwing(2, 6, SeedSpec::new(11, k));
        assert_eq!(x.total(), 6);
        *counts.entry(key(&x)).or_insert(0) += 1;
    }
    let p = gof_p_value(&counts, &pmf, SAMPLES);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn binomial_chain_matches_exact_pmf() {
    let pmf = exact_pmf(6);
    let mut counts = BTreeMap::new();
    for k in 0..SAMPLES {
        let x = sample_binomial_chain(2, 6, SeedSpec::new(12, k));
        assert_eq!(x.total(), 6);
        *counts.entry(key(&x)).or_insert(0) += 1;
    }
    let p = gof_p_value(&counts, &pmf, SAMPLES);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn samplers_agree_at_n2_m6() {
    let a: Vec<u64> = (0..SAMPLES)
        .map(|k| key(&sample_ball_throwing(2, 6, SeedSpec::new(21, k))))
        .collect();
    let b: Vec<u64> = (0..SAMPLES)
        .map(|k| key(&sample_binomial_chain(2, 6, SeedSpec::new(22, k))))
        .collect();
    let t = two_sample_chi_square(&a, &b);
    assert!(t.p_value > 0.001, "{t:?}");
}

#[test]
fn diagonal_cells_are_exchangeable() {
    for sampler in [sample_ball_throwing, sample_binomial_chain] {
        let x11: Vec<u64> = (0..SAMPLES)
            .map(|k| sampler(2, 6, SeedSpec::new(31, 2 * k)).get(0, 0))
            .collect();
        let x22: Vec<u64> = (0..SAMPLES)
            .map(|k| sampler(2, 6, SeedSpec::new(31, 2 * k + 1)).get(1, 1))
            .collect();
        let t = two_sample_chi_square(&x11, &x22);
        assert!(t.p_value > 0.001, "{t:?}");
    }
}

#[test]
fn cells_are_uniform_at_large_m() {
    let m = 100_000u64;
    for (seed, x) in [
        (1, sample_ball_throwing(2, m, SeedSpec::new(41, 0))),
        (2, sample_binomial_chain(2, m, SeedSpec::new(41, 1))),
    ] {
        assert_eq!(x.total(), m);
        for (_, _, c) in x.cells() {
            assert!((c as f64 / m as f64 - 0.25).abs() <= 0.01);
        }
        let e = m as f64 / 4.0;
        let stat: f64 = x.cells().map(|(_, _, c)| (c as f64 - e).powi(2) / e).sum();
        let p = ChiSquared::new(3.0).unwrap().sf(stat);
        assert!(p > 0.001, "sampler {seed}: p = {p}");
    }
}

#[test]
fn binomial_chain_handles_huge_mass() {
    let m = 100_000_000u64;
    let x = sample_binomial_chain(100, m, SeedSpec::new(5, 0));
    assert_eq!(x.total(), m);
    // Each cell is Binomial(m, 1e-4): mean 1e4, sd about 100.
    let mean = m as f64 / 1e4;
    for (_, _, c) in x.cells() {
        assert!((c as f64 - mean).abs() < 700.0, "{c}");
    }
}

#[test]
fn same_seed_same_matrix() {
    for (n, m) in [(3, 5), (50, 100), (20, 2000)] {
        let a = sample(n, m, SeedSpec::new(9, 4), false).matrix;
        let b = sample(n, m, SeedSpec::new(9, 4), false).matrix;
        let c = sample(n, m, SeedSpec::new(9, 5), false).matrix;
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

#[test]
fn fresh_throw_examples() {
    assert_eq!(fresh_throw_count(&[(0, 0), (1, 1), (2, 2)]), 3);
    assert_eq!(fresh_throw_count(&[(0, 0), (0, 1)]), 1);
    assert_eq!(fresh_throw_count(&[(0, 1), (1, 0), (1, 1)]), 2);
    assert!(sample(4, 100, SeedSpec::new(0, 0), false)
        .fresh_throws()
        .is_err());
    assert!(sample(4, 100, SeedSpec::new(0, 0), true)
        .fresh_throws()
        .is_ok());
}
