//! Small statistical helpers: Wilson intervals and a two-sample chi-square.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials` at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // Clamp rounding noise so the interval always contains the estimate.
    (
        (center - half).max(0.0).min(phat),
        (center + half).min(1.0).max(phat),
    )
}

/// Mean and sample standard deviation (`n − 1` denominator; zero for one value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: u64,
    pub p_value: f64,
    /// Inclusive lower edge of each pooled bin; the last bin is open-ended.
    pub bin_edges: Vec<u64>,
}

/// Two-sample chi-square homogeneity test on non-negative integer samples.
///
/// Values are binned individually, then adjacent bins are pooled from the
/// low end until every bin has expected count at least 5 in both samples;
/// an undersized remainder is folded into the last bin.
pub fn two_sample_chi_square(a: &[u64], b: &[u64]) -> ChiSquareTest {
    let top = a.iter().chain(b).copied().max().unwrap_or(0) as usize;
    let mut ca = vec![0u64; top + 1];
    let mut cb = vec![0u64; top + 1];
    for &x in a {
        ca[x as usize] += 1;
    }
    for &x in b {
        cb[x as usize] += 1;
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let total = na + nb;
    let min_share = na.min(nb) / total;

    let mut bins: Vec<(u64, u64, u64)> = Vec::new();
    let mut acc = (0u64, 0u64, 0u64);
    let mut open = false;
    for v in 0..=top {
        if !open {
            acc = (v as u64, 0, 0);
            open = true;
        }
        acc.1 += ca[v];
        acc.2 += cb[v];
        if (acc.1 + acc.2) as f64 * min_share >= 5.0 {
            bins.push(acc);
            open = false;
        }
    }
    if open {
        match bins.last_mut() {
            Some(last) => {
                last.1 += acc.1;
                last.2 += acc.2;
            }
            None => bins.push(acc),
        }
    }

    if bins.len() < 2 || na == 0.0 || nb == 0.0 {
        return ChiSquareTest {
            statistic: 0.0,
            df: 0,
            p_value: 1.0,
            bin_edges: bins.iter().map(|b| b.0).collect(),
        };
    }
    let ka = (nb / na).sqrt();
    let kb = (na / nb).sqrt();
    let statistic: f64 = bins
        .iter()
        .map(|&(_, x, y)| {
            let d = x as f64 * ka - y as f64 * kb;
            d * d / (x + y) as f64
        })
        .sum();
    let df = bins.len() as u64 - 1;
    let p_value = ChiSquared::new(df as f64)
        .map(|d| d.sf(statistic))
        .unwrap_or(f64::NAN);
    ChiSquareTest {
        statistic,
        df,
        p_value,
        bin_edges: bins.iter().map(|b| b.0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        for n in [1u64, 2, 10, 30, 1000] {
            for k in 0..=n.min(40) {
                let (lo, hi) = wilson_interval(k, n);
                let p = k as f64 / n as f64;
                assert!(lo <= p && p <= hi && lo >= 0.0 && hi <= 1.0, "{k}/{n}");
            }
        }
        let (lo, hi) = wilson_interval(30, 30);
        assert_eq!(hi, 1.0);
        assert!((lo - 0.8865).abs() < 1e-3);
    }

    #[test]
    fn mean_std_basics() {
        assert_eq!(mean_std(&[5.0, 5.0, 5.0]), (5.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn identical_samples_have_zero_statistic() {
        let a: Vec<u64> = (0..1000).map(|i| i % 7).collect();
        let t = two_sample_chi_square(&a, &a);
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.df, 6);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_samples_are_rejected() {
        let a: Vec<u64> = (0..1000).map(|i| i % 5).collect();
        let b: Vec<u64> = (0..1000).map(|i| i % 5 + 1).collect();
        assert!(two_sample_chi_square(&a, &b).p_value < 1e-10);
    }

    #[test]
    fn sparse_tail_is_pooled() {
        let mut a = vec![0u64; 100];
        a.push(9);
        let t = two_sample_chi_square(&a, &a.clone());
        assert_eq!(t.bin_edges, vec![0]);
        assert_eq!(t.p_value, 1.0);
    }
}
