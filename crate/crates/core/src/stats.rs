//! Binomial summaries of replica experiments.

use serde::{Deserialize, Serialize};

/// Standard normal 0.99 quantile, for one-sided 99% limits.
pub const Z_99: f64 = 2.326_347_874_040_841;

/// One-sided Wilson score upper limit for a binomial proportion.
pub fn wilson_upper(successes: u64, trials: u64, z: f64) -> f64 {
    if trials == 0 {
        return 1.0;
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let center = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center + spread) / (1.0 + z2 / n)).clamp(p, 1.0)
}

/// Empirical tail frequency with its 99% Wilson upper limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub exceed: u64,
    pub replicas: u64,
    pub p_hat: f64,
    pub wilson_upper: f64,
}

impl TailEstimate {
    pub fn from_counts(exceed: u64, replicas: u64) -> Self {
        let p_hat = if replicas == 0 { 0.0 } else { exceed as f64 / replicas as f64 };
        TailEstimate { exceed, replicas, p_hat, wilson_upper: wilson_upper(exceed, replicas, Z_99) }
    }
}

/// Tail estimate of `|mean − reference| ≥ a` over a set of replica means.
pub fn tail_from_means(means: &[f64], reference: f64, a: f64) -> TailEstimate {
    let exceed = means.iter().filter(|m| (*m - reference).abs() >= a).count() as u64;
    TailEstimate::from_counts(exceed, means.len() as u64)
}

/// Median (mean of the two central values for even lengths). NaN for empty input.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}
