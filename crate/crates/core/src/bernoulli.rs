//! Bernoulli convolutions as the stationary law of the IFS
//! `T0(x) = λx − λ`, `T1(x) = λx + λ` on `I_λ = [−λ/(1−λ), λ/(1−λ)]`.
//!
//! For `λ > 1/2` the averaging operator is not itself a contraction on BV,
//! so estimation runs on the `ℓ`-block chain `X_{k+1} = T_ω(X_k)` with `ω`
//! uniform on `{0,1}^ℓ` and `λ^ℓ < 1/2`. Observables are step functions, for
//! which the block transfer operator and the variation are computed exactly.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::bv_corollary_bound;
use crate::certificate::{bernoulli_certificate_with_ell, min_ell, GapCertificate};
use crate::error::{domain, Error, Result};
use crate::output::{fmt_f64, DeviationPoint};
use crate::rng::{replica_stream, with_threads};
use crate::stats::{median, tail_from_means};

/// Slack allowed when checking that a point lies in the attractor.
const ATTRACTOR_SLACK: f64 = 1e-12;
/// Breakpoints of a transferred function closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;
/// Default cap on breakpoints produced by [`apply_block_operator`].
pub const DEFAULT_BREAKPOINT_CAP: usize = 1_000_000;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("lambda must lie in (0, 1), got {lambda}")))
    }
}

/// Endpoints of `I_λ`, the fixed points of `T0` and `T1`.
pub fn attractor(lambda: f64) -> (f64, f64) {
    let half = lambda / (1.0 - lambda);
    (-half, half)
}

/// Contraction ratio and block length of the IFS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IfsParams {
    pub lambda: f64,
    pub ell: u32,
}

impl IfsParams {
    /// Uses the smallest block length with `λ^ℓ < 1/2`.
    pub fn new(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(IfsParams { lambda, ell: min_ell(lambda)? })
    }

    pub fn with_ell(lambda: f64, ell: u32) -> Result<Self> {
        bernoulli_certificate_with_ell(lambda, ell)?;
        Ok(IfsParams { lambda, ell })
    }

    pub fn attractor(&self) -> (f64, f64) {
        attractor(self.lambda)
    }

    pub fn certificate(&self) -> Result<GapCertificate> {
        bernoulli_certificate_with_ell(self.lambda, self.ell)
    }

    /// `λ^ℓ`, the slope of every block map.
    pub fn block_scale(&self) -> f64 {
        self.lambda.powi(self.ell as i32)
    }

    /// Offset `c_ω = Σ_j s(ω_j)·λ^j` of `T_ω(x) = λ^ℓ x + c_ω`, where bit
    /// `j − 1` of `word` is the letter `ω_j`.
    pub fn block_offset(&self, word: u64) -> f64 {
        offset(self.lambda, word, self.ell)
    }

    fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.attractor();
        x >= lo - ATTRACTOR_SLACK && x <= hi + ATTRACTOR_SLACK
    }
}

fn offset(lambda: f64, word: u64, len: u32) -> f64 {
    let mut power = 1.0;
    let mut c = 0.0;
    for j in 0..len {
        power *= lambda;
        c += if (word >> j) & 1 == 1 { power } else { -power };
    }
    c
}

/// `T_ω(x) = T_{ω1} ∘ ⋯ ∘ T_{ωk}(x) = λ^k x + Σ_j s(ω_j) λ^j`, with
/// `s(0) = −1`, `s(1) = +1`.
pub fn apply_word(params: &IfsParams, word: &[bool], x: f64) -> Result<f64> {
    if !params.contains(x) {
        return Err(domain(format!("point {x} outside the attractor")));
    }
    // Innermost map first.
    Ok(word.iter().rev().fold(x, |y, &bit| {
        let s = if bit { 1.0 } else { -1.0 };
        params.lambda * y + s * params.lambda
    }))
}

/// One step of the `ℓ`-block chain: `ω` uniform on `{0,1}^ℓ`, `x ↦ T_ω(x)`.
pub fn block_step<R: Rng + ?Sized>(params: &IfsParams, x: f64, rng: &mut R) -> f64 {
    let mut y = x;
    let mut remaining = params.ell;
    while remaining > 0 {
        let take = remaining.min(64);
        let bits = rng.gen::<u64>();
        for j in 0..take {
            y = if (bits >> j) & 1 == 1 {
                params.lambda * y + params.lambda
            } else {
                params.lambda * y - params.lambda
            };
        }
        remaining -= take;
    }
    y
}

/// Piecewise-constant function: `values[i]` holds on
/// `[breakpoints[i−1], breakpoints[i])`; the last piece is closed on the right.
/// A query exactly on a breakpoint takes the right piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidStepFunction(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidStepFunction("non-finite entry".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStepFunction("breakpoints must be strictly increasing".into()));
        }
        Ok(StepFunction { breakpoints, values })
    }

    pub fn constant(c: f64) -> Self {
        StepFunction { breakpoints: Vec::new(), values: vec![c] }
    }

    /// `1_{x ≥ t}`.
    pub fn indicator_from(t: f64) -> Self {
        StepFunction { breakpoints: vec![t], values: vec![0.0, 1.0] }
    }

    /// `sign(x)` with `sign(0) = 1` (right-piece convention).
    pub fn sign() -> Self {
        StepFunction { breakpoints: vec![0.0], values: vec![-1.0, 1.0] }
    }

    /// Step approximation of `g` on `[lo, hi]` with `pieces` equal pieces,
    /// each valued at its midpoint.
    pub fn discretize(g: impl Fn(f64) -> f64, lo: f64, hi: f64, pieces: usize) -> Result<Self> {
        if pieces == 0 || !(lo < hi) {
            return Err(domain("discretization needs pieces >= 1 and lo < hi"));
        }
        let h = (hi - lo) / pieces as f64;
        let breakpoints = (1..pieces).map(|i| lo + h * i as f64).collect();
        let values = (0..pieces).map(|i| g(lo + h * (i as f64 + 0.5))).collect();
        StepFunction::new(breakpoints, values)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: StepFunction = serde_json::from_str(s)?;
        StepFunction::new(raw.breakpoints, raw.values)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.values[self.breakpoints.partition_point(|b| *b <= x)]
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Sum of absolute jumps.
    pub fn variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// Variation restricted to `[lo, hi]` (jumps at points in `(lo, hi]`).
    pub fn variation_on(&self, lo: f64, hi: f64) -> f64 {
        self.breakpoints
            .iter()
            .enumerate()
            .filter(|(_, b)| **b > lo && **b <= hi)
            .map(|(i, _)| (self.values[i + 1] - self.values[i]).abs())
            .sum()
    }

    fn check_interior(&self, params: &IfsParams) -> Result<()> {
        let (lo, hi) = params.attractor();
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(first), Some(last)) if *first <= lo || *last >= hi => Err(Error::InvalidStepFunction(
                format!("breakpoints must lie strictly inside ({lo}, {hi})"),
            )),
            _ => Ok(()),
        }
    }
}

/// `(sup, var, sup + var)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BvNorm {
    pub sup: f64,
    pub var: f64,
    pub norm: f64,
}

pub fn bv_norm(f: &StepFunction) -> BvNorm {
    let (sup, var) = (f.sup(), f.variation());
    BvNorm { sup, var, norm: sup + var }
}

/// Exact `L0^ℓ f = 2^{−ℓ}·Σ_ω f∘T_ω` on `I_λ`, using the default breakpoint cap.
pub fn apply_block_operator(params: &IfsParams, f: &StepFunction) -> Result<StepFunction> {
    apply_block_operator_capped(params, f, DEFAULT_BREAKPOINT_CAP)
}

/// As [`apply_block_operator`] with an explicit cap on the number of words
/// and produced breakpoints.
///
/// Each `f∘T_ω` is a step function with jumps at `T_ω^{−1}(b)`; only preimages
/// strictly inside `I_λ` are kept. The sum is assembled from its value at the
/// left endpoint plus the merged jumps.
pub fn apply_block_operator_capped(
    params: &IfsParams,
    f: &StepFunction,
    cap: usize,
) -> Result<StepFunction> {
    f.check_interior(params)?;
    let words = 1u128 << params.ell;
    let candidate = words.saturating_mul(f.breakpoints.len().max(1) as u128);
    if candidate > cap as u128 {
        return Err(Error::Overflow { count: candidate.min(usize::MAX as u128) as usize, cap });
    }
    let words = words as u64;
    let (lo, hi) = params.attractor();
    let scale = params.block_scale();
    let weight = 0.5f64.powi(params.ell as i32);

    let mut left_value = 0.0;
    let mut events: Vec<(f64, f64)> = Vec::new();
    for w in 0..words {
        let c = params.block_offset(w);
        let (t_lo, t_hi) = (scale * lo + c, scale * hi + c);
        left_value += f.eval(t_lo);
        for (j, &b) in f.breakpoints.iter().enumerate() {
            if b > t_lo && b < t_hi {
                let x = ((b - c) / scale).clamp(lo, hi);
                events.push((x, (f.values[j + 1] - f.values[j]) * weight));
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut breakpoints = Vec::new();
    let mut values = vec![left_value * weight];
    let mut i = 0;
    while i < events.len() {
        let anchor = events[i].0;
        let mut jump = 0.0;
        while i < events.len() && events[i].0 - anchor <= MERGE_TOL {
            jump += events[i].1;
            i += 1;
        }
        if jump != 0.0 && anchor > lo && anchor < hi {
            let next = values[values.len() - 1] + jump;
            breakpoints.push(anchor);
            values.push(next);
        }
    }
    if breakpoints.len() > cap {
        return Err(Error::Overflow { count: breakpoints.len(), cap });
    }
    StepFunction::new(breakpoints, values)
}

/// Whether `T_{0…0}(I_λ)` and `T_{1…1}(I_λ)` are disjoint, by endpoint arithmetic.
pub fn extreme_images_disjoint(params: &IfsParams) -> bool {
    let (lo, hi) = params.attractor();
    let scale = params.block_scale();
    let all_ones = if params.ell >= 64 { u64::MAX } else { (1u64 << params.ell) - 1 };
    let left_image_hi = scale * hi + params.block_offset(0);
    let right_image_lo = scale * lo + params.block_offset(all_ones);
    left_image_hi < right_image_lo
}

/// Replica settings for [`estimate_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernoulliSim {
    /// Number of block steps per replica.
    pub n: u64,
    pub replicas: u64,
    pub seed: u64,
    /// `X_0`; defaults to 0 in the CLI.
    pub start: f64,
    #[serde(default)]
    pub threads: usize,
}

/// Result of [`estimate_integral`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    /// Median of the replica means.
    pub estimate: f64,
    /// Centre used for the tail frequencies.
    pub reference: f64,
    pub bv: BvNorm,
    pub curve: Vec<DeviationPoint>,
}

/// Per-replica empirical means `(1/n)·Σ_{k=1..n} f(X_k)` along the block chain.
pub fn replica_means(params: &IfsParams, f: &StepFunction, sim: &BernoulliSim) -> Result<Vec<f64>> {
    if !params.contains(sim.start) {
        return Err(domain(format!("start {} outside the attractor", sim.start)));
    }
    if sim.n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    let run = |r: u64| {
        let mut rng = replica_stream(sim.seed, r);
        let mut x = sim.start;
        let mut sum = 0.0;
        for _ in 0..sim.n {
            x = block_step(params, x, &mut rng);
            sum += f.eval(x);
        }
        sum / sim.n as f64
    };
    Ok(with_threads(sim.threads, || (0..sim.replicas).into_par_iter().map(run).collect()))
}

/// Estimates `β_λ(f)` and the tail curve of the replica means around
/// `reference` (the estimate itself when `None`), next to the BV corollary
/// bound for each `a` in `a_grid`.
pub fn estimate_integral(
    params: &IfsParams,
    f: &StepFunction,
    sim: &BernoulliSim,
    reference: Option<f64>,
    a_grid: &[f64],
) -> Result<IntegralEstimate> {
    let means = replica_means(params, f, sim)?;
    let estimate = median(&means);
    let reference = reference.unwrap_or(estimate);
    let bv = bv_norm(f);
    let curve = if bv.norm > 0.0 {
        a_grid
            .iter()
            .map(|&a| {
                let bound = bv_corollary_bound(params.ell, bv.norm, sim.n, a)?;
                Ok(DeviationPoint::new(a, tail_from_means(&means, reference, a), &bound))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(IntegralEstimate { estimate, reference, bv, curve })
}

/// Histogram settings; defaults are 500 bins, 30 runs of `10^6` points, `X_0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramConfig {
    pub n_points: u64,
    pub bins: usize,
    pub runs: u64,
    pub seed: u64,
    pub start: f64,
    #[serde(default)]
    pub threads: usize,
}

impl Default for HistogramConfig {
    fn default() -> Self {
        HistogramConfig { n_points: 1_000_000, bins: 500, runs: 30, seed: 0, start: 0.0, threads: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub mass: f64,
}

/// Run-averaged empirical distribution of the one-step chain
/// `X_{k+1} = T_{ε}(X_k)` over `X_1..X_{n_points}`, in equal-width bins of `I_λ`.
pub fn histogram(lambda: f64, cfg: &HistogramConfig) -> Result<Vec<HistogramBin>> {
    check_lambda(lambda)?;
    if cfg.bins == 0 || cfg.runs == 0 || cfg.n_points == 0 {
        return Err(domain("histogram needs bins, runs and points >= 1"));
    }
    let (lo, hi) = attractor(lambda);
    if !(cfg.start >= lo - ATTRACTOR_SLACK && cfg.start <= hi + ATTRACTOR_SLACK) {
        return Err(domain(format!("start {} outside the attractor", cfg.start)));
    }
    let width = hi - lo;
    let bins = cfg.bins;
    let run = |r: u64| -> Vec<u64> {
        let mut rng = replica_stream(cfg.seed, r);
        let mut counts = vec![0u64; bins];
        let mut x = cfg.start;
        let mut left = cfg.n_points;
        while left > 0 {
            let bits = rng.gen::<u64>();
            let take = left.min(64);
            for j in 0..take {
                x = if (bits >> j) & 1 == 1 { lambda * x + lambda } else { lambda * x - lambda };
                let idx = (((x - lo) / width) * bins as f64).floor();
                counts[(idx.max(0.0) as usize).min(bins - 1)] += 1;
            }
            left -= take;
        }
        counts
    };
    let per_run: Vec<Vec<u64>> =
        with_threads(cfg.threads, || (0..cfg.runs).into_par_iter().map(run).collect());

    let mut mass = vec![0.0; bins];
    for counts in &per_run {
        for (m, c) in mass.iter_mut().zip(counts) {
            *m += *c as f64 / cfg.n_points as f64;
        }
    }
    let h = width / bins as f64;
    Ok(mass
        .into_iter()
        .enumerate()
        .map(|(i, m)| HistogramBin {
            left: lo + h * i as f64,
            right: if i + 1 == bins { hi } else { lo + h * (i + 1) as f64 },
            mass: m / cfg.runs as f64,
        })
        .collect())
}

pub fn write_histogram_csv<W: std::io::Write>(mut w: W, bins: &[HistogramBin]) -> std::io::Result<()> {
    writeln!(w, "bin_left,bin_right,mass")?;
    for b in bins {
        writeln!(w, "{},{},{}", fmt_f64(b.left), fmt_f64(b.right), fmt_f64(b.mass))?;
    }
    Ok(())
}
