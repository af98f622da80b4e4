//! Lazy random walk on the hypercube `{0,1}^N`.
//!
//! Vertices are `u64` words: slot `i` (1-based) is bit `i − 1`. Observables
//! on small cubes are dense tables of `2^N` values indexed by that word, which
//! makes every operator and seminorm computable exactly.
//!
//! One chain step picks a slot uniformly and overwrites it with a fair bit,
//! so `m_x = ½δ_x + Σ_{y∼x} δ_y/(2N)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{theorem_a_bound, ObservableSpec};
use crate::certificate::{hypercube_gap, GapCertificate, HypercubeNorm};
use crate::error::{domain, Error, Result};
use crate::output::DeviationPoint;
use crate::rng::{replica_stream, with_threads, ChainRng};
use crate::stats::{tail_from_means, TailEstimate};

/// Largest dimension for dense tables (16M entries).
pub const MAX_ORACLE_N: u32 = 24;
/// Largest dimension for simulation (one `u64` word).
pub const MAX_SIM_N: u32 = 63;

const PAR_THRESHOLD: usize = 1 << 14;

/// A vertex of `{0,1}^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub bits: u64,
    pub n_slots: u32,
}

impl Vertex {
    pub fn new(bits: u64, n_slots: u32) -> Result<Self> {
        if n_slots == 0 || n_slots > MAX_SIM_N {
            return Err(Error::Size(format!("N = {n_slots} outside [1, {MAX_SIM_N}]")));
        }
        if bits >> n_slots != 0 {
            return Err(domain(format!("word {bits:#x} has bits beyond slot {n_slots}")));
        }
        Ok(Vertex { bits, n_slots })
    }

    /// Value of slot `i`, 1-based.
    pub fn slot(&self, i: u32) -> bool {
        (self.bits >> (i - 1)) & 1 == 1
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

/// Observables that [`build_observable`] knows how to tabulate.
#[derive(Debug, Clone, PartialEq)]
pub enum ObservableKind {
    /// Proportion of ones.
    Rho,
    /// Indicator of a set of vertex words.
    Indicator(Vec<u64>),
    /// Indicator of `[0] = {x : x_1 = 0}`.
    FirstSlotZero,
    /// `(−1)^{|x|}`.
    Parity,
    /// Explicit table of `2^N` values.
    Custom(Vec<f64>),
}

/// A function on `{0,1}^N` stored as a table of `2^N` values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseObservable {
    pub n_slots: u32,
    pub values: Vec<f64>,
}

fn check_oracle_n(n_slots: u32) -> Result<()> {
    if n_slots == 0 || n_slots > MAX_ORACLE_N {
        return Err(Error::Size(format!(
            "dense tables need 1 <= N <= {MAX_ORACLE_N}, got {n_slots}"
        )));
    }
    Ok(())
}

impl DenseObservable {
    pub fn new(n_slots: u32, values: Vec<f64>) -> Result<Self> {
        check_oracle_n(n_slots)?;
        let expected = 1usize << n_slots;
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        Ok(DenseObservable { n_slots, values })
    }

    pub fn constant(n_slots: u32, c: f64) -> Result<Self> {
        check_oracle_n(n_slots)?;
        Ok(DenseObservable { n_slots, values: vec![c; 1 << n_slots] })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: u64) -> f64 {
        self.values[x as usize]
    }

    /// `μ0(f)` for the uniform (stationary) measure.
    pub fn uniform_mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &DenseObservable) -> Result<DenseObservable> {
        if self.n_slots != other.n_slots {
            return Err(Error::LengthMismatch { expected: self.len(), got: other.len() });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(DenseObservable { n_slots: self.n_slots, values })
    }

    fn centered(&self) -> DenseObservable {
        let m = self.uniform_mean();
        DenseObservable {
            n_slots: self.n_slots,
            values: self.values.iter().map(|v| v - m).collect(),
        }
    }
}

/// Tabulates an observable on `{0,1}^N`.
pub fn build_observable(kind: &ObservableKind, n_slots: u32) -> Result<DenseObservable> {
    check_oracle_n(n_slots)?;
    let size = 1usize << n_slots;
    let n = f64::from(n_slots);
    let values = match kind {
        ObservableKind::Rho => (0..size as u64).map(|x| f64::from(x.count_ones()) / n).collect(),
        ObservableKind::FirstSlotZero => {
            (0..size as u64).map(|x| if x & 1 == 0 { 1.0 } else { 0.0 }).collect()
        }
        ObservableKind::Parity => (0..size as u64)
            .map(|x| if x.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
            .collect(),
        ObservableKind::Indicator(set) => {
            let mut v = vec![0.0; size];
            for &x in set {
                if x as usize >= size {
                    return Err(domain(format!("vertex {x} outside {{0,1}}^{n_slots}")));
                }
                v[x as usize] = 1.0;
            }
            v
        }
        ObservableKind::Custom(table) => return DenseObservable::new(n_slots, table.clone()),
    };
    Ok(DenseObservable { n_slots, values })
}

/// Seminorms and the three norms of a hypercube observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeminormReport {
    pub n_slots: u32,
    pub sup: f64,
    /// Lipschitz constant for the Hamming metric (edge maximum).
    pub lip: f64,
    /// `W(f) = max_x Σ_i |f(x ⊕ e_i) − f(x)|`.
    pub w: f64,
    /// `S(f) = max f − min f`.
    pub s: f64,
    pub norm_l: f64,
    pub norm_dl: f64,
    pub norm_w: f64,
}

impl SeminormReport {
    pub fn norm(&self, which: HypercubeNorm) -> f64 {
        match which {
            HypercubeNorm::L => self.norm_l,
            HypercubeNorm::DL => self.norm_dl,
            HypercubeNorm::W => self.norm_w,
        }
    }

    pub fn seminorm(&self, which: HypercubeNorm) -> f64 {
        match which {
            HypercubeNorm::L => self.lip,
            HypercubeNorm::DL => f64::from(self.n_slots) * self.lip,
            HypercubeNorm::W => self.w,
        }
    }

    /// Norm data for the bound evaluators.
    pub fn observable_spec(&self, which: HypercubeNorm) -> Result<ObservableSpec> {
        ObservableSpec::new(which.family(), self.sup, self.seminorm(which))
    }
}

/// Local quantities at vertex `x`: (largest edge difference, summed edge differences).
fn local_variation(f: &DenseObservable, x: usize) -> (f64, f64) {
    let fx = f.values[x];
    (0..f.n_slots).fold((0.0f64, 0.0f64), |(mx, sum), i| {
        let d = (f.values[x ^ (1 << i)] - fx).abs();
        (mx.max(d), sum + d)
    })
}

pub fn seminorms(f: &DenseObservable) -> SeminormReport {
    let (lip, w) = if f.len() >= PAR_THRESHOLD {
        (0..f.len())
            .into_par_iter()
            .map(|x| local_variation(f, x))
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
    } else {
        (0..f.len())
            .map(|x| local_variation(f, x))
            .fold((0.0_f64, 0.0_f64), |a, b| (a.0.max(b.0), a.1.max(b.1)))
    };
    let max = f.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = f.values.iter().copied().fold(f64::INFINITY, f64::min);
    let sup = f.sup_norm();
    let n = f64::from(f.n_slots);
    SeminormReport {
        n_slots: f.n_slots,
        sup,
        lip,
        w,
        s: max - min,
        norm_l: sup + lip,
        norm_dl: sup + n * lip,
        norm_w: sup + w,
    }
}

fn averaged_at(f: &DenseObservable, x: usize, weight: f64) -> f64 {
    let neighbours: f64 = (0..f.n_slots).map(|i| f.values[x ^ (1 << i)]).sum();
    0.5 * f.values[x] + weight * neighbours
}

/// `(L0 f)(x) = f(x)/2 + (1/2N)·Σ_i f(x ⊕ e_i)`.
pub fn apply_averaging(f: &DenseObservable) -> DenseObservable {
    let weight = 0.5 / f64::from(f.n_slots);
    let values = if f.len() >= PAR_THRESHOLD {
        (0..f.len()).into_par_iter().map(|x| averaged_at(f, x, weight)).collect()
    } else {
        (0..f.len()).map(|x| averaged_at(f, x, weight)).collect()
    };
    DenseObservable { n_slots: f.n_slots, values }
}

/// Stopping tolerance of the Neumann series in [`dynamical_variance_exact`].
const VARIANCE_TOL: f64 = 1e-13;
const RESIDUAL_TOL: f64 = 1e-12;
const MAX_NEUMANN_TERMS: usize = 1_000_000;

/// `σ²(φ) = μ0(φ̄²) + 2·μ0(φ̄·g)` with `g = Σ_{k≥1} L0^k φ̄`.
///
/// `g` solves `(I − L0)g = L0 φ̄` on zero-mean functions and is summed as a
/// Neumann series. The remainder after `K` terms is bounded through the
/// certified `W`-norm gap: `‖Σ_{k>K} L0^k φ̄‖∞ ≤ ((1−δ)/δ)·‖L0^K φ̄‖_W`
/// with `δ = 1/(4N−1)`; iteration stops once the induced error on `σ²` is
/// below `1e−13` and the residual `‖L0^{K+1} φ̄‖∞` is below `1e−12`.
pub fn dynamical_variance_exact(f: &DenseObservable) -> Result<f64> {
    check_oracle_n(f.n_slots)?;
    let phi = f.centered();
    let mu = |g: &DenseObservable| g.uniform_mean();
    let variance = mu(&phi.mul(&phi)?);
    let phi_sup = phi.sup_norm();
    if phi_sup == 0.0 {
        return Ok(0.0);
    }
    let delta = hypercube_gap(f.n_slots, HypercubeNorm::W)?.delta0;
    let tail_factor = (1.0 - delta) / delta;

    let mut term = phi.clone();
    let mut g = vec![0.0; phi.len()];
    for _ in 0..MAX_NEUMANN_TERMS {
        term = apply_averaging(&term);
        // L0 preserves the uniform mean; remove rounding drift.
        let drift = term.uniform_mean();
        term.values.iter_mut().for_each(|v| *v -= drift);
        g.iter_mut().zip(&term.values).for_each(|(acc, t)| *acc += t);

        let report = seminorms(&term);
        let tail_bound = tail_factor * report.norm_w;
        let residual_bound = (1.0 - delta) * report.norm_w;
        if 2.0 * phi_sup * tail_bound < VARIANCE_TOL && residual_bound < RESIDUAL_TOL {
            let cross: f64 = phi.values.iter().zip(&g).map(|(p, q)| p * q).sum::<f64>()
                / phi.len() as f64;
            return Ok(variance + 2.0 * cross);
        }
    }
    Err(Error::Solver(format!(
        "Neumann series did not reach tolerance in {MAX_NEUMANN_TERMS} terms"
    )))
}

/// `1/4 + (1 − 2p)/(4p)`, where `p` is the per-step probability that the
/// value of a balanced indicator changes.
pub fn scrambled_variance(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 0.5) {
        return Err(domain(format!("flip probability p must lie in (0, 1/2], got {p}")));
    }
    Ok(0.25 + (1.0 - 2.0 * p) / (4.0 * p))
}

/// One step of the walk: a uniform slot is overwritten by a fair bit.
pub fn chain_step<R: Rng + ?Sized>(x: Vertex, rng: &mut R) -> Vertex {
    let slot = rng.gen_range(0..x.n_slots);
    let bit = rng.gen::<bool>() as u64;
    Vertex { bits: (x.bits & !(1u64 << slot)) | (bit << slot), n_slots: x.n_slots }
}

/// Law of `X_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    Point(u64),
    Uniform,
}

/// Shared replica settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Chain length: the empirical mean is taken over steps `1..=n`.
    pub n: u64,
    pub replicas: u64,
    pub seed: u64,
    /// Worker cap; 0 uses rayon's default.
    #[serde(default)]
    pub threads: usize,
}

fn start_vertex(start: Start, n_slots: u32, rng: &mut ChainRng) -> Result<Vertex> {
    match start {
        Start::Point(bits) => Vertex::new(bits, n_slots),
        Start::Uniform => {
            let mask = if n_slots == 64 { u64::MAX } else { (1u64 << n_slots) - 1 };
            Vertex::new(rng.gen::<u64>() & mask, n_slots)
        }
    }
}

/// Empirical means `(1/n)·Σ_{k=1..n} f(X_k)` of independent replicas, in
/// replica order.
pub fn replica_means<F>(n_slots: u32, f: F, start: Start, cfg: &SimConfig) -> Result<Vec<f64>>
where
    F: Fn(u64) -> f64 + Sync,
{
    if n_slots == 0 || n_slots > MAX_SIM_N {
        return Err(Error::Size(format!("simulation needs 1 <= N <= {MAX_SIM_N}")));
    }
    if cfg.n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    // Validate the start point once, outside the workers.
    if let Start::Point(bits) = start {
        Vertex::new(bits, n_slots)?;
    }
    let run = |r: u64| -> f64 {
        let mut rng = replica_stream(cfg.seed, r);
        let mut x = start_vertex(start, n_slots, &mut rng).expect("validated start");
        let mut sum = 0.0;
        for _ in 0..cfg.n {
            x = chain_step(x, &mut rng);
            sum += f(x.bits);
        }
        sum / cfg.n as f64
    };
    Ok(with_threads(cfg.threads, || (0..cfg.replicas).into_par_iter().map(run).collect()))
}

/// Fraction of replicas with `|μ̂_n(f) − μ0(f)| ≥ a`, with its one-sided 99%
/// Wilson upper limit. `μ0(f)` is the exact uniform average.
pub fn empirical_tail_probability(
    f: &DenseObservable,
    start: Start,
    a: f64,
    cfg: &SimConfig,
) -> Result<TailEstimate> {
    let means = replica_means(f.n_slots, |x| f.value(x), start, cfg)?;
    Ok(tail_from_means(&means, f.uniform_mean(), a))
}

/// Empirical tail curve over `a_grid`, next to the general gap bound in the
/// chosen norm. One set of replicas serves every `a`.
pub fn deviation_curve(
    f: &DenseObservable,
    norm: HypercubeNorm,
    start: Start,
    a_grid: &[f64],
    cfg: &SimConfig,
) -> Result<(GapCertificate, Vec<DeviationPoint>)> {
    let cert = hypercube_gap(f.n_slots, norm)?;
    let obs = seminorms(f).observable_spec(norm)?;
    let means = replica_means(f.n_slots, |x| f.value(x), start, cfg)?;
    let reference = f.uniform_mean();
    let points = a_grid
        .iter()
        .map(|&a| {
            let bound = theorem_a_bound(&cert, &obs, cfg.n, a)?;
            Ok(DeviationPoint::new(a, tail_from_means(&means, reference, a), &bound))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((cert, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_observable(n: u32, rng: &mut ChaCha8Rng) -> DenseObservable {
        DenseObservable::new(n, (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn observable_values() {
        let rho = build_observable(&ObservableKind::Rho, 4).unwrap();
        assert_eq!(rho.value(0b0110), 0.5);
        let ind = build_observable(&ObservableKind::FirstSlotZero, 4).unwrap();
        // Slot 1 is the lowest bit; 0110 read as slots (x1..x4) = (0,1,1,0).
        let v = |slots: [u64; 4]| slots.iter().enumerate().fold(0u64, |w, (i, b)| w | (b << i));
        assert_eq!(ind.value(v([0, 1, 1, 0])), 1.0);
        assert_eq!(ind.value(v([1, 1, 1, 0])), 0.0);
        assert!(build_observable(&ObservableKind::Rho, 25).is_err());
        assert!(build_observable(&ObservableKind::Indicator(vec![16]), 4).is_err());
        assert!(matches!(
            build_observable(&ObservableKind::Custom(vec![0.0; 3]), 2),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn seminorm_examples() {
        let rho = seminorms(&build_observable(&ObservableKind::Rho, 4).unwrap());
        assert_abs_diff_eq!(rho.lip, 0.25);
        assert_abs_diff_eq!(rho.w, 1.0);
        assert_abs_diff_eq!(rho.s, 1.0);
        assert_abs_diff_eq!(rho.norm_l, 1.25);
        assert_abs_diff_eq!(rho.norm_dl, 2.0);
        assert_abs_diff_eq!(rho.norm_w, 2.0);

        let ind = seminorms(&build_observable(&ObservableKind::FirstSlotZero, 4).unwrap());
        assert_eq!((ind.lip, ind.w, ind.s), (1.0, 1.0, 1.0));
        assert_eq!((ind.norm_l, ind.norm_dl, ind.norm_w), (2.0, 5.0, 2.0));

        let c = seminorms(&DenseObservable::constant(5, 3.0).unwrap());
        assert_eq!((c.lip, c.w, c.s), (0.0, 0.0, 0.0));
        assert_eq!(c.norm_w, 3.0);
    }

    #[test]
    fn averaging_examples() {
        let one = apply_averaging(&DenseObservable::constant(4, 1.0).unwrap());
        assert!(one.values.iter().all(|v| (v - 1.0).abs() < 1e-15));

        let rho = build_observable(&ObservableKind::Rho, 4).unwrap();
        let l_rho = apply_averaging(&rho);
        assert_abs_diff_eq!(l_rho.value(0b0110), 0.5, epsilon = 1e-15);
        for x in 0..16u64 {
            assert_abs_diff_eq!(l_rho.value(x), 0.75 * rho.value(x) + 0.125, epsilon = 1e-15);
        }

        let ind = build_observable(&ObservableKind::FirstSlotZero, 4).unwrap();
        assert_abs_diff_eq!(apply_averaging(&ind).value(0b1110), 0.875, epsilon = 1e-15);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(dynamical_variance_exact(&DenseObservable::constant(4, 2.0).unwrap()).unwrap(), 0.0);
        let ind = build_observable(&ObservableKind::FirstSlotZero, 4).unwrap();
        assert_abs_diff_eq!(dynamical_variance_exact(&ind).unwrap(), 1.75, epsilon = 1e-9);
        let parity = build_observable(&ObservableKind::Parity, 5).unwrap();
        assert_abs_diff_eq!(dynamical_variance_exact(&parity).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn scrambled_examples() {
        assert_abs_diff_eq!(scrambled_variance(0.5).unwrap(), 0.25);
        assert_abs_diff_eq!(scrambled_variance(0.125).unwrap(), 1.75, epsilon = 1e-15);
        assert!(scrambled_variance(0.0).is_err());
        assert!(scrambled_variance(0.6).is_err());
        let mut prev = f64::INFINITY;
        for k in 1..=50 {
            let v = scrambled_variance(k as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn step_stays_in_closed_neighbourhood() {
        let mut rng = replica_stream(1, 0);
        let mut x = Vertex::new(0b1011, 6).unwrap();
        for _ in 0..10_000 {
            let y = chain_step(x, &mut rng);
            assert!((x.bits ^ y.bits).count_ones() <= 1);
            assert!(y.bits >> 6 == 0);
            x = y;
        }
    }

    #[test]
    fn step_frequencies_match_kernel() {
        let n_slots = 4u32;
        let steps = 1_000_000u64;
        let x = Vertex::new(0b0101, n_slots).unwrap();
        let mut rng = replica_stream(2024, 0);
        let mut stay = 0u64;
        let mut flips = [0u64; 4];
        for _ in 0..steps {
            let y = chain_step(x, &mut rng);
            match (x.bits ^ y.bits).trailing_zeros() {
                64 => stay += 1,
                i => flips[i as usize] += 1,
            }
        }
        let s = steps as f64;
        assert!((stay as f64 / s - 0.5).abs() <= 0.002);
        let p = 1.0 / 8.0;
        let sigma = (p * (1.0 - p) / s).sqrt();
        for c in flips {
            assert!((c as f64 / s - p).abs() <= 3.0 * sigma, "{c}");
        }
    }

    #[test]
    fn tail_trivial_cases() {
        let rho = build_observable(&ObservableKind::Rho, 4).unwrap();
        let cfg = SimConfig { n: 50, replicas: 200, seed: 3, threads: 0 };
        let t = empirical_tail_probability(&rho, Start::Uniform, 1.01, &cfg).unwrap();
        assert_eq!(t.p_hat, 0.0);
        let t = empirical_tail_probability(&rho, Start::Point(0), 0.0, &cfg).unwrap();
        assert_eq!(t.p_hat, 1.0);
    }

    #[test]
    fn replicas_do_not_depend_on_thread_count() {
        let rho = build_observable(&ObservableKind::Rho, 6).unwrap();
        let f = |x| rho.value(x);
        let one = replica_means(6, f, Start::Point(0), &SimConfig { n: 300, replicas: 64, seed: 9, threads: 1 }).unwrap();
        let many = replica_means(6, f, Start::Point(0), &SimConfig { n: 300, replicas: 64, seed: 9, threads: 4 }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn uniform_law_is_stationary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=8 {
            let f = random_observable(n, &mut rng);
            assert_abs_diff_eq!(apply_averaging(&f).uniform_mean(), f.uniform_mean(), epsilon = 1e-14);
        }
    }

    #[test]
    fn contraction_and_petrov_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=8u32 {
            let nf = f64::from(n);
            for _ in 0..50 {
                let f = random_observable(n, &mut rng);
                let lf = apply_averaging(&f);
                let (sf, slf) = (seminorms(&f), seminorms(&lf));
                assert!(slf.lip <= (1.0 - 1.0 / nf) * sf.lip + 1e-12);
                assert!(slf.w <= (1.0 - 0.5 / nf) * sf.w + 1e-12);
                assert!(sf.s <= sf.w + 1e-12);
                assert!(sf.lip <= sf.w + 1e-12 && sf.w <= nf * sf.lip + 1e-12);
                assert!(slf.sup <= sf.sup + 1e-12);
            }
        }
    }

    #[test]
    fn norms_are_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=6u32 {
            for _ in 0..50 {
                let f = random_observable(n, &mut rng);
                let g = random_observable(n, &mut rng);
                let (sf, sg, sfg) = (seminorms(&f), seminorms(&g), seminorms(&f.mul(&g).unwrap()));
                for norm in HypercubeNorm::ALL {
                    assert!(sfg.norm(norm) <= sf.norm(norm) * sg.norm(norm) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn vertex_validation() {
        assert!(Vertex::new(0b10000, 4).is_err());
        assert!(Vertex::new(0, 0).is_err());
        assert!(Vertex::new(0, 64).is_err());
        let v = Vertex::new(0b0110, 4).unwrap();
        assert!(!v.slot(1) && v.slot(2) && v.slot(3) && !v.slot(4));
        assert_eq!(v.ones(), 2);
    }
}
