//! Finite-state chains under one-step Doeblin minorization.
//!
//! Only the `ℓ = 1` condition `m_x ≥ β·ω` is extracted. For a chain that
//! only satisfies it after `ℓ` steps, build the `ℓ`-step kernel with
//! [`FiniteKernel::power`] and work with the extracted chain
//! `(X_{k0 + kℓ})_k`; reported chain lengths then count extracted steps.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::doeblin_corollary_bound;
use crate::error::{domain, Error, Result};
use crate::output::DeviationPoint;
use crate::rng::{replica_stream, with_threads};
use crate::stats::{tail_from_means, TailEstimate};

const ROW_SUM_TOL: f64 = 1e-12;

/// Row-stochastic transition table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteKernel {
    size: usize,
    rows: Vec<Vec<f64>>,
}

/// JSON form of a kernel: declared size and a row-major flat array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelJson {
    pub size: usize,
    pub data: Vec<f64>,
}

impl FiniteKernel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidKernel("kernel has no states".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::LengthMismatch { expected: size, got: row.len() });
            }
            if let Some(v) = row.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
                return Err(Error::InvalidKernel(format!("row {x} has entry {v}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidKernel(format!("row {x} sums to {sum}")));
            }
        }
        Ok(FiniteKernel { size, rows })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let k: KernelJson = serde_json::from_str(s)?;
        k.try_into()
    }

    pub fn to_json(&self) -> KernelJson {
        KernelJson { size: self.size, data: self.rows.concat() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// `(L0 f)(x) = Σ_y P(x, y)·f(y)`.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_len(f.len())?;
        Ok(self.rows.iter().map(|row| row.iter().zip(f).map(|(p, v)| p * v).sum()).collect())
    }

    /// `(μP)(y) = Σ_x μ(x)·P(x, y)`.
    pub fn push_forward(&self, mu: &[f64]) -> Result<Vec<f64>> {
        self.check_len(mu.len())?;
        let mut out = vec![0.0; self.size];
        for (m, row) in mu.iter().zip(&self.rows) {
            for (o, p) in out.iter_mut().zip(row) {
                *o += m * p;
            }
        }
        Ok(out)
    }

    /// `ℓ`-step kernel `P^ℓ`.
    pub fn power(&self, ell: u32) -> Result<FiniteKernel> {
        if ell == 0 {
            return Err(domain("kernel power must be >= 1"));
        }
        let mut rows = self.rows.clone();
        for _ in 1..ell {
            rows = rows.iter().map(|r| self.push_forward(r)).collect::<Result<_>>()?;
        }
        // Renormalise to absorb rounding before revalidating.
        for r in &mut rows {
            let s: f64 = r.iter().sum();
            r.iter_mut().for_each(|v| *v /= s);
        }
        FiniteKernel::new(rows)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.size {
            return Err(Error::LengthMismatch { expected: self.size, got: len });
        }
        Ok(())
    }
}

impl TryFrom<KernelJson> for FiniteKernel {
    type Error = Error;

    fn try_from(k: KernelJson) -> Result<Self> {
        if k.size == 0 || k.data.len() != k.size * k.size {
            return Err(Error::LengthMismatch { expected: k.size * k.size, got: k.data.len() });
        }
        FiniteKernel::new(k.data.chunks(k.size).map(<[f64]>::to_vec).collect())
    }
}

/// `rows[x] = β·ω + residual[x]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorizationSplit {
    pub beta: f64,
    pub omega: Vec<f64>,
    pub residual: Vec<Vec<f64>>,
}

/// Maximal one-step minorization: `β = Σ_y min_x P(x, y)`, `ω ∝ column minima`.
pub fn minorization_split(kernel: &FiniteKernel) -> Result<MinorizationSplit> {
    let minima: Vec<f64> = (0..kernel.size)
        .map(|y| kernel.rows.iter().map(|r| r[y]).fold(f64::INFINITY, f64::min))
        .collect();
    let beta: f64 = minima.iter().sum();
    if beta <= 0.0 {
        return Err(Error::NoMinorization);
    }
    let beta = beta.min(1.0);
    let omega: Vec<f64> = minima.iter().map(|m| m / beta).collect();
    let residual = kernel
        .rows
        .iter()
        .map(|row| row.iter().zip(&minima).map(|(p, m)| p - m).collect())
        .collect();
    Ok(MinorizationSplit { beta, omega, residual })
}

/// `(1/2)·Σ|μ − ν|`.
pub fn tv_distance(mu: &[f64], nu: &[f64]) -> Result<f64> {
    if mu.len() != nu.len() {
        return Err(Error::LengthMismatch { expected: mu.len(), got: nu.len() });
    }
    Ok(0.5 * mu.iter().zip(nu).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// `max_{x,y} d_TV(P(x,·), P(y,·))`, the exact contraction factor of `L0` on
/// the spread seminorm `S(f) = max f − min f`.
pub fn dobrushin_coefficient(kernel: &FiniteKernel) -> f64 {
    let rows = &kernel.rows;
    let mut worst = 0.0f64;
    for x in 0..rows.len() {
        for y in (x + 1)..rows.len() {
            let d = 0.5 * rows[x].iter().zip(&rows[y]).map(|(a, b)| (a - b).abs()).sum::<f64>();
            worst = worst.max(d);
        }
    }
    worst.min(1.0)
}

const STATIONARY_TOL: f64 = 1e-13;
const RESIDUAL_TOL: f64 = 1e-12;
const MAX_POWER_STEPS: usize = 10_000_000;

/// Stationary law by power iteration from the uniform vector.
///
/// With Dobrushin coefficient `c < 1`, `d_TV(π_t, π) ≤ d_TV(π_t, π_{t+1})/(1−c)`,
/// which is the stopping criterion (together with `‖πP − π‖∞ < 1e−12`).
pub fn stationary_distribution(kernel: &FiniteKernel) -> Result<Vec<f64>> {
    let c = dobrushin_coefficient(kernel);
    if c >= 1.0 {
        return Err(Error::NotContracting);
    }
    let k = kernel.size;
    let mut pi = vec![1.0 / k as f64; k];
    for _ in 0..MAX_POWER_STEPS {
        let mut next = kernel.push_forward(&pi)?;
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let step = tv_distance(&pi, &next)?;
        let sup = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        pi = next;
        if step / (1.0 - c) < STATIONARY_TOL && sup < RESIDUAL_TOL {
            return Ok(pi);
        }
    }
    Err(Error::Solver(format!("power iteration did not converge in {MAX_POWER_STEPS} steps")))
}

/// `S(f) = max f − min f`.
pub fn spread(f: &[f64]) -> f64 {
    let max = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    if f.is_empty() {
        0.0
    } else {
        max - min
    }
}

/// `‖f‖_S = ‖f‖∞ + S(f)`.
pub fn s_norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |m, v| m.max(v.abs())) + spread(f)
}

/// Inverse-CDF sampler over the rows of a kernel.
struct RowSampler {
    cumulative: Vec<Vec<f64>>,
}

impl RowSampler {
    fn new(kernel: &FiniteKernel) -> Self {
        let cumulative = kernel
            .rows
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                row.iter()
                    .map(|p| {
                        acc += p;
                        acc
                    })
                    .collect()
            })
            .collect();
        RowSampler { cumulative }
    }

    fn step<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        let row = &self.cumulative[x];
        let u = rng.gen::<f64>() * row[row.len() - 1];
        row.partition_point(|c| *c <= u).min(row.len() - 1)
    }
}

/// Replica settings for [`simulate_tail`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoeblinSim {
    pub n: u64,
    pub replicas: u64,
    pub seed: u64,
    /// Initial state `X_0`.
    pub start: usize,
    #[serde(default)]
    pub threads: usize,
}

fn check_unit_range(f: &[f64]) -> Result<()> {
    match f.iter().position(|v| !(-1.0..=1.0).contains(v)) {
        Some(state) => Err(Error::Range { state, value: f[state] }),
        None => Ok(()),
    }
}

/// Empirical means of `f` along independent replicas of the chain.
pub fn replica_means(kernel: &FiniteKernel, f: &[f64], sim: &DoeblinSim) -> Result<Vec<f64>> {
    kernel.check_len(f.len())?;
    if sim.start >= kernel.size {
        return Err(domain(format!("start state {} outside kernel of size {}", sim.start, kernel.size)));
    }
    if sim.n == 0 {
        return Err(domain("chain length n must be >= 1"));
    }
    let sampler = RowSampler::new(kernel);
    let run = |r: u64| {
        let mut rng = replica_stream(sim.seed, r);
        let mut x = sim.start;
        let mut sum = 0.0;
        for _ in 0..sim.n {
            x = sampler.step(x, &mut rng);
            sum += f[x];
        }
        sum / sim.n as f64
    };
    Ok(with_threads(sim.threads, || (0..sim.replicas).into_par_iter().map(run).collect()))
}

/// Tail frequency of `|μ̂_n(f) − μ0(f)| ≥ a` for an observable with values in `[−1, 1]`.
pub fn simulate_tail(kernel: &FiniteKernel, f: &[f64], a: f64, sim: &DoeblinSim) -> Result<TailEstimate> {
    check_unit_range(f)?;
    let pi = stationary_distribution(kernel)?;
    let reference: f64 = pi.iter().zip(f).map(|(p, v)| p * v).sum();
    let means = replica_means(kernel, f, sim)?;
    Ok(tail_from_means(&means, reference, a))
}

/// Tail curve next to the Doeblin corollary with the kernel's maximal `β`.
pub fn deviation_curve(
    kernel: &FiniteKernel,
    f: &[f64],
    a_grid: &[f64],
    sim: &DoeblinSim,
) -> Result<(MinorizationSplit, Vec<DeviationPoint>)> {
    check_unit_range(f)?;
    let split = minorization_split(kernel)?;
    let pi = stationary_distribution(kernel)?;
    let reference: f64 = pi.iter().zip(f).map(|(p, v)| p * v).sum();
    let means = replica_means(kernel, f, sim)?;
    let points = a_grid
        .iter()
        .map(|&a| {
            let bound = doeblin_corollary_bound(split.beta, sim.n, a)?;
            Ok(DeviationPoint::new(a, tail_from_means(&means, reference, a), &bound))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((split, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_state() -> FiniteKernel {
        FiniteKernel::new(vec![vec![0.5, 0.5], vec![0.25, 0.75]]).unwrap()
    }

    fn random_kernel(k: usize, rng: &mut ChaCha8Rng) -> FiniteKernel {
        let rows = (0..k)
            .map(|_| {
                let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 0.01).collect();
                let s: f64 = raw.iter().sum();
                raw.iter().map(|v| v / s).collect()
            })
            .collect();
        FiniteKernel::new(rows).unwrap()
    }

    #[test]
    fn kernel_validation() {
        assert!(FiniteKernel::new(vec![]).is_err());
        assert!(FiniteKernel::new(vec![vec![0.5, 0.6], vec![0.5, 0.5]]).is_err());
        assert!(FiniteKernel::new(vec![vec![1.5, -0.5], vec![0.5, 0.5]]).is_err());
        assert!(FiniteKernel::new(vec![vec![1.0], vec![1.0]]).is_err());
    }

    #[test]
    fn kernel_json() {
        let k = FiniteKernel::from_json_str(r#"{"size": 2, "data": [0.5, 0.5, 0.25, 0.75]}"#).unwrap();
        assert_eq!(k, two_state());
        assert!(FiniteKernel::from_json_str(r#"{"size": 2, "data": [1.0, 0.0, 1.0]}"#).is_err());
        let back = FiniteKernel::try_from(k.to_json()).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn split_examples() {
        let s = minorization_split(&two_state()).unwrap();
        assert_abs_diff_eq!(s.beta, 0.75);
        assert_abs_diff_eq!(s.omega[0], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.omega[1], 2.0 / 3.0, epsilon = 1e-15);
        for (row, res) in two_state().rows().iter().zip(&s.residual) {
            let sum: f64 = res.iter().sum();
            assert_abs_diff_eq!(sum, 1.0 - s.beta, epsilon = 1e-15);
            for y in 0..2 {
                assert_abs_diff_eq!(s.beta * s.omega[y] + res[y], row[y], epsilon = 1e-15);
            }
        }

        let id = FiniteKernel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(minorization_split(&id), Err(Error::NoMinorization)));

        let w = vec![0.2, 0.3, 0.5];
        let same = FiniteKernel::new(vec![w.clone(); 3]).unwrap();
        let s = minorization_split(&same).unwrap();
        assert_abs_diff_eq!(s.beta, 1.0, epsilon = 1e-15);
        for (a, b) in s.omega.iter().zip(&w) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn dobrushin_examples() {
        let id = FiniteKernel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(dobrushin_coefficient(&id), 1.0);
        assert_abs_diff_eq!(dobrushin_coefficient(&two_state()), 0.25);
        assert!(matches!(stationary_distribution(&id), Err(Error::NotContracting)));
    }

    #[test]
    fn stationary_examples() {
        let pi = stationary_distribution(&two_state()).unwrap();
        assert_abs_diff_eq!(pi[0], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pi[1], 2.0 / 3.0, epsilon = 1e-12);

        let ds = FiniteKernel::new(vec![
            vec![0.2, 0.3, 0.5],
            vec![0.5, 0.2, 0.3],
            vec![0.3, 0.5, 0.2],
        ])
        .unwrap();
        for p in stationary_distribution(&ds).unwrap() {
            assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-12);
        }

        let w = vec![0.1, 0.6, 0.3];
        let same = FiniteKernel::new(vec![w.clone(); 3]).unwrap();
        for (a, b) in stationary_distribution(&same).unwrap().iter().zip(&w) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn tv_examples() {
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(tv_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_abs_diff_eq!(tv_distance(&[0.5, 0.5], &[0.25, 0.75]).unwrap(), 0.25);
        assert!(tv_distance(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn tv_is_a_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut prob = |k: usize| -> Vec<f64> {
            let v: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
            let s: f64 = v.iter().sum();
            v.iter().map(|x| x / s).collect()
        };
        for _ in 0..200 {
            let (a, b, c) = (prob(6), prob(6), prob(6));
            let ab = tv_distance(&a, &b).unwrap();
            assert_eq!(ab, tv_distance(&b, &a).unwrap());
            assert!(ab <= tv_distance(&a, &c).unwrap() + tv_distance(&c, &b).unwrap() + 1e-15);
        }
    }

    #[test]
    fn contraction_on_random_kernels() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let k = rng.gen_range(2..12);
            let kernel = random_kernel(k, &mut rng);
            let split = minorization_split(&kernel).unwrap();
            let c = dobrushin_coefficient(&kernel);
            assert!(c <= 1.0 - split.beta + 1e-12);
            let pi = stationary_distribution(&kernel).unwrap();
            let gap = split.beta / (2.0 - split.beta);
            for _ in 0..20 {
                let mut f: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let lf = kernel.apply(&f).unwrap();
                assert!(spread(&lf) <= c * spread(&f) + 1e-12);
                let mean: f64 = pi.iter().zip(&f).map(|(p, v)| p * v).sum();
                f.iter_mut().for_each(|v| *v -= mean);
                let lf = kernel.apply(&f).unwrap();
                assert!(s_norm(&lf) <= (1.0 - gap) * s_norm(&f) + 1e-10);
            }
        }
    }

    #[test]
    fn power_kernel_is_stochastic() {
        let k2 = two_state().power(2).unwrap();
        assert_abs_diff_eq!(k2.rows()[0][0], 0.375, epsilon = 1e-15);
        assert!(two_state().power(0).is_err());
    }

    #[test]
    fn simulate_trivial_cases_and_range() {
        let k = two_state();
        let f = [1.0, -1.0];
        let sim = DoeblinSim { n: 100, replicas: 100, seed: 1, start: 0, threads: 0 };
        assert_eq!(simulate_tail(&k, &f, 0.0, &sim).unwrap().p_hat, 1.0);
        assert_eq!(simulate_tail(&k, &f, 2.01, &sim).unwrap().p_hat, 0.0);
        assert!(matches!(simulate_tail(&k, &[1.5, 0.0], 0.1, &sim), Err(Error::Range { state: 0, .. })));
    }

    #[test]
    fn sampler_matches_rows() {
        let k = two_state();
        let sampler = RowSampler::new(&k);
        let mut rng = replica_stream(4, 0);
        let hits = (0..200_000).filter(|_| sampler.step(1, &mut rng) == 1).count() as f64 / 200_000.0;
        assert!((hits - 0.75).abs() < 4.0 * (0.75 * 0.25 / 200_000.0f64).sqrt());
    }
}
