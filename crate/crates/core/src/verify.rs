//! Oracle property suites, aggregated by the `verify` subcommand.
//!
//! Each suite samples random instances from a seeded generator, checks one
//! family of properties against the exact operators, and counts violations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bernoulli::{self, apply_block_operator, bv_norm, IfsParams, StepFunction};
use crate::bounds::{min_n_theorem_a, plan_required_n, theorem_a_bound, ObservableSpec};
use crate::certificate::{
    bernoulli_certificate, doeblin_gap, hypercube_gap, hypercube_lemma_input, lemma_gap, Family,
    GapCertificate, HypercubeNorm, LemmaInput,
};
use crate::doeblin::{self, FiniteKernel};
use crate::error::Result;
use crate::hypercube::{self, apply_averaging, seminorms, DenseObservable, ObservableKind};

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

struct Tally {
    name: &'static str,
    cases: u64,
    violations: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, violations: 0, first_failure: None }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            violations: self.violations,
            first_failure: self.first_failure,
        }
    }
}

/// Suite sizes.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Random instances per parameter value.
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 200, seed: 0 }
    }
}

const TOL: f64 = 1e-12;

pub fn check_gap_identities() -> Result<CheckResult> {
    let mut t = Tally::new("gap_identities");
    let agrees = |cert: &GapCertificate, expected: f64| {
        let lemma = lemma_gap(LemmaInput::new(cert.c_const, cert.theta).expect("valid pair"));
        (cert.delta0 - expected).abs() <= TOL && (lemma.delta0 - cert.delta0).abs() <= TOL
    };
    for i in 1..=100 {
        let beta = i as f64 / 100.0;
        let cert = doeblin_gap(beta)?;
        t.check(agrees(&cert, beta / (2.0 - beta)), || format!("doeblin beta={beta}"));
    }
    for n in 1..=20u32 {
        let nf = f64::from(n);
        for (norm, expected) in [
            (HypercubeNorm::L, 1.0 / (nf * nf)),
            (HypercubeNorm::DL, 1.0 / (2.0 * nf - 1.0)),
            (HypercubeNorm::W, 1.0 / (4.0 * nf - 1.0)),
        ] {
            let cert = hypercube_gap(n, norm)?;
            t.check(agrees(&cert, expected), || format!("hypercube N={n} {norm:?}"));
        }
    }
    for ell in 1..=10i32 {
        // λ with λ^ℓ < 1/2 ≤ λ^{ℓ−1}.
        let lambda = 0.5f64.powf(1.0 / (ell as f64 - 0.5));
        let (got, cert) = bernoulli_certificate(lambda)?;
        let expected = 1.0 / (2f64.powi(ell + 1) - 1.0);
        t.check(got == ell as u32 && agrees(&cert, expected), || format!("bernoulli ell={ell}"));
    }
    Ok(t.finish())
}

fn random_dense(n: u32, rng: &mut ChaCha8Rng) -> DenseObservable {
    let values = (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    DenseObservable::new(n, values).expect("table of size 2^n")
}

pub fn check_hypercube_contraction(opts: VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("hypercube_contraction");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 2..=8u32 {
        let nf = f64::from(n);
        let gaps: Vec<_> = HypercubeNorm::ALL
            .iter()
            .map(|&norm| hypercube_gap(n, norm).map(|c| (norm, c.delta0)))
            .collect::<Result<_>>()?;
        for _ in 0..opts.trials {
            let f = random_dense(n, &mut rng);
            let (sf, slf) = (seminorms(&f), seminorms(&apply_averaging(&f)));
            t.check(slf.lip <= (1.0 - 1.0 / nf) * sf.lip + TOL, || format!("Lip, N={n}"));
            t.check(slf.w <= (1.0 - 0.5 / nf) * sf.w + TOL, || format!("W, N={n}"));
            t.check(slf.sup <= sf.sup + TOL, || format!("sup, N={n}"));

            let mean = f.uniform_mean();
            let centered = DenseObservable::new(n, f.values.iter().map(|v| v - mean).collect())?;
            let (sc, slc) = (seminorms(&centered), seminorms(&apply_averaging(&centered)));
            for &(norm, delta) in &gaps {
                t.check(slc.norm(norm) <= (1.0 - delta) * sc.norm(norm) + TOL, || {
                    format!("gap {norm:?}, N={n}")
                });
            }
        }
    }
    Ok(t.finish())
}

/// Structured functions that are extremal for `S ≤ W`.
pub fn petrov_structured(n: u32) -> Vec<DenseObservable> {
    let size = 1u64 << n;
    let mut out = vec![
        hypercube::build_observable(&ObservableKind::Rho, n).expect("n in range"),
        hypercube::build_observable(&ObservableKind::Parity, n).expect("n in range"),
        hypercube::build_observable(&ObservableKind::FirstSlotZero, n).expect("n in range"),
    ];
    for spike in [0, size - 1, size / 2] {
        out.push(hypercube::build_observable(&ObservableKind::Indicator(vec![spike]), n).expect("vertex"));
    }
    // Subcube indicators {x : x_1 = … = x_k = 0}.
    for k in 1..=n {
        let mask = (1u64 << k) - 1;
        let set = (0..size).filter(|x| x & mask == 0).collect();
        out.push(hypercube::build_observable(&ObservableKind::Indicator(set), n).expect("vertex"));
    }
    // Linear functionals with mixed-sign weights.
    let weights: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 + i as f64 } else { -0.5 * i as f64 }).collect();
    let linear = (0..size)
        .map(|x| (0..n).filter(|i| (x >> i) & 1 == 1).map(|i| weights[i as usize]).sum())
        .collect();
    out.push(DenseObservable::new(n, linear).expect("table"));
    out
}

pub fn check_petrov(opts: VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("petrov_spread_below_w");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5e7);
    for n in 1..=10u32 {
        let mut fs = petrov_structured(n);
        fs.extend((0..opts.trials).map(|_| random_dense(n, &mut rng)));
        for f in fs {
            let s = seminorms(&f);
            t.check(s.s <= s.w + TOL, || format!("N={n}: S={} W={}", s.s, s.w));
        }
    }
    Ok(t.finish())
}

pub fn check_variance() -> Result<CheckResult> {
    let mut t = Tally::new("dynamical_variance");
    for n in 2..=10u32 {
        let f = hypercube::build_observable(&ObservableKind::FirstSlotZero, n)?;
        let exact = hypercube::dynamical_variance_exact(&f)?;
        let expected = (2.0 * f64::from(n) - 1.0) / 4.0;
        t.check((exact - expected).abs() <= 1e-9, || format!("N={n}: {exact} vs {expected}"));
        let scrambled = hypercube::scrambled_variance(0.5 / f64::from(n))?;
        t.check((scrambled - expected).abs() <= 1e-9, || format!("scrambled N={n}"));
    }
    Ok(t.finish())
}

/// Random kernel with a guaranteed positive column minimum.
pub fn random_kernel(k: usize, rng: &mut ChaCha8Rng) -> FiniteKernel {
    let rows = (0..k)
        .map(|_| {
            let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>().powi(3) + 1e-3).collect();
            let s: f64 = raw.iter().sum();
            raw.iter().map(|v| v / s).collect()
        })
        .collect();
    FiniteKernel::new(rows).expect("normalised rows")
}

pub fn check_doeblin(opts: VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("doeblin_oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xd0eb);
    for _ in 0..opts.trials.max(1) {
        let k = rng.gen_range(5..=50);
        let kernel = random_kernel(k, &mut rng);
        let split = doeblin::minorization_split(&kernel)?;
        let err = kernel
            .rows()
            .iter()
            .zip(&split.residual)
            .flat_map(|(row, res)| {
                row.iter().zip(res).zip(&split.omega).map(|((p, r), w)| (split.beta * w + r - p).abs())
            })
            .fold(0.0, f64::max);
        t.check(err < 1e-12, || format!("split error {err}"));
        let c = doeblin::dobrushin_coefficient(&kernel);
        t.check(c <= 1.0 - split.beta + TOL, || format!("dobrushin {c} > 1 - {}", split.beta));

        let pi = doeblin::stationary_distribution(&kernel)?;
        let rate = 1.0 - split.beta / (2.0 - split.beta);
        for _ in 0..10 {
            let mut f: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let lf = kernel.apply(&f)?;
            t.check(doeblin::spread(&lf) <= c * doeblin::spread(&f) + TOL, || "S contraction".into());
            let mean: f64 = pi.iter().zip(&f).map(|(p, v)| p * v).sum();
            f.iter_mut().for_each(|v| *v -= mean);
            let lf = kernel.apply(&f)?;
            t.check(doeblin::s_norm(&lf) <= rate * doeblin::s_norm(&f) + 1e-10, || {
                "zero-mean S-norm gap".into()
            });
        }
    }
    Ok(t.finish())
}

/// Random step function with up to `max_jumps` jumps inside `(lo, hi)` and
/// values in `[−1, 1]`.
pub fn random_step_function(lo: f64, hi: f64, max_jumps: usize, rng: &mut ChaCha8Rng) -> StepFunction {
    let jumps = rng.gen_range(0..=max_jumps);
    let mut bps: Vec<f64> = (0..jumps).map(|_| lo + (hi - lo) * rng.gen_range(1e-9..1.0 - 1e-9)).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    let values = (0..=bps.len()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    StepFunction::new(bps, values).expect("sorted distinct breakpoints")
}

pub const BV_LAMBDAS: [f64; 5] = [0.55, 0.618, 2.0 / 3.0, 0.75, 0.9];

pub fn check_bv_contraction(opts: VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("bv_contraction");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xb5);
    for lambda in BV_LAMBDAS {
        let p = IfsParams::new(lambda)?;
        t.check(bernoulli::extreme_images_disjoint(&p), || format!("disjointness lambda={lambda}"));
        let (lo, hi) = p.attractor();
        let factor = 1.0 - 0.5f64.powi(p.ell as i32);
        for _ in 0..opts.trials {
            let f = random_step_function(lo, hi, 50, &mut rng);
            let out = apply_block_operator(&p, &f)?;
            let (bf, bo) = (bv_norm(&f), bv_norm(&out));
            t.check(bo.var <= factor * bf.var + 1e-9, || {
                format!("lambda={lambda}: var {} > {factor}·{}", bo.var, bf.var)
            });
            t.check(bo.sup <= bf.sup + 1e-12, || format!("sup, lambda={lambda}"));
        }
    }
    Ok(t.finish())
}

pub fn check_planner(opts: VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("planner_round_trip");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x91a);
    for _ in 0..opts.trials {
        let delta0 = rng.gen_range(0.01..=1.0);
        let norm = rng.gen_range(0.1..10.0);
        let a = norm * delta0 * rng.gen_range(0.01..1.0);
        let p = rng.gen_range(1e-6..0.5);
        let cert = GapCertificate::from_delta0(delta0)?;
        let obs = ObservableSpec::from_norm(Family::Custom, norm)?;
        let n = plan_required_n(&cert, &obs, a, p)?;
        let threshold = min_n_theorem_a(&cert)?.exact_n;
        let at = |n| theorem_a_bound(&cert, &obs, n, a).map(|b| b.raw);
        let ok = at(n)? <= p && n >= threshold && (n - 1 < threshold || at(n - 1)? > p);
        t.check(ok, || format!("delta0={delta0} norm={norm} a={a} p={p} -> n={n}"));
    }
    Ok(t.finish())
}

/// `(C, θ)` of every family constructor reproduces its gap through the lemma.
pub fn check_lemma_consistency() -> Result<CheckResult> {
    let mut t = Tally::new("lemma_consistency");
    for n in 1..=30u32 {
        for norm in HypercubeNorm::ALL {
            let input = hypercube_lemma_input(n, norm)?;
            let cert = hypercube_gap(n, norm)?;
            t.check((lemma_gap(input).delta0 - cert.delta0).abs() <= TOL, || format!("N={n}"));
        }
    }
    Ok(t.finish())
}

/// Runs every suite.
pub fn run_all(opts: VerifyOptions) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_gap_identities()?,
        check_lemma_consistency()?,
        check_hypercube_contraction(opts)?,
        check_petrov(opts)?,
        check_variance()?,
        check_doeblin(VerifyOptions { trials: (opts.trials / 2).max(1), ..opts })?,
        check_bv_contraction(opts)?,
        check_planner(opts)?,
    ])
}
