//! Explicit tail bounds for `P[|μ̂_n(φ) − μ0(φ)| ≥ a]` and their inversion into
//! sample-size budgets.
//!
//! Evaluators never abort on a violated hypothesis: the formula is always
//! evaluated, and the violated conditions are recorded on the
//! [`BoundResult`]. Only inputs for which the formula itself is undefined
//! (negative `a`, `U ≤ 0`, ...) produce an [`Error`].

use serde::{Deserialize, Serialize};

use crate::certificate::{check_delta0, Family, GapCertificate};
use crate::constants::*;
use crate::error::{domain, Error, Result};

/// Norm data of an observable in one of the `‖·‖∞ + V(·)` spaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableSpec {
    pub family: Family,
    pub norm: f64,
    pub sup_norm: f64,
    pub seminorm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
}

impl ObservableSpec {
    /// Combines the two parts; `norm = sup_norm + seminorm`.
    pub fn new(family: Family, sup_norm: f64, seminorm: f64) -> Result<Self> {
        if !(sup_norm >= 0.0 && seminorm >= 0.0) || !(sup_norm + seminorm).is_finite() {
            return Err(domain("sup norm and seminorm must be finite and >= 0"));
        }
        let norm = sup_norm + seminorm;
        if norm <= 0.0 {
            return Err(domain("observable norm must be > 0"));
        }
        Ok(Self { family, norm, sup_norm, seminorm, sigma2: None })
    }

    /// When only `‖φ‖` is known. The split is recorded as `sup = ‖φ‖`,
    /// `seminorm = 0`; only `‖φ‖` enters the bounds.
    pub fn from_norm(family: Family, norm: f64) -> Result<Self> {
        Self::new(family, norm, 0.0)
    }

    pub fn with_sigma2(mut self, sigma2: f64) -> Result<Self> {
        if !(sigma2 >= 0.0) {
            return Err(domain(format!("sigma2 must be >= 0, got {sigma2}")));
        }
        self.sigma2 = Some(sigma2);
        Ok(self)
    }
}

/// Which formula produced a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Gaussian,
    Exponential,
    Variance,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Gaussian => "gaussian",
            Regime::Exponential => "exponential",
            Regime::Variance => "variance",
        }
    }
}

/// A violated hypothesis of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    /// `n` below the length required by the bound.
    NTooSmall,
    /// `a` outside the deviation window of the bound.
    AWindow,
    /// Variance proxy `U` below the known dynamical variance.
    UBelowSigma2,
    /// Observable norm family differs from the certificate's.
    NormFamilyMismatch,
}

impl Violation {
    pub fn code(self) -> &'static str {
        match self {
            Violation::NTooSmall => "N_TOO_SMALL",
            Violation::AWindow => "A_WINDOW",
            Violation::UBelowSigma2 => "U_BELOW_SIGMA2",
            Violation::NormFamilyMismatch => "NORM_FAMILY_MISMATCH",
        }
    }
}

/// An evaluated tail bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Formula value; may exceed 1.
    pub raw: f64,
    /// `min(raw, 1)`.
    pub clipped: f64,
    pub regime: Regime,
    pub valid: bool,
    pub violated_preconditions: Vec<Violation>,
}

impl BoundResult {
    fn from_log(log_raw: f64, regime: Regime, violated: Vec<Violation>) -> Self {
        let raw = log_raw.exp();
        BoundResult {
            raw,
            clipped: raw.min(1.0),
            regime,
            valid: violated.is_empty(),
            violated_preconditions: violated,
        }
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.violated_preconditions.iter().map(|v| v.code()).collect()
    }
}

/// Minimal chain lengths for the general gap bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinN {
    /// `⌈1 + log 100 / (−log(1 − δ0/13))⌉`.
    pub exact_n: u64,
    /// `⌈60/δ0⌉`.
    pub simplified_n: u64,
}

pub fn min_n_theorem_a(cert: &GapCertificate) -> Result<MinN> {
    check_delta0(cert.delta0)?;
    let d = cert.delta0;
    // -ln(1 - d/13) via ln_1p keeps precision for small gaps.
    let denom = -(-d / GAP_DEN_SLOPE).ln_1p();
    let exact = 1.0 + A_MIN_N_LOG_ARG.ln() / denom;
    Ok(MinN { exact_n: ceil_u64(exact), simplified_n: ceil_u64(SIMPLIFIED_N_NUMERATOR / d) })
}

fn ceil_u64(x: f64) -> u64 {
    let c = x.ceil();
    if c >= u64::MAX as f64 {
        u64::MAX
    } else {
        c as u64
    }
}

/// Gaussian-regime rate `δ0/(13.44δ0 + 8.324)`.
pub fn gaussian_rate(delta0: f64) -> f64 {
    delta0 / (A_GAUSS_DEN_SLOPE * delta0 + A_GAUSS_DEN_INTERCEPT)
}

/// Exponential-regime rate `0.98δ0²/(12 + 13δ0)`.
pub fn exponential_rate(delta0: f64) -> f64 {
    A_EXP_RATE_NUM * delta0 * delta0 / (GAP_DEN_INTERCEPT + GAP_DEN_SLOPE * delta0)
}

/// Whether `a/‖φ‖` falls in the Gaussian regime (ties go Gaussian).
pub fn is_gaussian_regime(delta0: f64, norm: f64, a: f64) -> bool {
    a / norm <= delta0 / A_REGIME_DIVISOR
}

fn family_violation(cert: &GapCertificate, obs: &ObservableSpec) -> Option<Violation> {
    let mismatch = cert.family != Family::Custom
        && obs.family != Family::Custom
        && cert.family != obs.family;
    mismatch.then_some(Violation::NormFamilyMismatch)
}

fn check_obs(obs: &ObservableSpec) -> Result<()> {
    if !(obs.norm > 0.0 && obs.norm.is_finite()) {
        return Err(domain(format!("observable norm must be finite and > 0, got {}", obs.norm)));
    }
    Ok(())
}

fn check_a(a: f64) -> Result<()> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(domain(format!("deviation a must be finite and >= 0, got {a}")));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(domain("chain length n must be >= 1"));
    }
    Ok(())
}

/// Log of the general gap bound, without precondition bookkeeping.
fn theorem_a_log(delta0: f64, norm: f64, n: f64, a: f64) -> (f64, Regime) {
    let x = a / norm;
    if is_gaussian_regime(delta0, norm, a) {
        (A_GAUSS_PREFACTOR.ln() - n * gaussian_rate(delta0) * x * x, Regime::Gaussian)
    } else {
        (
            A_EXP_PREFACTOR.ln() - n * exponential_rate(delta0) * (x - A_EXP_SHIFT * delta0),
            Regime::Exponential,
        )
    }
}

/// General tail bound from a certified gap, valid for
/// `n ≥ 1 + log 100/(−log(1−δ0/13))`.
pub fn theorem_a_bound(
    cert: &GapCertificate,
    obs: &ObservableSpec,
    n: u64,
    a: f64,
) -> Result<BoundResult> {
    check_a(a)?;
    check_n(n)?;
    check_obs(obs)?;
    let min_n = min_n_theorem_a(cert)?;

    let mut violated = Vec::new();
    if n < min_n.exact_n {
        violated.push(Violation::NTooSmall);
    }
    violated.extend(family_violation(cert, obs));

    let (log_raw, regime) = theorem_a_log(cert.delta0, obs.norm, n as f64, a);
    Ok(BoundResult::from_log(log_raw, regime, violated))
}

/// Largest deviation allowed by the variance bound:
/// `(U/‖φ‖)·log(1 + δ0²/(12+13δ0))`.
pub fn theorem_b_window(delta0: f64, norm: f64, u: f64) -> f64 {
    let ratio = delta0 * delta0 / (GAP_DEN_INTERCEPT + GAP_DEN_SLOPE * delta0);
    u / norm * ratio.ln_1p()
}

/// Variance-sensitive bound with variance proxy `U ≥ σ²(φ)`.
///
/// The cubic correction can dominate inside the window, in which case `raw`
/// exceeds the prefactor; it is reported as computed.
pub fn theorem_b_bound(
    cert: &GapCertificate,
    obs: &ObservableSpec,
    u: f64,
    n: u64,
    a: f64,
) -> Result<BoundResult> {
    check_a(a)?;
    check_n(n)?;
    check_obs(obs)?;
    check_delta0(cert.delta0)?;
    if !(u > 0.0 && u.is_finite()) {
        return Err(domain(format!("variance proxy U must be finite and > 0, got {u}")));
    }
    let d = cert.delta0;
    let mut violated = Vec::new();
    if n < min_n_theorem_a(cert)?.simplified_n {
        violated.push(Violation::NTooSmall);
    }
    if obs.sigma2.is_some_and(|s2| u < s2) {
        violated.push(Violation::UBelowSigma2);
    }
    if a > theorem_b_window(d, obs.norm, u) {
        violated.push(Violation::AWindow);
    }
    violated.extend(family_violation(cert, obs));

    let inv = 1.0 + 1.0 / d;
    let cubic = B_CUBIC_COEFF * inv * inv * obs.norm.powi(3) * a.powi(3) / u.powi(3);
    let rate = a * a / (2.0 * u) - cubic;
    Ok(BoundResult::from_log(B_PREFACTOR.ln() - n as f64 * rate, Regime::Variance, violated))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("beta must lie in (0, 1], got {beta}")))
    }
}

/// Rate `β/(150 + 47β)` of the Doeblin corollary.
pub fn doeblin_rate(beta: f64) -> f64 {
    beta / (DOEBLIN_DEN_INTERCEPT + DOEBLIN_DEN_SLOPE * beta)
}

/// Tail bound for a chain with one-step minorization constant `β`, for
/// observables with values in `[−1, 1]` (not checked here).
pub fn doeblin_corollary_bound(beta: f64, n: u64, a: f64) -> Result<BoundResult> {
    check_beta(beta)?;
    check_a(a)?;
    check_n(n)?;
    let mut violated = Vec::new();
    if (n as f64) < COROLLARY_N_FACTOR / beta {
        violated.push(Violation::NTooSmall);
    }
    if a > beta / DOEBLIN_A_DIVISOR {
        violated.push(Violation::AWindow);
    }
    let log_raw = DOEBLIN_PREFACTOR.ln() - n as f64 * a * a * doeblin_rate(beta);
    Ok(BoundResult::from_log(log_raw, Regime::Gaussian, violated))
}

fn check_ell(ell: u32) -> Result<()> {
    if (1..=crate::certificate::MAX_ELL).contains(&ell) {
        Ok(())
    } else {
        Err(domain(format!("block length ell must lie in [1, 64], got {ell}")))
    }
}

/// Deviation window `a < ‖φ‖_BV / (3(2^{ℓ+1} − 1))` of the BV corollary.
pub fn bv_window(ell: u32, norm_bv: f64) -> f64 {
    norm_bv / (A_REGIME_DIVISOR * (2f64.powi(ell as i32 + 1) - 1.0))
}

/// Minimal length `120·2^ℓ` of the BV corollary.
pub fn bv_min_n(ell: u32) -> f64 {
    COROLLARY_N_FACTOR * 2f64.powi(ell as i32)
}

/// Tail bound for the `ℓ`-block Bernoulli-convolution chain and a BV observable.
pub fn bv_corollary_bound(ell: u32, norm_bv: f64, n: u64, a: f64) -> Result<BoundResult> {
    check_ell(ell)?;
    if !(norm_bv > 0.0 && norm_bv.is_finite()) {
        return Err(domain(format!("BV norm must be finite and > 0, got {norm_bv}")));
    }
    check_a(a)?;
    check_n(n)?;
    let mut violated = Vec::new();
    if (n as f64) < bv_min_n(ell) {
        violated.push(Violation::NTooSmall);
    }
    if a >= bv_window(ell, norm_bv) {
        violated.push(Violation::AWindow);
    }
    let den = norm_bv * norm_bv * (BV_DEN_SLOPE * 2f64.powi(ell as i32) + BV_DEN_INTERCEPT);
    let log_raw = A_GAUSS_PREFACTOR.ln() - n as f64 * a * a / den;
    Ok(BoundResult::from_log(log_raw, Regime::Gaussian, violated))
}

/// Smallest `n ≥ exact_n` for which the general gap bound is `≤ target_p`.
///
/// The regime is fixed by `a/‖φ‖`, so the bound is a single exponential in
/// `n` and can be inverted in closed form; the result is then corrected by
/// re-evaluation to absorb rounding.
pub fn plan_required_n(
    cert: &GapCertificate,
    obs: &ObservableSpec,
    a: f64,
    target_p: f64,
) -> Result<u64> {
    check_a(a)?;
    check_obs(obs)?;
    if !(target_p > 0.0 && target_p.is_finite()) {
        return Err(domain(format!("target probability must be > 0, got {target_p}")));
    }
    if a == 0.0 {
        return Err(Error::Infeasible("the event |mean - mu0| >= 0 is certain; a must be > 0".into()));
    }
    let threshold = min_n_theorem_a(cert)?.exact_n;
    let d = cert.delta0;
    let x = a / obs.norm;
    let (prefactor, rate) = if is_gaussian_regime(d, obs.norm, a) {
        (A_GAUSS_PREFACTOR, gaussian_rate(d) * x * x)
    } else {
        (A_EXP_PREFACTOR, exponential_rate(d) * (x - A_EXP_SHIFT * d))
    };

    let needed = (prefactor / target_p).ln();
    let mut n = if needed <= 0.0 {
        threshold
    } else if rate <= 0.0 {
        return Err(Error::Infeasible(format!(
            "bound stays at {prefactor} for a = {a}; no n reaches {target_p}"
        )));
    } else {
        ceil_u64(needed / rate).max(threshold)
    };

    let bound_at = |n: u64| theorem_a_bound(cert, obs, n, a).map(|b| b.raw);
    while bound_at(n)? > target_p {
        n = n.checked_add(1).ok_or_else(|| Error::Infeasible("n overflow".into()))?;
    }
    while n > threshold && bound_at(n - 1)? <= target_p {
        n -= 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{bernoulli_certificate_with_ell, doeblin_gap};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn cert(d: f64) -> GapCertificate {
        GapCertificate::from_delta0(d).unwrap()
    }

    fn obs(norm: f64) -> ObservableSpec {
        ObservableSpec::from_norm(Family::Custom, norm).unwrap()
    }

    #[test]
    fn min_n_examples() {
        assert_eq!(min_n_theorem_a(&cert(0.5)).unwrap(), MinN { exact_n: 119, simplified_n: 120 });
        assert_eq!(min_n_theorem_a(&cert(1.0)).unwrap(), MinN { exact_n: 59, simplified_n: 60 });
        assert!(min_n_theorem_a(&GapCertificate { delta0: 0.0, ..cert(0.5) }).is_err());
    }

    #[test]
    fn theorem_a_examples() {
        let b = theorem_a_bound(&cert(0.5), &obs(1.0), 200, 0.0).unwrap();
        assert_abs_diff_eq!(b.raw, 2.488, epsilon = 1e-12);
        assert_eq!(b.regime, Regime::Gaussian);
        assert_eq!(b.clipped, 1.0);
        assert!(b.valid);

        let b = theorem_a_bound(&cert(0.5), &obs(1.0), 200, 0.1).unwrap();
        assert_relative_eq!(b.raw, 2.327995255412158, max_relative = 1e-12);

        let b = theorem_a_bound(&cert(0.5), &obs(1.0), 1000, 0.5).unwrap();
        assert_eq!(b.regime, Regime::Exponential);
        assert_relative_eq!(b.raw, 0.018778740778504662, max_relative = 1e-12);
        assert_eq!(b.clipped, b.raw);
    }

    #[test]
    fn theorem_a_flags_short_chains_but_still_evaluates() {
        let b = theorem_a_bound(&cert(0.5), &obs(1.0), 118, 0.1).unwrap();
        assert!(!b.valid);
        assert_eq!(b.codes(), vec!["N_TOO_SMALL"]);
        assert!(b.raw > 0.0);
        assert!(theorem_a_bound(&cert(0.5), &obs(1.0), 119, 0.1).unwrap().valid);
    }

    #[test]
    fn theorem_a_domain_errors() {
        assert!(theorem_a_bound(&cert(0.5), &obs(1.0), 200, -0.1).is_err());
        assert!(theorem_a_bound(&cert(0.5), &obs(1.0), 0, 0.1).is_err());
    }

    #[test]
    fn regime_tie_goes_gaussian() {
        let d = 0.75;
        let b = theorem_a_bound(&cert(d), &obs(1.0), 1000, 0.25).unwrap();
        assert_eq!(b.regime, Regime::Gaussian);
        let b = theorem_a_bound(&cert(d), &obs(1.0), 1000, 0.25 + 1e-12).unwrap();
        assert_eq!(b.regime, Regime::Exponential);
    }

    #[test]
    fn family_mismatch_is_flagged() {
        let c = doeblin_gap(0.5).unwrap();
        let o = ObservableSpec::from_norm(Family::HypercubeW, 1.0).unwrap();
        let b = theorem_a_bound(&c, &o, 10_000, 0.01).unwrap();
        assert_eq!(b.codes(), vec!["NORM_FAMILY_MISMATCH"]);
    }

    #[test]
    fn theorem_b_examples() {
        let b = theorem_b_bound(&cert(0.5), &obs(1.0), 1.0, 1_000_000, 0.0).unwrap();
        assert_abs_diff_eq!(b.raw, 2.637, epsilon = 1e-12);
        assert_eq!(b.regime, Regime::Variance);

        let b = theorem_b_bound(&cert(0.5), &obs(1.0), 1.0, 1_000_000, 0.002).unwrap();
        assert_relative_eq!(b.raw, 0.7331843612950731, max_relative = 1e-9);
        assert!(b.valid);

        let b = theorem_b_bound(&cert(0.5), &obs(1.0), 1.0, 1_000_000, 0.02).unwrap();
        assert!(!b.valid);
        assert_eq!(b.codes(), vec!["A_WINDOW"]);
        assert_relative_eq!(theorem_b_window(0.5, 1.0, 1.0), 0.01342302033214077, max_relative = 1e-12);
    }

    #[test]
    fn theorem_b_flags() {
        let o = obs(1.0).with_sigma2(2.0).unwrap();
        let b = theorem_b_bound(&cert(0.5), &o, 1.0, 100, 0.001).unwrap();
        assert_eq!(b.codes(), vec!["N_TOO_SMALL", "U_BELOW_SIGMA2"]);
        assert!(theorem_b_bound(&cert(0.5), &o, 0.0, 100, 0.001).is_err());
    }

    #[test]
    fn theorem_b_may_exceed_prefactor() {
        // Near the window edge the cubic term outweighs the quadratic one.
        let b = theorem_b_bound(&cert(0.5), &obs(1.0), 1.0, 120, 0.013).unwrap();
        assert!(b.valid);
        assert!(b.raw > 2.637);
        assert_eq!(b.clipped, 1.0);
    }

    #[test]
    fn doeblin_examples() {
        let b = doeblin_corollary_bound(0.5, 10_000, 0.2).unwrap();
        assert_relative_eq!(b.raw, 0.7894277048471428, max_relative = 1e-12);
        assert!(b.valid);
        let b = doeblin_corollary_bound(1.0, 5000, 0.5).unwrap();
        assert_relative_eq!(b.raw, 0.0043879771976798555, max_relative = 1e-12);
        let b = doeblin_corollary_bound(0.5, 100, 0.2).unwrap();
        assert_eq!(b.codes(), vec!["N_TOO_SMALL"]);
        let b = doeblin_corollary_bound(0.5, 1000, 0.3).unwrap();
        assert_eq!(b.codes(), vec!["A_WINDOW"]);
        assert!(doeblin_corollary_bound(0.0, 100, 0.1).is_err());
        assert!(doeblin_corollary_bound(1.1, 100, 0.1).is_err());
    }

    #[test]
    fn bv_examples() {
        let b = bv_corollary_bound(2, 1.0, 1000, 0.04).unwrap();
        assert_relative_eq!(b.raw, 2.433109807931614, max_relative = 1e-12);
        assert!(b.valid);
        let b = bv_corollary_bound(2, 1.0, 1000, 0.0).unwrap();
        assert_abs_diff_eq!(b.raw, 2.488, epsilon = 1e-12);
        let b = bv_corollary_bound(1, 2.0, 100, 0.1).unwrap();
        assert_eq!(b.codes(), vec!["N_TOO_SMALL"]);
        assert!(bv_corollary_bound(0, 1.0, 100, 0.1).is_err());
        assert!(bv_corollary_bound(1, 0.0, 100, 0.1).is_err());
    }

    #[test]
    fn plan_examples() {
        // ln(2.488/0.05)/(rate·a²) = 11756.02, so 11756 still leaves the bound at 0.0500003.
        assert_eq!(plan_required_n(&cert(0.5), &obs(1.0), 0.1, 0.05).unwrap(), 11757);
        assert_eq!(plan_required_n(&cert(0.5), &obs(1.0), 0.1, 2.488).unwrap(), 119);
        assert!(matches!(
            plan_required_n(&cert(0.5), &obs(1.0), 0.0, 0.05),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            plan_required_n(&cert(0.5), &obs(1.0), 0.0, 2.488),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn bv_corollary_matches_general_bound() {
        for ell in 1..=8u32 {
            let c = bernoulli_certificate_with_ell(0.5f64.powf(1.0 / (ell as f64 - 0.5)), ell)
                .unwrap();
            let o = ObservableSpec::from_norm(Family::BernoulliBv, 1.0).unwrap();
            let a = 0.9 * bv_window(ell, 1.0);
            let n = 10 * bv_min_n(ell) as u64;
            let general = theorem_a_bound(&c, &o, n, a).unwrap();
            assert_eq!(general.regime, Regime::Gaussian);
            let corollary = bv_corollary_bound(ell, 1.0, n, a).unwrap();
            let exp_g = (A_GAUSS_PREFACTOR / general.raw).ln();
            let exp_c = (A_GAUSS_PREFACTOR / corollary.raw).ln();
            assert!((exp_g - exp_c).abs() / exp_g < 5e-3, "ell={ell}: {exp_g} vs {exp_c}");
        }
    }

    proptest! {
        #[test]
        fn exact_min_n_never_exceeds_simplified(d in 1e-6f64..=1.0) {
            let m = min_n_theorem_a(&cert(d)).unwrap();
            prop_assert!(m.exact_n <= m.simplified_n);
        }

        #[test]
        fn theorem_a_monotone_in_n_and_a(
            d in 0.01f64..=1.0, norm in 0.1f64..10.0, n in 1u64..100_000, frac in 0.0f64..1.0, frac2 in 0.0f64..1.0,
        ) {
            let amax = norm * d / 3.0;
            let (a1, a2) = if frac <= frac2 { (frac * amax, frac2 * amax) } else { (frac2 * amax, frac * amax) };
            let b = |n, a| theorem_a_bound(&cert(d), &obs(norm), n, a).unwrap().raw;
            prop_assert!(b(n + 1, a1) <= b(n, a1));
            prop_assert!(b(n, a2) <= b(n, a1));
        }

        #[test]
        fn corollaries_monotone(beta in 0.01f64..=1.0, ell in 1u32..10, n in 1u64..1_000_000, a1 in 0.0f64..1.0, a2 in 0.0f64..1.0) {
            let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
            let d = |n, a| doeblin_corollary_bound(beta, n, a).unwrap().raw;
            prop_assert!(d(n + 1, lo) <= d(n, lo));
            prop_assert!(d(n, hi) <= d(n, lo));
            let v = |n, a| bv_corollary_bound(ell, 1.0, n, a).unwrap().raw;
            prop_assert!(v(n + 1, lo) <= v(n, lo));
            prop_assert!(v(n, hi) <= v(n, lo));
        }

        #[test]
        fn doeblin_corollary_is_weaker_than_general_bound(beta in 0.01f64..=1.0, n in 1u64..1_000_000, frac in 0.0f64..=1.0) {
            let a = frac * beta / 2.0;
            let c = doeblin_gap(beta).unwrap();
            let o = ObservableSpec::from_norm(Family::Doeblin, 3.0).unwrap();
            let general = theorem_a_bound(&c, &o, n, a).unwrap();
            prop_assert_eq!(general.regime, Regime::Gaussian);
            let corollary = doeblin_corollary_bound(beta, n, a).unwrap();
            prop_assert!(corollary.raw.ln() >= general.raw.ln() - 1e-12);
        }

        #[test]
        fn planner_output_is_minimal(d in 0.01f64..=1.0, norm in 0.1f64..5.0, frac in 0.01f64..3.0, p in 1e-6f64..0.99) {
            let a = frac * norm * d / 3.0;
            let n = plan_required_n(&cert(d), &obs(norm), a, p).unwrap();
            let b = |n| theorem_a_bound(&cert(d), &obs(norm), n, a).unwrap().raw;
            let threshold = min_n_theorem_a(&cert(d)).unwrap().exact_n;
            prop_assert!(b(n) <= p);
            prop_assert!(n >= threshold);
            prop_assert!(n - 1 < threshold || b(n - 1) > p);
        }
    }
}
