//! Numerical constants of the concentration inequalities.
//!
//! Every constant used by [`crate::bounds`] is defined here exactly once and
//! listed in [`PROVENANCE`] together with the place it comes from, so that a
//! reader can audit the evaluators against the published statements.

/// Prefactor of the Gaussian regime of the general spectral-gap tail bound.
pub const A_GAUSS_PREFACTOR: f64 = 2.488;
/// Rate denominator `13.44·δ0 + 8.324`, coefficient of δ0.
pub const A_GAUSS_DEN_SLOPE: f64 = 13.44;
/// Rate denominator `13.44·δ0 + 8.324`, intercept.
pub const A_GAUSS_DEN_INTERCEPT: f64 = 8.324;
/// The Gaussian regime applies while `a/‖φ‖ ≤ δ0 / A_REGIME_DIVISOR`.
pub const A_REGIME_DIVISOR: f64 = 3.0;
/// Prefactor of the exponential regime.
pub const A_EXP_PREFACTOR: f64 = 2.624;
/// Numerator coefficient in `0.98·δ0² / (12 + 13·δ0)`.
pub const A_EXP_RATE_NUM: f64 = 0.98;
/// Shift `0.254·δ0` subtracted from `a/‖φ‖` in the exponential regime.
pub const A_EXP_SHIFT: f64 = 0.254;
/// `12 + 13·δ0`, shared by the exponential regime, the variance-bound window
/// and the burn-in threshold (`13` appears as `1 − δ0/13`).
pub const GAP_DEN_INTERCEPT: f64 = 12.0;
pub const GAP_DEN_SLOPE: f64 = 13.0;
/// Minimal-length condition `n ≥ 1 + log(100)/(−log(1 − δ0/13))`.
pub const A_MIN_N_LOG_ARG: f64 = 100.0;
/// Simplified length condition `n ≥ 60/δ0`, required by the variance bound.
pub const SIMPLIFIED_N_NUMERATOR: f64 = 60.0;

/// Prefactor of the variance-sensitive (Bernstein-type) bound.
pub const B_PREFACTOR: f64 = 2.637;
/// Cubic correction coefficient `10·(1 + 1/δ0)²`.
pub const B_CUBIC_COEFF: f64 = 10.0;

/// Doeblin corollary: `2.5·exp(−n a² β/(150 + 47β))`, valid for `n ≥ 120/β`, `a ≤ β/2`.
pub const DOEBLIN_PREFACTOR: f64 = 2.5;
pub const DOEBLIN_DEN_INTERCEPT: f64 = 150.0;
pub const DOEBLIN_DEN_SLOPE: f64 = 47.0;
/// Shared `120` of the Doeblin (`120/β`) and BV (`120·2^ℓ`) length conditions.
pub const COROLLARY_N_FACTOR: f64 = 120.0;
pub const DOEBLIN_A_DIVISOR: f64 = 2.0;

/// BV corollary: `2.488·exp(−n a²/(‖φ‖²(16.65·2^ℓ + 5.12)))`.
/// Its prefactor is [`A_GAUSS_PREFACTOR`].
pub const BV_DEN_SLOPE: f64 = 16.65;
pub const BV_DEN_INTERCEPT: f64 = 5.12;

/// One row of the provenance table.
#[derive(Debug, Clone, Copy)]
pub struct Provenance {
    pub name: &'static str,
    pub value: f64,
    pub source: &'static str,
}

pub const PROVENANCE: &[Provenance] = &[
    Provenance { name: "A_GAUSS_PREFACTOR", value: A_GAUSS_PREFACTOR, source: "general gap bound, Gaussian regime prefactor; also BV corollary prefactor" },
    Provenance { name: "A_GAUSS_DEN_SLOPE", value: A_GAUSS_DEN_SLOPE, source: "general gap bound, Gaussian rate delta0/(13.44 delta0 + 8.324)" },
    Provenance { name: "A_GAUSS_DEN_INTERCEPT", value: A_GAUSS_DEN_INTERCEPT, source: "general gap bound, Gaussian rate delta0/(13.44 delta0 + 8.324)" },
    Provenance { name: "A_REGIME_DIVISOR", value: A_REGIME_DIVISOR, source: "general gap bound, regime split a/|phi| <= delta0/3" },
    Provenance { name: "A_EXP_PREFACTOR", value: A_EXP_PREFACTOR, source: "general gap bound, exponential regime prefactor" },
    Provenance { name: "A_EXP_RATE_NUM", value: A_EXP_RATE_NUM, source: "general gap bound, exponential rate 0.98 delta0^2/(12 + 13 delta0)" },
    Provenance { name: "A_EXP_SHIFT", value: A_EXP_SHIFT, source: "general gap bound, exponential regime shift a/|phi| - 0.254 delta0" },
    Provenance { name: "GAP_DEN_INTERCEPT", value: GAP_DEN_INTERCEPT, source: "12 + 13 delta0 (exponential rate, variance-bound window)" },
    Provenance { name: "GAP_DEN_SLOPE", value: GAP_DEN_SLOPE, source: "12 + 13 delta0; 1 - delta0/13 in the minimal length" },
    Provenance { name: "A_MIN_N_LOG_ARG", value: A_MIN_N_LOG_ARG, source: "general gap bound, n >= 1 + log 100/(-log(1 - delta0/13))" },
    Provenance { name: "SIMPLIFIED_N_NUMERATOR", value: SIMPLIFIED_N_NUMERATOR, source: "strengthened length condition n >= 60/delta0; variance bound length condition" },
    Provenance { name: "B_PREFACTOR", value: B_PREFACTOR, source: "variance bound prefactor" },
    Provenance { name: "B_CUBIC_COEFF", value: B_CUBIC_COEFF, source: "variance bound cubic term 10 (1 + 1/delta0)^2 |phi|^3 a^3/U^3" },
    Provenance { name: "DOEBLIN_PREFACTOR", value: DOEBLIN_PREFACTOR, source: "Doeblin corollary prefactor" },
    Provenance { name: "DOEBLIN_DEN_INTERCEPT", value: DOEBLIN_DEN_INTERCEPT, source: "Doeblin corollary rate beta/(150 + 47 beta)" },
    Provenance { name: "DOEBLIN_DEN_SLOPE", value: DOEBLIN_DEN_SLOPE, source: "Doeblin corollary rate beta/(150 + 47 beta)" },
    Provenance { name: "COROLLARY_N_FACTOR", value: COROLLARY_N_FACTOR, source: "Doeblin n >= 120/beta; BV n >= 120 2^ell" },
    Provenance { name: "DOEBLIN_A_DIVISOR", value: DOEBLIN_A_DIVISOR, source: "Doeblin corollary window a <= beta/2" },
    Provenance { name: "BV_DEN_SLOPE", value: BV_DEN_SLOPE, source: "BV corollary rate 1/(|phi|^2 (16.65 2^ell + 5.12))" },
    Provenance { name: "BV_DEN_INTERCEPT", value: BV_DEN_INTERCEPT, source: "BV corollary rate 1/(|phi|^2 (16.65 2^ell + 5.12))" },
];
