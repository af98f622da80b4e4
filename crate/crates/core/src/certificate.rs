//! Spectral-gap certificates.
//!
//! Every certificate is produced from a pair `(C, θ)`: a constant with
//! `‖f‖∞ ≤ C·V(f)` on zero-mean `f`, and a contraction factor `V(L0 f) ≤ θ·V(f)`
//! of the regularity seminorm. The resulting gap is `δ0 = (1−θ)/(1+Cθ)`.
//! The family constructors below only supply the `(C, θ)` of each chain.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest block length supported for the Bernoulli-convolution chain.
pub const MAX_ELL: u32 = 64;

/// Tolerance used to check `delta0` against `(1−θ)/(1+Cθ)`.
const IDENTITY_TOL: f64 = 1e-12;

/// Chain family (and norm) a certificate or an observable refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Doeblin chains on `L∞` with `‖·‖∞ + S(·)`.
    Doeblin,
    /// Hypercube walk, `‖·‖∞ + Lip(·)`.
    #[serde(rename = "hypercube_L")]
    HypercubeL,
    /// Hypercube walk, `‖·‖∞ + N·Lip(·)`.
    #[serde(rename = "hypercube_dL")]
    HypercubeDL,
    /// Hypercube walk, `‖·‖∞ + W(·)`.
    #[serde(rename = "hypercube_W")]
    HypercubeW,
    /// Block chain of the Bernoulli-convolution IFS on `BV(I_λ)`.
    BernoulliBv,
    /// User-supplied `(C, θ)`.
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Doeblin => "doeblin",
            Family::HypercubeL => "hypercube_L",
            Family::HypercubeDL => "hypercube_dL",
            Family::HypercubeW => "hypercube_W",
            Family::BernoulliBv => "bernoulli_bv",
            Family::Custom => "custom",
        }
    }
}

/// Which of the three hypercube norms a certificate is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypercubeNorm {
    L,
    #[serde(rename = "dL")]
    DL,
    W,
}

impl HypercubeNorm {
    pub const ALL: [HypercubeNorm; 3] = [HypercubeNorm::L, HypercubeNorm::DL, HypercubeNorm::W];

    pub fn family(self) -> Family {
        match self {
            HypercubeNorm::L => Family::HypercubeL,
            HypercubeNorm::DL => Family::HypercubeDL,
            HypercubeNorm::W => Family::HypercubeW,
        }
    }
}

impl std::str::FromStr for HypercubeNorm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(HypercubeNorm::L),
            "dL" | "dl" | "DL" => Ok(HypercubeNorm::DL),
            "W" | "w" => Ok(HypercubeNorm::W),
            other => Err(domain(format!("unknown hypercube norm {other:?} (expected L, dL or W)"))),
        }
    }
}

/// Family parameters recorded on a certificate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_slots: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
}

/// Input of the gap lemma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaInput {
    pub c_const: f64,
    pub theta: f64,
}

impl LemmaInput {
    pub fn new(c_const: f64, theta: f64) -> Result<Self> {
        if !(c_const > 0.0 && c_const.is_finite()) {
            return Err(domain(format!("C must be finite and > 0, got {c_const}")));
        }
        if !(0.0..1.0).contains(&theta) {
            return Err(domain(format!("theta must lie in [0, 1), got {theta}")));
        }
        Ok(Self { c_const, theta })
    }

    /// `(1−θ)/(1+Cθ)`.
    pub fn gap(&self) -> f64 {
        (1.0 - self.theta) / (1.0 + self.c_const * self.theta)
    }
}

/// A certified contraction gap together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub delta0: f64,
    pub family: Family,
    pub c_const: f64,
    pub theta: f64,
    pub params: FamilyParams,
}

impl GapCertificate {
    fn from_lemma(input: LemmaInput, family: Family, params: FamilyParams) -> Self {
        GapCertificate {
            delta0: input.gap(),
            family,
            c_const: input.c_const,
            theta: input.theta,
            params,
        }
    }

    /// A certificate carrying only a gap value, for bound evaluation when the
    /// `(C, θ)` provenance is not known. Recorded as `C = 0`, `θ = 1 − δ0`.
    pub fn from_delta0(delta0: f64) -> Result<Self> {
        check_delta0(delta0)?;
        Ok(GapCertificate {
            delta0,
            family: Family::Custom,
            c_const: 0.0,
            theta: 1.0 - delta0,
            params: FamilyParams::default(),
        })
    }

    /// Re-checks the invariants; useful for certificates read from JSON.
    pub fn validate(&self) -> Result<()> {
        check_delta0(self.delta0)?;
        if !(self.c_const >= 0.0) || !(0.0..1.0).contains(&self.theta) {
            return Err(domain("certificate has C < 0 or theta outside [0, 1)"));
        }
        if self.family != Family::Custom {
            let expected = (1.0 - self.theta) / (1.0 + self.c_const * self.theta);
            if (expected - self.delta0).abs() > IDENTITY_TOL {
                return Err(domain(format!(
                    "delta0 {} disagrees with (1-theta)/(1+C theta) = {expected}",
                    self.delta0
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_delta0(delta0: f64) -> Result<()> {
    if delta0 > 0.0 && delta0 <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("delta0 must lie in (0, 1], got {delta0}")))
    }
}

/// Gap from an arbitrary `(C, θ)` pair.
pub fn lemma_gap(input: LemmaInput) -> GapCertificate {
    GapCertificate::from_lemma(input, Family::Custom, FamilyParams::default())
}

/// One-step Doeblin minorization with constant `β`: `C = 1`, `θ = 1 − β`,
/// hence `δ0 = β/(2−β)`.
pub fn doeblin_gap(beta: f64) -> Result<GapCertificate> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(domain(format!("beta must lie in (0, 1], got {beta}")));
    }
    let input = LemmaInput::new(1.0, 1.0 - beta)?;
    Ok(GapCertificate::from_lemma(
        input,
        Family::Doeblin,
        FamilyParams { beta: Some(beta), ..Default::default() },
    ))
}

/// `(C, θ)` for the lazy walk on `{0,1}^N` in each norm.
pub fn hypercube_lemma_input(n_slots: u32, norm: HypercubeNorm) -> Result<LemmaInput> {
    if n_slots < 1 {
        return Err(domain("hypercube dimension N must be >= 1"));
    }
    let n = f64::from(n_slots);
    match norm {
        // Lipschitz curvature 1/N; zero-mean functions satisfy |f|∞ ≤ diam·Lip = N·Lip.
        HypercubeNorm::L => LemmaInput::new(n, 1.0 - 1.0 / n),
        HypercubeNorm::DL => LemmaInput::new(1.0, 1.0 - 1.0 / n),
        // |f|∞ ≤ S(f) ≤ W(f) by the path-counting (Petrov) inequality.
        HypercubeNorm::W => LemmaInput::new(1.0, 1.0 - 1.0 / (2.0 * n)),
    }
}

/// Gap of the lazy hypercube walk: `1/N²`, `1/(2N−1)`, `1/(4N−1)` for L, dL, W.
pub fn hypercube_gap(n_slots: u32, norm: HypercubeNorm) -> Result<GapCertificate> {
    let input = hypercube_lemma_input(n_slots, norm)?;
    Ok(GapCertificate::from_lemma(
        input,
        norm.family(),
        FamilyParams { n_slots: Some(n_slots), ..Default::default() },
    ))
}

/// Smallest `ℓ ≥ 1` with `λ^ℓ < 1/2` (strict), by repeated multiplication.
pub fn min_ell(lambda: f64) -> Result<u32> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(domain(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    let mut power = lambda;
    for ell in 1..=MAX_ELL {
        if power < 0.5 {
            return Ok(ell);
        }
        power *= lambda;
    }
    Err(domain(format!(
        "lambda = {lambda} needs a block length above {MAX_ELL}; unsupported"
    )))
}

/// Certificate for the `ℓ`-block chain of the IFS `x ↦ λx ± λ` on `BV(I_λ)`.
pub fn bernoulli_certificate(lambda: f64) -> Result<(u32, GapCertificate)> {
    let ell = min_ell(lambda)?;
    Ok((ell, bernoulli_certificate_with_ell(lambda, ell)?))
}

/// Same as [`bernoulli_certificate`] for a caller-chosen block length, which
/// must itself satisfy `λ^ℓ < 1/2`.
pub fn bernoulli_certificate_with_ell(lambda: f64, ell: u32) -> Result<GapCertificate> {
    let minimal = min_ell(lambda)?;
    if ell < minimal || ell > MAX_ELL {
        return Err(domain(format!(
            "block length {ell} does not satisfy lambda^ell < 1/2 (need >= {minimal}, <= {MAX_ELL})"
        )));
    }
    let input = LemmaInput::new(1.0, 1.0 - 0.5f64.powi(ell as i32))?;
    Ok(GapCertificate::from_lemma(
        input,
        Family::BernoulliBv,
        FamilyParams { lambda: Some(lambda), ell: Some(ell), ..Default::default() },
    ))
}
