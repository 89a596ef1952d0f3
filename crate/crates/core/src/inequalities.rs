//! One checkable predicate per inequality. Each check computes both sides at
//! full quadrature precision and returns an [`InequalityReport`].
//!
//! A check returns `Err` with [`Error::Precondition`] or
//! [`Error::HypothesisFailed`] when the inequality does not apply; a report with
//! `satisfied = false` is a genuine violation. Before a violation is reported
//! the zero-location certificates are re-run at the strict residual
//! [`ROOT_RESIDUAL_TOL_STRICT`].

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CERT_TOL;
use crate::poly::{LacunaryShape, Polynomial, ROOT_RESIDUAL_TOL, ROOT_RESIDUAL_TOL_STRICT};
use crate::quad::{
    circle_integral, cp_constant_with, double_circle_integral, lp_norm, lp_norm_fn, sup_norm,
    NormConvention, PExponent, QuadratureResult, QuadratureSpec,
};

/// Relative slack in `lhs <= rhs (1 + SLACK) + ABS_SLACK`.
pub const SLACK: f64 = 1e-9;
pub const ABS_SLACK: f64 = 1e-12;
/// Pointwise identities must hold to this normalised discrepancy.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Relative tolerance for `|Q| = |P|` on the unit circle.
pub const MODULUS_IDENTITY_TOL: f64 = 1e-12;
/// Nodes used by the identity checks.
pub const IDENTITY_NODES: usize = 512;
/// Nodes on `|z| = K` used to verify the majorant hypothesis `|P| <= |Q|`.
pub const MAJORANT_NODES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    /// `max|P'| <= n max|P|`
    Bernstein,
    /// `mean‖P'‖_p <= n mean‖P‖_p`
    Zygmund,
    /// `max|D_α P| <= n|α| max|P|`, `|α| > 1`
    AzizShah,
    /// `‖D_α P‖_p <= n(|α|+1)‖P‖_p`
    TheoremA,
    /// `‖P'‖_p <= n C_p ‖P‖_p`, `P` zero-free in `|z| < 1`
    Debruijn,
    /// `‖D_α P‖_p <= n(|α|+1) C_p ‖P‖_p`, `P` zero-free in `|z| < 1`
    TheoremB,
    /// Variant with `‖D_α P‖_p` on both sides.
    TheoremBPrinted,
    /// Restricted-zero bound with the factor `(|α|-K)/(K+1)`.
    TheoremC,
    /// Lacunary generalisation with the factor `(|α|-K^μ)/(K^μ+1)`.
    Main,
    /// `|D_α P| >= n (|α|-K^μ)/K^μ |P|` on `|z| = 1`.
    Lemma1Printed,
    /// `|D_α P| >= n (|α|-K^μ)/(K^μ+1) |P|` on `|z| = 1`.
    Lemma1Proof,
    /// Pointwise comparison of `z D_α P + cβP` against a majorant `Q`.
    Lemma2,
    /// `∫∫|Q' + e^{iφ}P'|^p <= 2π n^p ∫|P|^p`.
    Lemma3,
    /// `lemma3` without the `2π` factor.
    Lemma3Printed,
    /// `nP - zP' = z^{n-1} conj(Q')` and its mirror, on `|z| = 1`.
    ReciprocalIdentity,
    /// `|Q| = |P|` on `|z| = 1`.
    ConjugateModulus,
}

impl CheckName {
    pub const ALL: [CheckName; 16] = [
        CheckName::Bernstein,
        CheckName::Zygmund,
        CheckName::AzizShah,
        CheckName::TheoremA,
        CheckName::Debruijn,
        CheckName::TheoremB,
        CheckName::TheoremBPrinted,
        CheckName::TheoremC,
        CheckName::Main,
        CheckName::Lemma1Printed,
        CheckName::Lemma1Proof,
        CheckName::Lemma2,
        CheckName::Lemma3,
        CheckName::Lemma3Printed,
        CheckName::ReciprocalIdentity,
        CheckName::ConjugateModulus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Bernstein => "bernstein",
            CheckName::Zygmund => "zygmund",
            CheckName::AzizShah => "aziz-shah",
            CheckName::TheoremA => "theorem-a",
            CheckName::Debruijn => "debruijn",
            CheckName::TheoremB => "theorem-b",
            CheckName::TheoremBPrinted => "theorem-b-printed",
            CheckName::TheoremC => "theorem-c",
            CheckName::Main => "main",
            CheckName::Lemma1Printed => "lemma1-printed",
            CheckName::Lemma1Proof => "lemma1-proof",
            CheckName::Lemma2 => "lemma2",
            CheckName::Lemma3 => "lemma3",
            CheckName::Lemma3Printed => "lemma3-printed",
            CheckName::ReciprocalIdentity => "reciprocal-identity",
            CheckName::ConjugateModulus => "conjugate-modulus",
        }
    }

    /// Whether the check is a pointwise inequality on the circle.
    pub fn is_pointwise(self) -> bool {
        matches!(self, CheckName::Lemma1Printed | CheckName::Lemma1Proof | CheckName::Lemma2)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "main-theorem" => Some(CheckName::Main),
            "theorem-b-corrected" => Some(CheckName::TheoremB),
            "de-bruijn" => Some(CheckName::Debruijn),
            "reciprocal" => Some(CheckName::ReciprocalIdentity),
            _ => None,
        };
        alias
            .or_else(|| CheckName::ALL.into_iter().find(|c| c.as_str() == key))
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Scalar parameters of a check; each check uses the subset it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InequalityParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PExponent>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
}

/// How the two sides were measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Sup,
    Mean,
    Unnormalized,
    Pointwise,
    DoubleIntegral,
    Identity,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Convention::Sup => "sup",
            Convention::Mean => "mean",
            Convention::Unnormalized => "unnormalized",
            Convention::Pointwise => "pointwise",
            Convention::DoubleIntegral => "double_integral",
            Convention::Identity => "identity",
        };
        f.write_str(s)
    }
}

impl From<NormConvention> for Convention {
    fn from(c: NormConvention) -> Self {
        match c {
            NormConvention::Mean => Convention::Mean,
            NormConvention::Unnormalized => Convention::Unnormalized,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadraturePair {
    pub lhs: Option<QuadratureResult>,
    pub rhs: Option<QuadratureResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: CheckName,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; 0 when both sides vanish.
    pub ratio: f64,
    /// `rhs - lhs`
    pub margin: f64,
    pub satisfied: bool,
    pub params: InequalityParams,
    pub polynomial: Polynomial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub majorant: Option<Polynomial>,
    pub quadrature: QuadraturePair,
    pub convention: Convention,
    /// Angle of the worst node, for pointwise checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_theta: Option<f64>,
}

impl InequalityReport {
    fn new(
        name: CheckName,
        lhs: f64,
        rhs: f64,
        params: InequalityParams,
        polynomial: &Polynomial,
        convention: Convention,
    ) -> Self {
        let ratio = if rhs > 0.0 {
            lhs / rhs
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        InequalityReport {
            name,
            lhs,
            rhs,
            ratio,
            margin: rhs - lhs,
            satisfied: satisfies(lhs, rhs),
            params,
            polynomial: polynomial.clone(),
            majorant: None,
            quadrature: QuadraturePair::default(),
            convention,
            worst_theta: None,
        }
    }

    fn with_quadrature(mut self, lhs: Option<QuadratureResult>, rhs: Option<QuadratureResult>) -> Self {
        self.quadrature = QuadraturePair { lhs, rhs };
        self
    }
}

pub fn satisfies(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + SLACK) + ABS_SLACK
}

fn p_of(p: PExponent) -> Option<PExponent> {
    Some(p)
}

fn require_alpha_at_least(alpha: Complex64, bound: f64, strict: bool) -> Result<()> {
    let a = alpha.norm();
    let ok = if strict { a > bound } else { a >= bound };
    if ok {
        Ok(())
    } else {
        let op = if strict { ">" } else { ">=" };
        Err(Error::Precondition(format!("|alpha| = {a} must be {op} {bound}")))
    }
}

fn require_beta(beta: Complex64) -> Result<()> {
    if beta.norm() <= 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("|beta| = {} must be <= 1", beta.norm())))
    }
}

fn require_k(k: f64) -> Result<()> {
    if k > 0.0 && k <= 1.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("K = {k} must lie in (0, 1]")))
    }
}

fn require_degree(p: &Polynomial) -> Result<usize> {
    if p.is_zero() || p.degree() == 0 {
        Err(Error::Precondition("degree must be at least 1".into()))
    } else {
        Ok(p.degree())
    }
}

fn require_shape(p: &Polynomial, mu: usize) -> Result<()> {
    let shape = LacunaryShape::new(p.degree(), mu)
        .map_err(|e| Error::Precondition(e.to_string()))?;
    if p.matches_lacunary(shape)? {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(format!("polynomial is not lacunary with mu = {mu}")))
    }
}

/// Certifies that `p` has no zeros in `|z| < k` (boundary zeros admitted).
pub fn certify_zero_free(p: &Polynomial, k: f64, residual: f64) -> Result<()> {
    if p.is_zero() {
        return Err(Error::HypothesisFailed("the zero polynomial vanishes everywhere".into()));
    }
    if p.degree() == 0 {
        return Ok(());
    }
    let m = p.roots_with_tol(residual)?.min_modulus();
    if m >= k - CERT_TOL {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(format!(
            "polynomial vanishes in |z| < {k} (min root modulus {m})"
        )))
    }
}

/// Certifies that every zero of `p` lies in `|z| <= k`.
pub fn certify_zeros_inside(p: &Polynomial, k: f64, residual: f64) -> Result<()> {
    if p.is_zero() {
        return Err(Error::HypothesisFailed("the zero polynomial has no root set".into()));
    }
    if p.degree() == 0 {
        return Ok(());
    }
    let m = p.roots_with_tol(residual)?.max_modulus();
    if m <= k + CERT_TOL {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(format!(
            "polynomial has a zero outside |z| <= {k} (max root modulus {m})"
        )))
    }
}

/// Re-runs `certificate` at the strict residual when `report` is a violation.
fn confirm<F>(report: InequalityReport, certificate: F) -> Result<InequalityReport>
where
    F: Fn(f64) -> Result<()>,
{
    if !report.satisfied {
        certificate(ROOT_RESIDUAL_TOL_STRICT)?;
    }
    Ok(report)
}

/// Whether zero-location hypotheses are certified. `Relaxed` is used inside
/// the sharpness search, where feasibility is handled by a penalty and the
/// final point is re-checked in `Certified` mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Certified,
    Relaxed,
}

impl Mode {
    fn precheck<F: Fn(f64) -> Result<()>>(self, certificate: &F) -> Result<()> {
        match self {
            Mode::Certified => certificate(ROOT_RESIDUAL_TOL),
            Mode::Relaxed => Ok(()),
        }
    }

    fn confirm<F: Fn(f64) -> Result<()>>(self, report: InequalityReport, certificate: F) -> Result<InequalityReport> {
        match self {
            Mode::Certified => confirm(report, certificate),
            Mode::Relaxed => Ok(report),
        }
    }
}

/// `(|α| - K^μ) / (K^μ + 1)`; `kpow` is `K^μ`.
pub fn restricted_zero_factor(alpha_abs: f64, kpow: f64) -> f64 {
    (alpha_abs - kpow) / (kpow + 1.0)
}

/// The main-theorem factor `(|α| - K^μ)/(K^μ + 1)` as a function of `μ`.
pub fn main_theorem_factor(alpha_abs: f64, k: f64, mu: usize) -> f64 {
    restricted_zero_factor(alpha_abs, k.powi(mu as i32))
}

fn cp(p: PExponent) -> Result<f64> {
    cp_constant_with(p, &QuadratureSpec::default()).map(|(v, _)| v)
}

/// `max|P'| <= n max|P|` on the unit circle.
pub fn check_bernstein(p: &Polynomial, quad: &QuadratureSpec) -> Result<InequalityReport> {
    let n = require_degree(p)?;
    let lhs = sup_norm(&p.derivative(), quad)?;
    let rhs = n as f64 * sup_norm(p, quad)?;
    Ok(InequalityReport::new(
        CheckName::Bernstein,
        lhs,
        rhs,
        InequalityParams::default(),
        p,
        Convention::Sup,
    ))
}

/// `{(1/2π)∫|P'|^p}^{1/p} <= n {(1/2π)∫|P|^p}^{1/p}`.
pub fn check_zygmund(p: &Polynomial, exp: PExponent, quad: &QuadratureSpec) -> Result<InequalityReport> {
    exp.require_at_least_one()?;
    let n = p.degree() as f64;
    let lhs = lp_norm(&p.derivative(), exp, NormConvention::Mean, quad)?;
    let rhs = lp_norm(p, exp, NormConvention::Mean, quad)?;
    let params = InequalityParams { p: p_of(exp), ..Default::default() };
    Ok(
        InequalityReport::new(CheckName::Zygmund, lhs.value, n * rhs.value, params, p, Convention::Mean)
            .with_quadrature(Some(lhs), Some(rhs)),
    )
}

/// `max|D_α P| <= n|α| max|P|` for `|α| > 1`.
pub fn check_aziz_shah(p: &Polynomial, alpha: Complex64, quad: &QuadratureSpec) -> Result<InequalityReport> {
    require_alpha_at_least(alpha, 1.0, true)?;
    let n = p.degree() as f64;
    let lhs = sup_norm(&p.polar_derivative(alpha), quad)?;
    let rhs = n * alpha.norm() * sup_norm(p, quad)?;
    let params = InequalityParams { alpha: Some(alpha), ..Default::default() };
    Ok(InequalityReport::new(CheckName::AzizShah, lhs, rhs, params, p, Convention::Sup))
}

/// `‖D_α P‖_p <= n(|α|+1)‖P‖_p` for `|α| >= 1`.
pub fn check_theorem_a(
    p: &Polynomial,
    alpha: Complex64,
    exp: PExponent,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    require_alpha_at_least(alpha, 1.0, false)?;
    exp.require_at_least_one()?;
    let n = p.degree() as f64;
    let lhs = lp_norm(&p.polar_derivative(alpha), exp, NormConvention::Unnormalized, quad)?;
    let rhs = lp_norm(p, exp, NormConvention::Unnormalized, quad)?;
    let params = InequalityParams { alpha: Some(alpha), p: p_of(exp), ..Default::default() };
    Ok(InequalityReport::new(
        CheckName::TheoremA,
        lhs.value,
        n * (alpha.norm() + 1.0) * rhs.value,
        params,
        p,
        Convention::Unnormalized,
    )
    .with_quadrature(Some(lhs), Some(rhs)))
}

/// `‖P'‖_p <= n C_p ‖P‖_p` for `P` zero-free in `|z| < 1`.
pub fn check_debruijn(p: &Polynomial, exp: PExponent, quad: &QuadratureSpec) -> Result<InequalityReport> {
    exp.require_at_least_one()?;
    let certificate = |tol| certify_zero_free(p, 1.0, tol);
    certificate(ROOT_RESIDUAL_TOL)?;
    let n = p.degree() as f64;
    let lhs = lp_norm(&p.derivative(), exp, NormConvention::Unnormalized, quad)?;
    let rhs = lp_norm(p, exp, NormConvention::Unnormalized, quad)?;
    let params = InequalityParams { p: p_of(exp), k: Some(1.0), ..Default::default() };
    let report = InequalityReport::new(
        CheckName::Debruijn,
        lhs.value,
        n * cp(exp)? * rhs.value,
        params,
        p,
        Convention::Unnormalized,
    )
    .with_quadrature(Some(lhs), Some(rhs));
    confirm(report, certificate)
}

/// `‖D_α P‖_p <= n(|α|+1) C_p ‖P‖_p` for `P` zero-free in `|z| < 1`, `|α| >= 1`.
pub fn check_theorem_b(
    p: &Polynomial,
    alpha: Complex64,
    exp: PExponent,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    theorem_b(p, alpha, exp, quad, false)
}

/// Variant `‖D_α P‖_p <= n(|α|+1) C_p ‖D_α P‖_p`, which reduces to
/// `1 <= n(|α|+1) C_p` whenever `D_α P ≠ 0`.
pub fn check_theorem_b_printed(
    p: &Polynomial,
    alpha: Complex64,
    exp: PExponent,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    theorem_b(p, alpha, exp, quad, true)
}

fn theorem_b(
    p: &Polynomial,
    alpha: Complex64,
    exp: PExponent,
    quad: &QuadratureSpec,
    printed: bool,
) -> Result<InequalityReport> {
    require_alpha_at_least(alpha, 1.0, false)?;
    exp.require_at_least_one()?;
    let certificate = |tol| certify_zero_free(p, 1.0, tol);
    certificate(ROOT_RESIDUAL_TOL)?;
    let n = p.degree() as f64;
    let dp = p.polar_derivative(alpha);
    let lhs = lp_norm(&dp, exp, NormConvention::Unnormalized, quad)?;
    let rhs = if printed {
        lhs
    } else {
        lp_norm(p, exp, NormConvention::Unnormalized, quad)?
    };
    let name = if printed { CheckName::TheoremBPrinted } else { CheckName::TheoremB };
    let params = InequalityParams { alpha: Some(alpha), p: p_of(exp), k: Some(1.0), ..Default::default() };
    let bound = n * (1.0 + alpha.norm()) * cp(exp)?;
    let report = InequalityReport::new(name, lhs.value, bound * rhs.value, params, p, Convention::Unnormalized)
        .with_quadrature(Some(lhs), Some(rhs));
    confirm(report, certificate)
}

/// Restricted-zero bound with `K`: `‖e^{iθ}D_αP + n c β P‖_p <= n(1+|α|+2c|β|) C_p ‖P‖_p`,
/// `c = (|α|-K)/(K+1)`.
pub fn check_theorem_c(
    p: &Polynomial,
    alpha: Complex64,
    beta: Complex64,
    exp: PExponent,
    k: f64,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    polar_combination(CheckName::TheoremC, p, alpha, beta, exp, k, 1, quad, Mode::Certified)
}

/// Lacunary generalisation: as [`check_theorem_c`] with `K^μ` in place of `K`,
/// for `P = a_n z^n + Σ_{j>=μ} a_{n-j} z^{n-j}`.
pub fn check_main_theorem(
    p: &Polynomial,
    alpha: Complex64,
    beta: Complex64,
    exp: PExponent,
    k: f64,
    mu: usize,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    require_shape(p, mu)?;
    polar_combination(CheckName::Main, p, alpha, beta, exp, k, mu, quad, Mode::Certified)
}

#[allow(clippy::too_many_arguments)]
fn polar_combination(
    name: CheckName,
    p: &Polynomial,
    alpha: Complex64,
    beta: Complex64,
    exp: PExponent,
    k: f64,
    mu: usize,
    quad: &QuadratureSpec,
    mode: Mode,
) -> Result<InequalityReport> {
    require_k(k)?;
    require_alpha_at_least(alpha, k, false)?;
    require_beta(beta)?;
    exp.require_at_least_one()?;
    let certificate = |tol| certify_zero_free(p, k, tol);
    mode.precheck(&certificate)?;

    let n = p.degree() as f64;
    let factor = restricted_zero_factor(alpha.norm(), k.powi(mu as i32));
    let weight = beta * (n * factor);
    let dp = p.polar_derivative(alpha);
    // e^{iθ} is a unimodular weight on the samples, not a polynomial factor.
    let lhs = lp_norm_fn(
        |t| {
            let z = Complex64::from_polar(1.0, t);
            z * dp.evaluate(z) + weight * p.evaluate(z)
        },
        exp,
        NormConvention::Unnormalized,
        quad,
    )?;
    let rhs = lp_norm(p, exp, NormConvention::Unnormalized, quad)?;
    let bound = n * (1.0 + alpha.norm() + 2.0 * factor * beta.norm()) * cp(exp)?;
    let params = InequalityParams {
        alpha: Some(alpha),
        beta: Some(beta),
        p: p_of(exp),
        k: Some(k),
        mu: Some(mu),
    };
    let report = InequalityReport::new(name, lhs.value, bound * rhs.value, params, p, Convention::Unnormalized)
        .with_quadrature(Some(lhs), Some(rhs));
    mode.confirm(report, certificate)
}

/// Which denominator the pointwise lower bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma1Variant {
    /// `(|α| - K^μ) / K^μ`
    Printed,
    /// `(|α| - K^μ) / (K^μ + 1)`
    Proof,
}

/// Samples `bound(θ) <= value(θ)` at `nodes` points and returns the two sides
/// at the node with the largest `bound / value`, plus its angle. Values below
/// `ABS_SLACK` times the largest value are floored so that common zeros of
/// both sides do not dominate; the choice is invariant under scaling.
fn pointwise<L, R>(nodes: usize, bound: L, value: R) -> (f64, f64, f64)
where
    L: Fn(Complex64) -> f64,
    R: Fn(Complex64) -> f64,
{
    let samples: Vec<(f64, f64, f64)> = (0..nodes)
        .map(|j| {
            let theta = TAU * j as f64 / nodes as f64;
            let z = Complex64::from_polar(1.0, theta);
            (bound(z), value(z), theta)
        })
        .collect();
    let floor = ABS_SLACK * samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let key = |s: &(f64, f64, f64)| s.0 / s.1.max(floor).max(f64::MIN_POSITIVE);
    let worst = samples
        .iter()
        .copied()
        .max_by(|a, b| key(a).total_cmp(&key(b)))
        .unwrap_or((0.0, 0.0, 0.0));
    worst
}

/// `|D_α P(z)| >= n B |P(z)|` on `|z| = 1` for `P` with all zeros in `|z| <= K`,
/// evaluated at `quad.max_nodes` points. The report's `lhs` is the bound side
/// and `rhs` is `|D_α P|` at the worst node.
pub fn check_lemma1(
    p: &Polynomial,
    alpha: Complex64,
    k: f64,
    mu: usize,
    variant: Lemma1Variant,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    lemma1(p, alpha, k, mu, variant, quad, Mode::Certified)
}

fn lemma1(
    p: &Polynomial,
    alpha: Complex64,
    k: f64,
    mu: usize,
    variant: Lemma1Variant,
    quad: &QuadratureSpec,
    mode: Mode,
) -> Result<InequalityReport> {
    require_k(k)?;
    require_alpha_at_least(alpha, k, false)?;
    let n = require_degree(p)?;
    require_shape(p, mu)?;
    let certificate = |tol| certify_zeros_inside(p, k, tol);
    mode.precheck(&certificate)?;

    let kpow = k.powi(mu as i32);
    let factor = match variant {
        Lemma1Variant::Printed => (alpha.norm() - kpow) / kpow,
        Lemma1Variant::Proof => restricted_zero_factor(alpha.norm(), kpow),
    };
    let dp = p.polar_derivative(alpha);
    let (lhs, rhs, theta) = pointwise(
        quad.max_nodes,
        |z| n as f64 * factor * p.evaluate(z).norm(),
        |z| dp.evaluate(z).norm(),
    );
    let name = match variant {
        Lemma1Variant::Printed => CheckName::Lemma1Printed,
        Lemma1Variant::Proof => CheckName::Lemma1Proof,
    };
    let params = InequalityParams { alpha: Some(alpha), k: Some(k), mu: Some(mu), ..Default::default() };
    let mut report = InequalityReport::new(name, lhs, rhs, params, p, Convention::Pointwise);
    report.worst_theta = Some(theta);
    mode.confirm(report, certificate)
}

/// Default majorant for `lemma2`: `Q(z) = z^n conj(P(K²/conj z)) / K^n`, which
/// has all zeros in `|z| <= K` when `P` is zero-free in `|z| < K` and agrees
/// with `|P|` on `|z| = K`.
pub fn lemma2_default_majorant(p: &Polynomial, k: f64) -> Result<Polynomial> {
    require_k(k)?;
    certify_zero_free(p, k, ROOT_RESIDUAL_TOL)?;
    Ok(p.reflect_across(k))
}

/// `|z D_α P + n c β P| <= |z D_α Q + n c β Q|` on `|z| = 1`,
/// `c = (|α| - K^μ)/(K^μ + 1)`, where `Q` has degree `n`, all zeros in
/// `|z| <= K`, `deg P <= n` and `|P| <= |Q|` on `|z| = K`. Both polar
/// derivatives are taken with respect to `n`.
#[allow(clippy::too_many_arguments)]
pub fn check_lemma2(
    p: &Polynomial,
    q: &Polynomial,
    alpha: Complex64,
    beta: Complex64,
    k: f64,
    mu: usize,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    lemma2(p, q, alpha, beta, k, mu, quad, Mode::Certified)
}

#[allow(clippy::too_many_arguments)]
fn lemma2(
    p: &Polynomial,
    q: &Polynomial,
    alpha: Complex64,
    beta: Complex64,
    k: f64,
    mu: usize,
    quad: &QuadratureSpec,
    mode: Mode,
) -> Result<InequalityReport> {
    require_k(k)?;
    require_alpha_at_least(alpha, k, false)?;
    require_beta(beta)?;
    let n = require_degree(q)?;
    if mu == 0 || mu > n {
        return Err(Error::Precondition(format!("mu = {mu} must satisfy 1 <= mu <= {n}")));
    }
    if !p.is_zero() && p.degree() > n {
        return Err(Error::HypothesisFailed(format!(
            "deg P = {} exceeds deg Q = {n}",
            p.degree()
        )));
    }
    let certificate = |tol| {
        certify_zeros_inside(q, k, tol)?;
        majorant_on_circle(p, q, k)
    };
    mode.precheck(&certificate)?;

    let weight = beta * (n as f64 * restricted_zero_factor(alpha.norm(), k.powi(mu as i32)));
    let dp = p.polar_derivative_with_degree(alpha, n);
    let dq = q.polar_derivative_with_degree(alpha, n);
    let (lhs, rhs, theta) = pointwise(
        quad.max_nodes,
        |z| (z * dp.evaluate(z) + weight * p.evaluate(z)).norm(),
        |z| (z * dq.evaluate(z) + weight * q.evaluate(z)).norm(),
    );
    let params = InequalityParams {
        alpha: Some(alpha),
        beta: Some(beta),
        k: Some(k),
        mu: Some(mu),
        ..Default::default()
    };
    let mut report = InequalityReport::new(CheckName::Lemma2, lhs, rhs, params, p, Convention::Pointwise);
    report.majorant = Some(q.clone());
    report.worst_theta = Some(theta);
    mode.confirm(report, certificate)
}

fn majorant_on_circle(p: &Polynomial, q: &Polynomial, k: f64) -> Result<()> {
    let scale = q.max_coeff_modulus().max(p.max_coeff_modulus());
    for j in 0..MAJORANT_NODES {
        let z = Complex64::from_polar(k, TAU * j as f64 / MAJORANT_NODES as f64);
        let (a, b) = (p.evaluate(z).norm(), q.evaluate(z).norm());
        if a > b * (1.0 + SLACK) + ABS_SLACK * scale {
            return Err(Error::HypothesisFailed(format!(
                "|P| = {a} exceeds |Q| = {b} on |z| = {k}"
            )));
        }
    }
    Ok(())
}

/// `∫∫|Q'(e^{iθ}) + e^{iφ}P'(e^{iθ})|^p dθ dφ <= 2π n^p ∫|P(e^{iθ})|^p dθ` with
/// `Q` the conjugate reciprocal of `P`, for `P(0) ≠ 0` and `p >= 0`.
/// `with_two_pi = false` drops the `2π` factor.
pub fn check_lemma3(
    p: &Polynomial,
    exp: PExponent,
    with_two_pi: bool,
    single: &QuadratureSpec,
    double: &QuadratureSpec,
) -> Result<InequalityReport> {
    if p.coeffs().first().is_none_or(|a| a.norm() == 0.0) {
        return Err(Error::Precondition("P(0) must be nonzero".into()));
    }
    let pe = match exp {
        PExponent::Finite(x) if x >= 0.0 => x,
        other => return Err(Error::Precondition(format!("p = {other} must be finite and >= 0"))),
    };
    let n = p.degree();
    let q = p.conjugate_reciprocal();
    let (dp, dq) = (p.derivative(), q.derivative());
    let lhs = double_circle_integral(
        |theta, phi| {
            let z = Complex64::from_polar(1.0, theta);
            (dq.evaluate(z) + Complex64::from_polar(1.0, phi) * dp.evaluate(z))
                .norm()
                .powf(pe)
        },
        double,
    )?;
    let rhs = circle_integral(|t| p.on_circle(t).norm().powf(pe), single)?;
    let scale = if with_two_pi { TAU } else { 1.0 } * (n as f64).powf(pe);
    let name = if with_two_pi { CheckName::Lemma3 } else { CheckName::Lemma3Printed };
    let params = InequalityParams { p: p_of(exp), ..Default::default() };
    Ok(
        InequalityReport::new(name, lhs.value, scale * rhs.value, params, p, Convention::DoubleIntegral)
            .with_quadrature(Some(lhs), Some(rhs)),
    )
}

/// Largest normalised discrepancy in `nP - zP' = z^{n-1} conj(Q')` and its
/// mirror over `nodes` points of the unit circle.
pub fn reciprocal_identity_discrepancy(p: &Polynomial, nodes: usize) -> f64 {
    let n = p.degree() as i64;
    let q = p.conjugate_reciprocal();
    let (dp, dq) = (p.derivative(), q.derivative());
    let mut worst: f64 = 0.0;
    let mut max_dp: f64 = 0.0;
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let z = Complex64::from_polar(1.0, theta);
        let twist = Complex64::from_polar(1.0, (n - 1) as f64 * theta);
        let (pz, dpz) = (p.evaluate(z), dp.evaluate(z));
        let (qz, dqz) = (q.evaluate(z), dq.evaluate(z));
        let forward = pz * n as f64 - z * dpz - twist * dqz.conj();
        let mirror = qz * n as f64 - z * dqz - twist * dpz.conj();
        worst = worst.max(forward.norm()).max(mirror.norm());
        max_dp = max_dp.max(dpz.norm());
    }
    worst / (1.0 + max_dp)
}

pub fn check_reciprocal_identity(p: &Polynomial) -> Result<InequalityReport> {
    let d = reciprocal_identity_discrepancy(p, IDENTITY_NODES);
    Ok(InequalityReport::new(
        CheckName::ReciprocalIdentity,
        d,
        IDENTITY_TOL,
        InequalityParams::default(),
        p,
        Convention::Identity,
    ))
}

/// Relative discrepancy in `|Q(e^{iθ})| = |P(e^{iθ})|`.
pub fn conjugate_modulus_discrepancy(p: &Polynomial, nodes: usize) -> f64 {
    let q = p.conjugate_reciprocal();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let (a, b) = (p.on_circle(theta).norm(), q.on_circle(theta).norm());
        worst = worst.max((a - b).abs());
        scale = scale.max(a);
    }
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

pub fn check_conjugate_modulus(p: &Polynomial) -> Result<InequalityReport> {
    let d = conjugate_modulus_discrepancy(p, IDENTITY_NODES);
    Ok(InequalityReport::new(
        CheckName::ConjugateModulus,
        d,
        MODULUS_IDENTITY_TOL,
        InequalityParams::default(),
        p,
        Convention::Identity,
    ))
}

/// Quadrature settings shared by every check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub single: QuadratureSpec,
    pub double: QuadratureSpec,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            single: QuadratureSpec::default(),
            double: QuadratureSpec::double_default(),
        }
    }
}

/// Inputs to [`run_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct CheckInput {
    pub poly: Polynomial,
    /// The majorant `Q` for `lemma2`; defaults to [`lemma2_default_majorant`].
    pub majorant: Option<Polynomial>,
    pub params: InequalityParams,
}

fn need<T>(value: Option<T>, what: &str, check: CheckName) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("check `{check}` needs parameter {what}")))
}

/// Dispatches a check by name.
pub fn run_check(name: CheckName, input: &CheckInput, quad: &QuadConfig) -> Result<InequalityReport> {
    let p = &input.poly;
    let params = &input.params;
    let single = &quad.single;
    let alpha = || need(params.alpha, "alpha", name);
    let beta = || Ok::<_, Error>(params.beta.unwrap_or_default());
    let exp = || need(params.p, "p", name);
    let k = || need(params.k, "K", name);
    let mu = || Ok::<_, Error>(params.mu.unwrap_or(1));
    match name {
        CheckName::Bernstein => check_bernstein(p, single),
        CheckName::Zygmund => check_zygmund(p, exp()?, single),
        CheckName::AzizShah => check_aziz_shah(p, alpha()?, single),
        CheckName::TheoremA => check_theorem_a(p, alpha()?, exp()?, single),
        CheckName::Debruijn => check_debruijn(p, exp()?, single),
        CheckName::TheoremB => check_theorem_b(p, alpha()?, exp()?, single),
        CheckName::TheoremBPrinted => check_theorem_b_printed(p, alpha()?, exp()?, single),
        CheckName::TheoremC => check_theorem_c(p, alpha()?, beta()?, exp()?, k()?, single),
        CheckName::Main => check_main_theorem(p, alpha()?, beta()?, exp()?, k()?, mu()?, single),
        CheckName::Lemma1Printed => check_lemma1(p, alpha()?, k()?, mu()?, Lemma1Variant::Printed, single),
        CheckName::Lemma1Proof => check_lemma1(p, alpha()?, k()?, mu()?, Lemma1Variant::Proof, single),
        CheckName::Lemma2 => {
            let k = k()?;
            let q = match &input.majorant {
                Some(q) => q.clone(),
                None => lemma2_default_majorant(p, k)?,
            };
            check_lemma2(p, &q, alpha()?, beta()?, k, mu()?, single)
        }
        CheckName::Lemma3 => check_lemma3(p, exp()?, true, single, &quad.double),
        CheckName::Lemma3Printed => check_lemma3(p, exp()?, false, single, &quad.double),
        CheckName::ReciprocalIdentity => check_reciprocal_identity(p),
        CheckName::ConjugateModulus => check_conjugate_modulus(p),
    }
}

/// Evaluates a check without certifying zero locations. Only the checks
/// whose hypotheses are zero-location constraints on a lacunary polynomial
/// (`main`, both `lemma1` variants, `lemma2`) are relaxed; every other check
/// runs as in [`run_check`]. Reports from this function are search
/// objectives, not verdicts.
pub fn run_check_relaxed(name: CheckName, input: &CheckInput, quad: &QuadConfig) -> Result<InequalityReport> {
    let p = &input.poly;
    let params = &input.params;
    let single = &quad.single;
    let alpha = || need(params.alpha, "alpha", name);
    let beta = params.beta.unwrap_or_default();
    let k = || need(params.k, "K", name);
    let mu = params.mu.unwrap_or(1);
    match name {
        CheckName::Main => {
            require_shape(p, mu)?;
            let exp = need(params.p, "p", name)?;
            polar_combination(name, p, alpha()?, beta, exp, k()?, mu, single, Mode::Relaxed)
        }
        CheckName::Lemma1Printed => lemma1(p, alpha()?, k()?, mu, Lemma1Variant::Printed, single, Mode::Relaxed),
        CheckName::Lemma1Proof => lemma1(p, alpha()?, k()?, mu, Lemma1Variant::Proof, single, Mode::Relaxed),
        CheckName::Lemma2 => {
            let k = k()?;
            let q = input.majorant.clone().unwrap_or_else(|| p.reflect_across(k));
            lemma2(p, &q, alpha()?, beta, k, mu, single, Mode::Relaxed)
        }
        _ => run_check(name, input, quad),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ci(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn binomial_power(k: f64, n: usize) -> Polynomial {
        Polynomial::from_roots(&vec![ci(-k, 0.0); n], ci(1.0, 0.0))
    }

    #[test]
    fn names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.as_str()));
        }
        assert_eq!("main_theorem".parse::<CheckName>().unwrap(), CheckName::Main);
        assert!("nope".parse::<CheckName>().is_err());
    }

    #[test]
    fn bernstein_examples() {
        let r = check_bernstein(&Polynomial::monomial(4, ci(0.3, 1.0)), &q()).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
        let r = check_bernstein(&Polynomial::from_real(&[1.0, 1.0]), &q()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14 && (r.rhs - 2.0).abs() < 1e-14);
        assert!((r.ratio - 0.5).abs() < 1e-14);
        assert!(check_bernstein(&Polynomial::from_real(&[2.0]), &q()).is_err());
    }

    #[test]
    fn zygmund_examples() {
        for p in [1.0, 2.0, 4.0] {
            let r = check_zygmund(&Polynomial::monomial(3, ci(-2.0, 0.5)), PExponent::Finite(p), &q()).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-12);
            assert_eq!(r.convention, Convention::Mean);
        }
        let r = check_zygmund(&Polynomial::from_real(&[1.0, 1.0]), PExponent::Finite(2.0), &q()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-13);
        assert!((r.rhs - 2.0f64.sqrt()).abs() < 1e-13);
        assert!((r.ratio - 1.0 / 2.0f64.sqrt()).abs() < 1e-13);
        assert!(check_zygmund(&Polynomial::from_real(&[1.0, 1.0]), PExponent::Finite(0.5), &q()).is_err());
    }

    #[test]
    fn aziz_shah_examples() {
        let r = check_aziz_shah(&Polynomial::monomial(3, ci(1.0, 0.0)), ci(2.0, 0.0), &q()).unwrap();
        assert!((r.lhs - 6.0).abs() < 1e-12 && (r.rhs - 6.0).abs() < 1e-12);
        let r = check_aziz_shah(&Polynomial::from_real(&[1.0, 1.0]), ci(3.0, 0.0), &q()).unwrap();
        // D_3 (1+z) = (1+z) + (3 - z) = 4, constant
        assert!((r.lhs - 4.0).abs() < 1e-12 && (r.rhs - 6.0).abs() < 1e-12 && r.satisfied);
        assert!(matches!(
            check_aziz_shah(&Polynomial::from_real(&[1.0, 1.0]), ci(1.0, 0.0), &q()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn theorem_a_examples() {
        let alpha = 2.5;
        for p in [1.0, 2.0, 3.0] {
            let r = check_theorem_a(&Polynomial::monomial(4, ci(1.0, 0.0)), ci(alpha, 0.0), PExponent::Finite(p), &q())
                .unwrap();
            let norm = TAU.powf(1.0 / p);
            assert!((r.lhs - 4.0 * alpha * norm).abs() < 1e-11);
            assert!((r.rhs - 4.0 * (alpha + 1.0) * norm).abs() < 1e-11);
            assert!((r.ratio - alpha / (alpha + 1.0)).abs() < 1e-12);
        }
        let r = check_theorem_a(&Polynomial::from_real(&[1.0, 1.0]), ci(1.0, 0.0), PExponent::Finite(2.0), &q()).unwrap();
        assert!(r.satisfied);
    }

    #[test]
    fn debruijn_examples() {
        // (1+z)^n at p = 2: ratio sqrt(n / (2n - 1)) from the central binomial norms
        for n in [2, 3, 5] {
            let r = check_debruijn(&binomial_power(1.0, n), PExponent::Finite(2.0), &q()).unwrap();
            let expect = (n as f64 / (2 * n - 1) as f64).sqrt();
            assert!((r.ratio - expect).abs() < 1e-10, "n={n}: {}", r.ratio);
        }
        // 1 + z^n attains the bound for every p
        for p in [1.0, 2.0, 4.0] {
            let r = check_debruijn(&Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]), PExponent::Finite(p), &q()).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-9, "p={p}: {}", r.ratio);
        }
        // 1+z, p=1: ∫|P'| = 2π, ∫|1+e^{iθ}| = 8, C_1 = π/4
        let r = check_debruijn(&Polynomial::from_real(&[1.0, 1.0]), PExponent::Finite(1.0), &q()).unwrap();
        assert!((r.lhs - TAU).abs() < 1e-12);
        assert!((r.rhs - PI / 4.0 * 8.0).abs() < 1e-6);
        assert!(r.satisfied);
        assert!(matches!(
            check_debruijn(&Polynomial::from_real(&[0.0, 1.0]), PExponent::Finite(2.0), &q()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn theorem_b_printed_is_vacuous() {
        let p = binomial_power(1.0, 3);
        let r = check_theorem_b_printed(&p, ci(1.5, 0.0), PExponent::Finite(2.0), &q()).unwrap();
        let cp2 = 0.5f64.sqrt();
        assert!((r.ratio - 1.0 / (3.0 * 2.5 * cp2)).abs() < 1e-12);
    }

    #[test]
    fn theorem_b_closed_forms() {
        // D_1 (1+z)^n = 2n (1+z)^{n-1}, so at p = 2 the ratio is sqrt(n / (2n - 1))
        let r = check_theorem_b(&binomial_power(1.0, 3), ci(1.0, 0.0), PExponent::Finite(2.0), &q()).unwrap();
        assert!((r.ratio - 0.6f64.sqrt()).abs() < 1e-10, "{}", r.ratio);
        // D_1 (1 + z^2) = 2(1 + z), ratio 1/(2 C_2)
        let r = check_theorem_b(&Polynomial::from_real(&[1.0, 0.0, 1.0]), ci(1.0, 0.0), PExponent::Finite(2.0), &q())
            .unwrap();
        assert!((r.ratio - 0.5f64.sqrt()).abs() < 1e-10, "{}", r.ratio);
    }

    #[test]
    fn theorem_c_reduces_to_theorem_b() {
        let p = Polynomial::from_roots(&[ci(1.2, 0.3), ci(-1.0, 0.0), ci(0.1, 2.0)], ci(0.7, -0.4));
        let alpha = ci(0.8, 1.9);
        let e = PExponent::Finite(3.0);
        let b = check_theorem_b(&p, alpha, e, &q()).unwrap();
        let c = check_theorem_c(&p, alpha, ci(0.0, 0.0), e, 1.0, &q()).unwrap();
        assert!((b.lhs - c.lhs).abs() <= 1e-14 * b.lhs);
        assert!((b.rhs - c.rhs).abs() <= 1e-14 * b.rhs);
    }

    #[test]
    fn main_with_mu_one_is_theorem_c() {
        let p = binomial_power(0.5, 4);
        let (alpha, beta) = (ci(1.0, 0.0), ci(1.0, 0.0));
        let c = check_theorem_c(&p, alpha, beta, PExponent::Finite(2.0), 0.5, &q()).unwrap();
        let m = check_main_theorem(&p, alpha, beta, PExponent::Finite(2.0), 0.5, 1, &q()).unwrap();
        assert!(c.satisfied);
        assert_eq!(c.lhs, m.lhs);
        assert_eq!(c.rhs, m.rhs);
    }

    #[test]
    fn main_binomial_edge() {
        // z^n + K^n: mu = n, zeros on |z| = K
        let p = Polynomial::from_real(&[0.0625, 0.0, 0.0, 0.0, 1.0]);
        let r = check_main_theorem(&p, ci(1.0, 0.0), ci(1.0, 0.0), PExponent::Finite(2.0), 0.5, 4, &q()).unwrap();
        assert!(r.satisfied, "ratio {}", r.ratio);
        let err = check_main_theorem(&binomial_power(0.5, 4), ci(1.0, 0.0), ci(1.0, 0.0), PExponent::Finite(2.0), 0.5, 2, &q());
        assert!(matches!(err, Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn main_preconditions() {
        let p = binomial_power(0.5, 3);
        let e = PExponent::Finite(2.0);
        assert!(matches!(check_main_theorem(&p, ci(0.4, 0.0), ci(0.0, 0.0), e, 0.5, 1, &q()), Err(Error::Precondition(_))));
        assert!(matches!(check_main_theorem(&p, ci(1.0, 0.0), ci(1.1, 0.0), e, 0.5, 1, &q()), Err(Error::Precondition(_))));
        assert!(matches!(check_main_theorem(&p, ci(1.0, 0.0), ci(0.0, 0.0), e, 1.5, 1, &q()), Err(Error::Precondition(_))));
        assert!(matches!(check_main_theorem(&p, ci(1.0, 0.0), ci(0.0, 0.0), e, 0.9, 1, &q()), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn lemma1_closed_forms() {
        let p = Polynomial::monomial(3, ci(1.0, 0.0));
        let printed = check_lemma1(&p, ci(2.0, 0.0), 1.0, 1, Lemma1Variant::Printed, &q()).unwrap();
        let proof = check_lemma1(&p, ci(2.0, 0.0), 1.0, 1, Lemma1Variant::Proof, &q()).unwrap();
        assert!((printed.rhs - 6.0).abs() < 1e-12 && (printed.lhs - 3.0).abs() < 1e-12);
        assert!((proof.lhs - 1.5).abs() < 1e-12);
        assert!(printed.satisfied && proof.satisfied);
        // |alpha| = K makes the bound vanish
        let r = check_lemma1(&p, ci(0.0, 1.0), 1.0, 1, Lemma1Variant::Printed, &q()).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.satisfied);
    }

    #[test]
    fn lemma1_printed_denominator_fails_on_a_simple_case() {
        // P = z - K, alpha = 1, K = 1/2: D_alpha P = 1/2, |P(-1)| = 3/2
        let p = Polynomial::from_real(&[-0.5, 1.0]);
        let printed = check_lemma1(&p, ci(1.0, 0.0), 0.5, 1, Lemma1Variant::Printed, &q()).unwrap();
        assert!(!printed.satisfied);
        assert!((printed.lhs - 1.5).abs() < 1e-12 && (printed.rhs - 0.5).abs() < 1e-12);
        let proof = check_lemma1(&p, ci(1.0, 0.0), 0.5, 1, Lemma1Variant::Proof, &q()).unwrap();
        assert!(proof.satisfied);
    }

    #[test]
    fn lemma2_examples() {
        let qp = Polynomial::from_roots(&[ci(0.2, 0.1), ci(-0.3, 0.0), ci(0.0, -0.4)], ci(1.0, 0.5));
        let same = check_lemma2(&qp, &qp, ci(1.0, 1.0), ci(0.5, 0.0), 0.5, 1, &q()).unwrap();
        assert!(same.margin.abs() < 1e-12 && same.satisfied);
        let scaled = qp.scale(ci(0.4, 0.0));
        let r = check_lemma2(&scaled, &qp, ci(1.0, 1.0), ci(0.5, 0.0), 0.5, 1, &q()).unwrap();
        assert!(r.satisfied && r.ratio < 0.41);
        // constant P below min |Q| on |z| = K
        let qz = Polynomial::from_roots(&[ci(0.0, 0.0); 3], ci(1.0, 0.0));
        let c = Polynomial::constant(ci(0.1, 0.0));
        let r = check_lemma2(&c, &qz, ci(2.0, 0.0), ci(1.0, 0.0), 0.5, 1, &q()).unwrap();
        assert!(r.satisfied);
        // majorant hypothesis violated
        let big = qp.scale(ci(2.0, 0.0));
        assert!(matches!(
            check_lemma2(&big, &qp, ci(1.0, 0.0), ci(0.0, 0.0), 0.5, 1, &q()),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn lemma2_default_majorant_holds() {
        let p = Polynomial::from_roots(&[ci(0.9, 0.2), ci(-0.5, 0.0), ci(0.0, 1.4)], ci(0.6, 0.2));
        let major = lemma2_default_majorant(&p, 0.5).unwrap();
        let r = check_lemma2(&p, &major, ci(0.6, 0.3), ci(0.0, 0.9), 0.5, 1, &q()).unwrap();
        assert!(r.satisfied, "{}", r.ratio);
    }

    #[test]
    fn lemma3_examples() {
        let small = QuadratureSpec { start_nodes: 64, max_nodes: 512, rel_tol: 1e-10 };
        let p = Polynomial::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let r = check_lemma3(&p, PExponent::Finite(2.0), true, &q(), &small).unwrap();
        // Q = P, so both sides equal 2π · 9 · 4π
        assert!((r.lhs - r.rhs).abs() < 1e-10 * r.rhs, "{} {}", r.lhs, r.rhs);
        let printed = check_lemma3(&p, PExponent::Finite(2.0), false, &q(), &small).unwrap();
        assert!(!printed.satisfied);
        let c = check_lemma3(&Polynomial::constant(ci(2.0, 0.0)), PExponent::Finite(2.0), true, &q(), &small).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(c.satisfied);
        assert!(check_lemma3(&Polynomial::from_real(&[0.0, 1.0]), PExponent::Finite(2.0), true, &q(), &small).is_err());
    }

    #[test]
    fn reciprocal_identity_examples() {
        let r = check_reciprocal_identity(&Polynomial::monomial(5, ci(1.0, 0.0))).unwrap();
        assert!(r.lhs < 1e-14 && r.satisfied);
        // hand computation at θ = 0 for P = 1 + z: LHS = 2 - 1 = 1, RHS = conj(Q'(1)) = 1
        let p = Polynomial::from_real(&[1.0, 1.0]);
        let z = ci(1.0, 0.0);
        let lhs = p.evaluate(z) * 1.0 - z * p.derivative().evaluate(z);
        let rhs = p.conjugate_reciprocal().derivative().evaluate(z).conj();
        assert_eq!(lhs, ci(1.0, 0.0));
        assert_eq!(rhs, ci(1.0, 0.0));
        assert!(check_reciprocal_identity(&p).unwrap().satisfied);
        // P(0) = 0: Q drops degree but the identities still hold
        let p0 = Polynomial::new(vec![ci(0.0, 0.0), ci(1.0, 2.0), ci(-0.5, 0.3)]);
        assert!(check_reciprocal_identity(&p0).unwrap().satisfied);
        assert!(check_conjugate_modulus(&p0).unwrap().satisfied);
    }

    #[test]
    fn run_check_reports_missing_params() {
        let input = CheckInput {
            poly: Polynomial::from_real(&[1.0, 1.0]),
            majorant: None,
            params: InequalityParams::default(),
        };
        assert!(matches!(
            run_check(CheckName::Zygmund, &input, &QuadConfig::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(run_check(CheckName::Bernstein, &input, &QuadConfig::default()).is_ok());
    }

    #[test]
    fn report_serialises() {
        let r = check_zygmund(&Polynomial::from_real(&[1.0, 1.0]), PExponent::Finite(2.0), &q()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: InequalityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.contains("\"name\":\"zygmund\""));
    }
}
