//! Grid scans, randomized campaigns and a Nelder-Mead search for the
//! largest LHS/RHS ratio a check admits over a constrained family.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{extremal_candidates, member_rng, sample_member, FamilySpec, Side};
use crate::inequalities::{
    run_check, run_check_relaxed, CheckInput, CheckName, InequalityParams, InequalityReport,
    QuadConfig, SLACK,
};
use crate::poly::Polynomial;
use crate::quad::{PExponent, QuadratureSpec};

/// Which optional parameters a check reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamUse {
    pub alpha: bool,
    pub beta: bool,
    pub p: bool,
    pub k: bool,
    pub mu: bool,
}

pub fn param_use(check: CheckName) -> ParamUse {
    use CheckName::*;
    let none = ParamUse { alpha: false, beta: false, p: false, k: false, mu: false };
    match check {
        Bernstein | ReciprocalIdentity | ConjugateModulus => none,
        Zygmund | Debruijn | Lemma3 | Lemma3Printed => ParamUse { p: true, ..none },
        AzizShah => ParamUse { alpha: true, ..none },
        TheoremA | TheoremB | TheoremBPrinted => ParamUse { alpha: true, p: true, ..none },
        TheoremC => ParamUse { alpha: true, beta: true, p: true, k: true, mu: false },
        Main => ParamUse { alpha: true, beta: true, p: true, k: true, mu: true },
        Lemma1Printed | Lemma1Proof => ParamUse { alpha: true, k: true, mu: true, ..none },
        Lemma2 => ParamUse { alpha: true, beta: true, k: true, mu: true, ..none },
    }
}

/// The family a check draws its polynomials from.
pub fn target_family(check: CheckName, n: usize, k: f64, mu: usize) -> Result<FamilySpec> {
    use CheckName::*;
    let uses = param_use(check);
    let k = if uses.k { k } else { 1.0 };
    let mu = if uses.mu { mu } else { 1 };
    let side = match check {
        Debruijn | TheoremB | TheoremBPrinted | TheoremC | Main | Lemma2 => Side::ZerosOutsideOpenDisk,
        Lemma1Printed | Lemma1Proof => Side::ZerosInsideClosedDisk,
        _ => Side::Unrestricted,
    };
    FamilySpec::new(n, k, mu, side)
}

/// Smallest admissible `|α|` for the check, or `None` if it takes no `α`.
pub fn alpha_floor(check: CheckName, k: f64) -> Option<f64> {
    use CheckName::*;
    match check {
        AzizShah | TheoremA | TheoremB | TheoremBPrinted => Some(1.0),
        TheoremC | Main | Lemma1Printed | Lemma1Proof | Lemma2 => Some(k),
        _ => None,
    }
}

fn check_seed(seed: u64, check: CheckName) -> u64 {
    let ordinal = CheckName::ALL.iter().position(|c| *c == check).unwrap_or(0) as u64;
    seed.wrapping_add(ordinal.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    #[serde(default)]
    pub p_values: Vec<PExponent>,
    #[serde(default)]
    pub alpha_moduli: Vec<f64>,
    #[serde(default)]
    pub alpha_phases: Vec<f64>,
    #[serde(default)]
    pub beta_values: Vec<Complex64>,
    #[serde(rename = "K_values", default)]
    pub k_values: Vec<f64>,
    #[serde(default)]
    pub mu_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub samples_per_cell: usize,
    #[serde(default)]
    pub seed: u64,
}

/// One point of the grid; parameters the check ignores are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: f64,
    pub mu: usize,
    pub params: InequalityParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub cell: usize,
    pub sample: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub reports: Vec<InequalityReport>,
    pub skipped: Vec<SkipRecord>,
}

impl ScanOutcome {
    pub fn violations(&self) -> usize {
        self.reports.iter().filter(|r| !r.satisfied).count()
    }
}

fn axis<T: Copy>(used: bool, values: &[T], name: &str) -> Result<Vec<Option<T>>> {
    if !used {
        return Ok(vec![None]);
    }
    if values.is_empty() {
        return Err(Error::InvalidParameter(format!("grid axis {name} is empty")));
    }
    Ok(values.iter().copied().map(Some).collect())
}

impl ScanGrid {
    /// Cartesian product of the axes the check reads.
    pub fn cells(&self, check: CheckName) -> Result<Vec<ScanCell>> {
        if self.n_values.is_empty() || self.samples_per_cell == 0 {
            return Err(Error::InvalidParameter("grid is empty".into()));
        }
        let uses = param_use(check);
        let ps = axis(uses.p, &self.p_values, "p_values")?;
        let moduli = axis(uses.alpha, &self.alpha_moduli, "alpha_moduli")?;
        let phases = if uses.alpha && self.alpha_phases.is_empty() {
            vec![Some(0.0)]
        } else {
            axis(uses.alpha, &self.alpha_phases, "alpha_phases")?
        };
        let betas = if uses.beta && self.beta_values.is_empty() {
            vec![Some(Complex64::new(0.0, 0.0))]
        } else {
            axis(uses.beta, &self.beta_values, "beta_values")?
        };
        let ks = axis(uses.k, &self.k_values, "K_values")?;
        let mus = axis(uses.mu, &self.mu_values, "mu_values")?;

        let mut out = Vec::new();
        for &n in &self.n_values {
            for &k in &ks {
                for &mu in &mus {
                    for &p in &ps {
                        for &m in &moduli {
                            for &phase in &phases {
                                for &beta in &betas {
                                    let alpha = m.zip(phase).map(|(m, t)| Complex64::from_polar(m, t));
                                    out.push(ScanCell {
                                        n,
                                        k: k.unwrap_or(1.0),
                                        mu: mu.unwrap_or(1),
                                        params: InequalityParams { alpha, beta, p, k, mu },
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs `check` on `samples_per_cell` fresh family members for every grid
/// cell. Cells or samples whose parameters the check rejects are recorded in
/// `skipped`; reports come back ordered by (cell, sample).
pub fn scan(check: CheckName, grid: &ScanGrid, quad: &QuadConfig) -> Result<ScanOutcome> {
    let cells = grid.cells(check)?;
    let seed = check_seed(grid.seed, check);
    let per = grid.samples_per_cell;
    let results: Vec<(usize, usize, Result<InequalityReport>)> = (0..cells.len() * per)
        .into_par_iter()
        .map(|idx| {
            let (c, s) = (idx / per, idx % per);
            let cell = &cells[c];
            let run = target_family(check, cell.n, cell.k, cell.mu)
                .and_then(|spec| sample_member(&spec, seed, idx))
                .and_then(|poly| {
                    let input = CheckInput { poly, majorant: None, params: cell.params };
                    run_check(check, &input, quad)
                });
            (c, s, run)
        })
        .collect();

    let mut out = ScanOutcome::default();
    for (cell, sample, run) in results {
        match run {
            Ok(r) => out.reports.push(r),
            Err(e) if is_skippable(&e) => {
                log::debug!("{check}: skipped cell {cell} sample {sample}: {e}");
                out.skipped.push(SkipRecord { cell, sample: Some(sample), reason: e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn is_skippable(e: &Error) -> bool {
    e.is_hypothesis_failure()
        || matches!(e, Error::InvalidParameter(_) | Error::SamplerExhausted { .. })
}

/// Randomized soundness campaign: each case draws `n`, `K`, `μ`, `p`, `α`, `β`
/// and one certified family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub cases: usize,
    pub n_max: usize,
    #[serde(rename = "K_values")]
    pub k_values: Vec<f64>,
    pub mu_values: Vec<usize>,
    pub p_values: Vec<PExponent>,
    pub alpha_max: f64,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            cases: 1000,
            n_max: 8,
            k_values: vec![0.25, 0.5, 0.75, 1.0],
            mu_values: vec![1, 2, 3],
            p_values: [1.0, 2.0, 4.0].map(PExponent::Finite).to_vec(),
            alpha_max: 4.0,
            seed: 0,
        }
    }
}

impl CampaignConfig {
    fn validate(&self) -> Result<()> {
        if self.cases == 0 || self.n_max == 0 {
            return Err(Error::InvalidParameter("campaign needs cases >= 1 and n_max >= 1".into()));
        }
        if self.k_values.is_empty() || self.mu_values.is_empty() || self.p_values.is_empty() {
            return Err(Error::InvalidParameter("campaign value lists must be nonempty".into()));
        }
        Ok(())
    }
}

/// The inputs of case `index`; deterministic in `(check, config, index)`.
pub fn campaign_case(check: CheckName, config: &CampaignConfig, index: usize) -> Result<(FamilySpec, CheckInput)> {
    let seed = check_seed(config.seed, check);
    let mut rng = member_rng(seed ^ 0x5ca1_ab1e, index);
    let uses = param_use(check);
    let k = config.k_values[rng.random_range(0..config.k_values.len())];
    let mu = if uses.mu {
        config.mu_values[rng.random_range(0..config.mu_values.len())]
    } else {
        1
    };
    let n_min = mu.max(1);
    if n_min > config.n_max {
        return Err(Error::InvalidParameter(format!("mu = {mu} exceeds n_max = {}", config.n_max)));
    }
    let n = rng.random_range(n_min..=config.n_max);
    let p = config.p_values[rng.random_range(0..config.p_values.len())];
    let alpha = alpha_floor(check, k).map(|lo| {
        let hi = config.alpha_max.max(lo);
        let m = lo + (hi - lo) * rng.random::<f64>();
        Complex64::from_polar(m, TAU * rng.random::<f64>())
    });
    let beta = uses.beta.then(|| {
        Complex64::from_polar(rng.random::<f64>(), TAU * rng.random::<f64>())
    });
    let spec = target_family(check, n, k, mu)?;
    let poly = sample_member(&spec, seed, index)?;
    let params = InequalityParams {
        alpha,
        beta,
        p: uses.p.then_some(p),
        k: uses.k.then_some(spec.k),
        mu: uses.mu.then_some(mu),
    };
    Ok((spec, CheckInput { poly, majorant: None, params }))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignOutcome {
    pub check: Option<CheckName>,
    pub reports: Vec<InequalityReport>,
    pub skipped: Vec<SkipRecord>,
}

impl CampaignOutcome {
    pub fn violations(&self) -> usize {
        self.reports.iter().filter(|r| !r.satisfied).count()
    }

    pub fn worst_ratio(&self) -> f64 {
        self.reports.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn run_campaign(check: CheckName, config: &CampaignConfig, quad: &QuadConfig) -> Result<CampaignOutcome> {
    config.validate()?;
    let results: Vec<Result<InequalityReport>> = (0..config.cases)
        .into_par_iter()
        .map(|i| campaign_case(check, config, i).and_then(|(_, input)| run_check(check, &input, quad)))
        .collect();
    let mut out = CampaignOutcome { check: Some(check), ..Default::default() };
    for (i, run) in results.into_iter().enumerate() {
        match run {
            Ok(r) => out.reports.push(r),
            Err(e) if is_skippable(&e) => {
                log::debug!("{check}: skipped case {i}: {e}");
                out.skipped.push(SkipRecord { cell: i, sample: None, reason: e.to_string() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub multistarts: usize,
    pub max_iter: usize,
    pub init_scale: f64,
    /// Stop a start when the objective spread over the simplex drops below this.
    pub tol: f64,
    pub seed: u64,
    /// Quadrature used while searching; the final point is re-evaluated at
    /// twice the default node budget.
    pub search_rel_tol: f64,
    pub search_max_nodes: usize,
    /// Steepness `s` of the feasibility penalty `sigmoid(s (margin))`.
    pub penalty_sharpness: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            multistarts: 16,
            max_iter: 400,
            init_scale: 0.1,
            tol: 1e-10,
            seed: 0,
            search_rel_tol: 1e-7,
            search_max_nodes: 8192,
            penalty_sharpness: 1e4,
        }
    }
}

impl SearchConfig {
    fn search_quad(&self) -> QuadConfig {
        let single = QuadratureSpec {
            start_nodes: 256,
            max_nodes: self.search_max_nodes.max(256),
            rel_tol: self.search_rel_tol,
        };
        let double = QuadratureSpec { start_nodes: 64, max_nodes: 256, rel_tol: self.search_rel_tol };
        QuadConfig { single, double }
    }

    /// Quadrature for the final re-evaluation.
    pub fn final_quad() -> QuadConfig {
        QuadConfig {
            single: QuadratureSpec::default().doubled(),
            double: QuadratureSpec::double_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Argmax {
    pub polynomial: Polynomial,
    pub params: InequalityParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub check_name: CheckName,
    pub family: FamilySpec,
    pub best_ratio: f64,
    pub argmax: Argmax,
    pub iterations: usize,
    pub restarts: usize,
    /// `(iteration, best ratio so far)` for the winning start.
    pub trace_summary: Vec<(usize, f64)>,
    pub config: SearchConfig,
    pub quadrature: QuadConfig,
    pub report: InequalityReport,
}

impl ExtremalRecord {
    /// Whether the record exceeds the soundness bound `1 + SLACK`.
    pub fn exceeds_bound(&self) -> bool {
        self.best_ratio > 1.0 + SLACK
    }
}

/// Re-runs the check at the record's argmax with the record's quadrature.
pub fn replay(record: &ExtremalRecord) -> Result<InequalityReport> {
    let input = CheckInput {
        poly: record.argmax.polynomial.clone(),
        majorant: None,
        params: record.argmax.params,
    };
    run_check(record.check_name, &input, &record.quadrature)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum PolyCoords {
    /// `(t_j, ψ_j)` per root with a side-dependent modulus map, then the
    /// leading phase.
    Roots,
    /// Real and imaginary parts of `a_0 ..= a_{n-μ}`, then the leading phase.
    Coeffs,
}

/// Maps an unconstrained vector onto (polynomial, parameters).
#[derive(Clone, Debug)]
struct Encoding {
    check: CheckName,
    spec: FamilySpec,
    coords: PolyCoords,
    fixed: InequalityParams,
    alpha_floor: Option<f64>,
    free_alpha: bool,
    free_beta: bool,
}

impl Encoding {
    fn new(check: CheckName, spec: FamilySpec, fixed: InequalityParams) -> Result<Self> {
        let uses = param_use(check);
        if uses.p && fixed.p.is_none() {
            return Err(Error::InvalidParameter(format!("search on `{check}` needs a fixed p")));
        }
        let coords = if spec.mu >= 2 { PolyCoords::Coeffs } else { PolyCoords::Roots };
        let floor = alpha_floor(check, spec.k);
        Ok(Encoding {
            check,
            spec,
            coords,
            fixed,
            alpha_floor: floor,
            free_alpha: floor.is_some() && fixed.alpha.is_none(),
            free_beta: uses.beta && fixed.beta.is_none(),
        })
    }

    fn poly_dims(&self) -> usize {
        match self.coords {
            PolyCoords::Roots => 2 * self.spec.n + 1,
            PolyCoords::Coeffs => 2 * (self.spec.n - self.spec.mu + 1) + 1,
        }
    }

    fn dims(&self) -> usize {
        self.poly_dims() + 2 * usize::from(self.free_alpha) + 2 * usize::from(self.free_beta)
    }

    fn root_modulus(&self, t: f64) -> f64 {
        let k = self.spec.k;
        match self.spec.side {
            Side::ZerosOutsideOpenDisk => k * (1.0 + t * t),
            Side::ZerosInsideClosedDisk => k / (1.0 + t * t),
            Side::Unrestricted => t * t,
        }
    }

    fn root_coordinate(&self, m: f64) -> f64 {
        let k = self.spec.k;
        let t2 = match self.spec.side {
            Side::ZerosOutsideOpenDisk => m / k - 1.0,
            Side::ZerosInsideClosedDisk if m > 0.0 => k / m - 1.0,
            Side::ZerosInsideClosedDisk => 1e6,
            Side::Unrestricted => m,
        };
        t2.clamp(0.0, 1e6).sqrt()
    }

    fn decode(&self, x: &[f64]) -> (Polynomial, InequalityParams) {
        let n = self.spec.n;
        let pd = self.poly_dims();
        let lead = Complex64::from_polar(1.0, x[pd - 1]);
        let poly = match self.coords {
            PolyCoords::Roots => {
                let roots: Vec<Complex64> = (0..n)
                    .map(|j| Complex64::from_polar(self.root_modulus(x[2 * j]), x[2 * j + 1]))
                    .collect();
                Polynomial::from_roots(&roots, lead)
            }
            PolyCoords::Coeffs => {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
                for (i, c) in coeffs.iter_mut().take(n - self.spec.mu + 1).enumerate() {
                    *c = Complex64::new(x[2 * i], x[2 * i + 1]);
                }
                coeffs[n] = lead;
                Polynomial::new(coeffs)
            }
        };
        let mut params = self.fixed;
        let mut at = pd;
        if self.free_alpha {
            let floor = self.alpha_floor.unwrap_or(0.0);
            let (u, phase) = (x[at], x[at + 1]);
            params.alpha = Some(Complex64::from_polar(floor + u * u, phase));
            at += 2;
        }
        if self.free_beta {
            let (a, b) = (x[at], x[at + 1]);
            params.beta = Some(Complex64::new(a, b) / (1.0 + a * a + b * b).sqrt());
        }
        let uses = param_use(self.check);
        if uses.k {
            params.k = Some(self.spec.k);
        }
        if uses.mu {
            params.mu = Some(self.spec.mu);
        }
        (poly, params)
    }

    /// Inverse of `decode` for a start polynomial; `alpha` and `beta` are used
    /// when free.
    fn encode(&self, poly: &Polynomial, alpha: Complex64, beta: Complex64) -> Result<Vec<f64>> {
        let n = self.spec.n;
        let lead = poly.leading();
        let mut x = Vec::with_capacity(self.dims());
        match self.coords {
            PolyCoords::Roots => {
                for r in &poly.roots()?.roots {
                    x.push(self.root_coordinate(r.norm()));
                    x.push(r.arg());
                }
            }
            PolyCoords::Coeffs => {
                for c in poly.coeffs().iter().take(n - self.spec.mu + 1) {
                    let c = c / lead.norm();
                    x.push(c.re);
                    x.push(c.im);
                }
            }
        }
        x.push(lead.arg());
        if self.free_alpha {
            let floor = self.alpha_floor.unwrap_or(0.0);
            x.push((alpha.norm() - floor).max(0.0).sqrt());
            x.push(alpha.arg());
        }
        if self.free_beta {
            // inverse of w / sqrt(1 + |w|^2) for |beta| < 1
            let b = beta.norm().min(0.999);
            let w = beta * (1.0 / (1.0 - b * b).sqrt());
            x.push(w.re);
            x.push(w.im);
        }
        Ok(x)
    }

    /// Multiplicative feasibility penalty for coefficient coordinates.
    fn penalty(&self, poly: &Polynomial, sharpness: f64) -> Option<f64> {
        if self.coords != PolyCoords::Coeffs {
            return Some(1.0);
        }
        let k = self.spec.k;
        let margin = match self.spec.side {
            Side::Unrestricted => return Some(1.0),
            Side::ZerosOutsideOpenDisk => poly.min_root_modulus().ok()? - k,
            Side::ZerosInsideClosedDisk => k - poly.max_root_modulus().ok()?,
        };
        Some(1.0 / (1.0 + (-sharpness * margin).exp()))
    }

    fn objective(&self, x: &[f64], config: &SearchConfig, quad: &QuadConfig) -> f64 {
        let (poly, params) = self.decode(x);
        let Some(penalty) = self.penalty(&poly, config.penalty_sharpness) else {
            return f64::INFINITY;
        };
        let input = CheckInput { poly, majorant: None, params };
        match run_check_relaxed(self.check, &input, quad) {
            Ok(r) if r.ratio.is_finite() => -r.ratio * penalty,
            _ => f64::INFINITY,
        }
    }
}

/// Result of one Nelder-Mead run.
#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// `(iteration, best value)` each time the best vertex improves.
    pub trace: Vec<(usize, f64)>,
}

/// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2) and an axis-aligned initial simplex.
pub fn nelder_mead<F>(f: F, x0: &[f64], scale: f64, max_iter: usize, tol: f64) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = (0..=d)
        .map(|i| {
            let mut x = x0.to_vec();
            if i > 0 {
                x[i - 1] += scale;
            }
            let v = f(&x);
            (x, v)
        })
        .collect();
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    order(&mut simplex);
    let mut trace = vec![(0, simplex[0].1)];
    let mut iterations = 0;

    let along = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(ci, wi)| ci + t * (wi - ci)).collect()
    };

    while iterations < max_iter {
        let spread = simplex[d].1 - simplex[0].1;
        if spread.is_finite() && spread.abs() < tol {
            break;
        }
        iterations += 1;
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let worst = simplex[d].0.clone();
        let reflected = along(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            let (target, ft) = if fr < simplex[d].1 { (reflected, fr) } else { (worst, simplex[d].1) };
            let contracted = along(&centroid, &target, 0.5);
            let fc = f(&contracted);
            if fc < ft {
                simplex[d] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x = along(&best, &v.0, 0.5);
                    let fx = f(&x);
                    *v = (x, fx);
                }
            }
        }
        order(&mut simplex);
        if simplex[0].1 < trace.last().map_or(f64::INFINITY, |t| t.1) {
            trace.push((iterations, simplex[0].1));
        }
    }
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations, trace }
}

/// Multistart Nelder-Mead maximisation of the check's ratio over the family.
///
/// Starts are the family's extremal candidates followed by family samples,
/// `config.multistarts` in total. The best certified point is re-evaluated
/// with [`SearchConfig::final_quad`].
pub fn maximize_ratio(
    check: CheckName,
    spec: &FamilySpec,
    fixed: &InequalityParams,
    config: &SearchConfig,
) -> Result<ExtremalRecord> {
    if config.multistarts == 0 {
        return Err(Error::InvalidParameter("multistarts must be at least 1".into()));
    }
    spec.validate()?;
    let enc = Encoding::new(check, *spec, *fixed)?;
    let starts = start_points(&enc, config)?;
    let quad = config.search_quad();

    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|x0| {
            nelder_mead(|x| enc.objective(x, config, &quad), x0, config.init_scale, config.max_iter, config.tol)
        })
        .collect();

    let mut ranked: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].value.is_finite()).collect();
    if ranked.is_empty() {
        return Err(Error::Search(format!("every start is infeasible for `{check}`")));
    }
    ranked.sort_by(|&a, &b| runs[a].value.total_cmp(&runs[b].value).then(a.cmp(&b)));

    let final_quad = SearchConfig::final_quad();
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let mut last_err = None;
    for &i in &ranked {
        let (poly, params) = enc.decode(&runs[i].x);
        let input = CheckInput { poly: poly.clone(), majorant: None, params };
        match run_check(check, &input, &final_quad) {
            Ok(report) => {
                return Ok(ExtremalRecord {
                    check_name: check,
                    family: *spec,
                    best_ratio: report.ratio,
                    argmax: Argmax { polynomial: poly, params },
                    iterations,
                    restarts: runs.len(),
                    trace_summary: runs[i].trace.iter().map(|&(it, v)| (it, -v)).collect(),
                    config: *config,
                    quadrature: final_quad,
                    report,
                });
            }
            Err(e) if e.is_hypothesis_failure() => {
                log::debug!("{check}: start {i} failed re-certification: {e}");
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Search(format!(
        "no start survived re-certification for `{check}`: {}",
        last_err.map_or_else(String::new, |e| e.to_string())
    )))
}

fn start_points(enc: &Encoding, config: &SearchConfig) -> Result<Vec<Vec<f64>>> {
    let seed = check_seed(config.seed, enc.check);
    let scalars = |i: usize| {
        let mut rng = member_rng(seed ^ 0x57a7_7e55, i);
        let floor = enc.alpha_floor.unwrap_or(0.0);
        let alpha = Complex64::from_polar(floor + 3.0 * rng.random::<f64>(), TAU * rng.random::<f64>());
        let beta = Complex64::from_polar(rng.random::<f64>(), TAU * rng.random::<f64>());
        (alpha, beta)
    };
    let mut polys: Vec<Polynomial> = extremal_candidates(&enc.spec)?;
    polys.truncate(config.multistarts);
    let mut index = 0;
    while polys.len() < config.multistarts {
        match sample_member(&enc.spec, seed, index) {
            Ok(p) => polys.push(p),
            Err(Error::SamplerExhausted { .. }) => break,
            Err(e) => return Err(e),
        }
        index += 1;
    }
    polys
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (alpha, beta) = scalars(i);
            enc.encode(p, alpha, beta)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub check: CheckName,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: f64,
    pub mu: usize,
    pub p: Option<PExponent>,
    pub best_ratio: f64,
    pub gap: f64,
    pub argmax: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SharpnessTable {
    pub rows: Vec<SharpnessRow>,
}

fn describe(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

/// One row per record: best ratio, gap `1 - ratio` and the argmax.
pub fn sharpness_report(records: &[ExtremalRecord]) -> SharpnessTable {
    let rows = records
        .iter()
        .map(|r| {
            let coeffs: Vec<String> = r.argmax.polynomial.coeffs().iter().map(|c| describe(*c)).collect();
            let mut argmax = format!("coeffs=[{}]", coeffs.join(" "));
            if let Some(a) = r.argmax.params.alpha {
                argmax.push_str(&format!(" alpha={}", describe(a)));
            }
            if let Some(b) = r.argmax.params.beta {
                argmax.push_str(&format!(" beta={}", describe(b)));
            }
            SharpnessRow {
                check: r.check_name,
                n: r.family.n,
                k: r.family.k,
                mu: r.family.mu,
                p: r.argmax.params.p,
                best_ratio: r.best_ratio,
                gap: 1.0 - r.best_ratio,
                argmax,
            }
        })
        .collect();
    SharpnessTable { rows }
}

impl SharpnessTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,n,K,mu,p,best_ratio,gap,argmax\n");
        for r in &self.rows {
            let p = r.p.map_or_else(String::new, |p| p.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{:.12e},{:.12e},\"{}\"\n",
                r.check, r.n, r.k, r.mu, p, r.best_ratio, r.gap, r.argmax
            ));
        }
        out
    }
}

impl fmt::Display for SharpnessTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<18} {:>3} {:>6} {:>3} {:>5} {:>16} {:>12}", "check", "n", "K", "mu", "p", "best_ratio", "gap")?;
        for r in &self.rows {
            let p = r.p.map_or_else(|| "-".to_string(), |p| p.to_string());
            writeln!(
                f,
                "{:<18} {:>3} {:>6} {:>3} {:>5} {:>16.12} {:>12.3e}",
                r.check.as_str(),
                r.n,
                r.k,
                r.mu,
                p,
                r.best_ratio,
                r.gap
            )?;
        }
        Ok(())
    }
}
