//! Random samplers and candidate extremals for the constrained polynomial
//! classes: zeros outside an open disk, zeros inside a closed disk, and
//! lacunary polynomials `a_n z^n + Σ_{j>=μ} a_{n-j} z^{n-j}`.
//!
//! Every sampler is a deterministic function of `(spec, count, seed)`. Member
//! `i` draws from its own ChaCha stream: the generator is seeded with `seed`
//! and switched to stream `i`, so members never share generator state and
//! batches can be produced in any order.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{LacunaryShape, Polynomial};

/// Absolute slack on root-location certificates.
pub const CERT_TOL: f64 = 1e-8;
pub const DEFAULT_BOUNDARY_FRAC: f64 = 0.25;
pub const DEFAULT_DECAY: f64 = 0.75;
/// Default rejection budget per requested sample.
pub const REJECTS_PER_SAMPLE: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    /// No zeros in `|z| < K`.
    ZerosOutsideOpenDisk,
    /// All zeros in `|z| <= K`.
    ZerosInsideClosedDisk,
    Unrestricted,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: f64,
    pub mu: usize,
    pub side: Side,
}

impl FamilySpec {
    pub fn new(n: usize, k: f64, mu: usize, side: Side) -> Result<Self> {
        let spec = FamilySpec { n, k, mu, side };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k <= 1.0) {
            return Err(Error::InvalidParameter(format!("K must lie in (0, 1], got {}", self.k)));
        }
        LacunaryShape::new(self.n, self.mu)?;
        Ok(())
    }

    pub fn shape(&self) -> LacunaryShape {
        LacunaryShape { n: self.n, mu: self.mu }
    }

    /// Whether `p` satisfies the family's zero-location and shape constraints.
    pub fn certify(&self, p: &Polynomial) -> Result<bool> {
        if p.degree() != self.n || !p.matches_lacunary(self.shape())? {
            return Ok(false);
        }
        Ok(match self.side {
            Side::ZerosOutsideOpenDisk => p.min_root_modulus()? >= self.k - CERT_TOL,
            Side::ZerosInsideClosedDisk => p.max_root_modulus()? <= self.k + CERT_TOL,
            Side::Unrestricted => true,
        })
    }
}

/// Tunables for the samplers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerOptions {
    /// Fraction of roots pinned exactly to `|z| = K` by the outside sampler.
    pub boundary_frac: f64,
    /// Per-power coefficient decay for the lacunary samplers.
    pub decay: f64,
}

impl Default for SamplerOptions {
    fn default() -> Self {
        SamplerOptions {
            boundary_frac: DEFAULT_BOUNDARY_FRAC,
            decay: DEFAULT_DECAY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub spec: FamilySpec,
    pub seed: u64,
    pub polynomials: Vec<Polynomial>,
    /// Accepted / drawn, for the rejection samplers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acceptance_rate: Option<f64>,
}

/// Generator for member `index` of a batch drawn with `seed`.
pub fn member_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Leading coefficient on the annulus `0.5 <= |a_n| <= 2` with uniform phase.
fn leading(rng: &mut ChaCha8Rng) -> Complex64 {
    let modulus = rng.random_range(0.5..=2.0);
    Complex64::from_polar(modulus, rng.random::<f64>() * TAU)
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    Ok(())
}

fn expect_side(spec: &FamilySpec, side: Side) -> Result<()> {
    spec.validate()?;
    if spec.side != side {
        return Err(Error::InvalidParameter(format!(
            "sampler expects side {side:?}, spec has {:?}",
            spec.side
        )));
    }
    Ok(())
}

/// Polynomials with all zeros in `|z| >= K`, built from roots
/// `m e^{iψ}` with `m = K(1 + t²)`, `t ~ N(0,1)`, `ψ ~ U[0, 2π)`; a fraction
/// `boundary_frac` of the roots is pinned to `m = K` exactly.
pub fn sample_zeros_outside(spec: &FamilySpec, count: usize, seed: u64) -> Result<SampleBatch> {
    sample_zeros_outside_with(spec, count, seed, &SamplerOptions::default())
}

pub fn sample_zeros_outside_with(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
    opts: &SamplerOptions,
) -> Result<SampleBatch> {
    expect_side(spec, Side::ZerosOutsideOpenDisk)?;
    check_count(count)?;
    if spec.mu != 1 {
        return Err(Error::InvalidParameter(
            "root sampler cannot impose lacunary gaps; use sample_lacunary_outside".into(),
        ));
    }
    let polynomials = (0..count)
        .map(|i| {
            let mut rng = member_rng(seed, i);
            loop {
                let p = outside_member(spec, opts, &mut rng);
                if spec.certify(&p)? {
                    return Ok(p);
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch { spec: *spec, seed, polynomials, acceptance_rate: None })
}

fn outside_member(spec: &FamilySpec, opts: &SamplerOptions, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = spec.n;
    let expected = opts.boundary_frac * n as f64;
    let pinned = expected.floor() as usize + usize::from(rng.random::<f64>() < expected.fract());
    let roots: Vec<Complex64> = (0..n)
        .map(|j| {
            let t: f64 = rng.sample(StandardNormal);
            let psi = rng.random::<f64>() * TAU;
            let m = if j < pinned { spec.k } else { spec.k * (1.0 + t * t) };
            Complex64::from_polar(m, psi)
        })
        .collect();
    Polynomial::from_roots(&roots, leading(rng))
}

/// Polynomials with all zeros in `|z| <= K`: root moduli `K sqrt(u)`,
/// `u ~ U[0,1]` (area-uniform), uniform phases. Member 0 is always `z^n`.
pub fn sample_zeros_inside(spec: &FamilySpec, count: usize, seed: u64) -> Result<SampleBatch> {
    expect_side(spec, Side::ZerosInsideClosedDisk)?;
    check_count(count)?;
    if spec.mu != 1 {
        return sample_lacunary(spec, count, seed, REJECTS_PER_SAMPLE * count, &SamplerOptions::default());
    }
    let polynomials = (0..count)
        .map(|i| {
            if i == 0 {
                return Ok(Polynomial::monomial(spec.n, Complex64::new(1.0, 0.0)));
            }
            let mut rng = member_rng(seed, i);
            loop {
                let p = inside_member(spec, &mut rng);
                if spec.certify(&p)? {
                    return Ok(p);
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch { spec: *spec, seed, polynomials, acceptance_rate: None })
}

fn inside_member(spec: &FamilySpec, rng: &mut ChaCha8Rng) -> Polynomial {
    let roots: Vec<Complex64> = (0..spec.n)
        .map(|_| {
            let m = spec.k * rng.random::<f64>().sqrt();
            Complex64::from_polar(m, rng.random::<f64>() * TAU)
        })
        .collect();
    Polynomial::from_roots(&roots, leading(rng))
}

/// Lacunary polynomials zero-free in `|z| < K`, by rejection on random
/// coefficients. `μ = 1` delegates to [`sample_zeros_outside`].
pub fn sample_lacunary_outside(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
    max_rejects: usize,
) -> Result<SampleBatch> {
    expect_side(spec, Side::ZerosOutsideOpenDisk)?;
    if spec.mu == 1 {
        return sample_zeros_outside(spec, count, seed);
    }
    sample_lacunary(spec, count, seed, max_rejects, &SamplerOptions::default())
}

/// Coefficient-space rejection sampler for either disk side.
///
/// Free coefficients are `a_{n-j} = g_j ρ^j` for `j >= μ` with `g_j` standard
/// complex Gaussian, which puts the typical root modulus near `ρ`. Outside
/// families use `ρ = K / decay`, inside families `ρ = K · decay`.
pub fn sample_lacunary(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
    max_rejects: usize,
    opts: &SamplerOptions,
) -> Result<SampleBatch> {
    spec.validate()?;
    check_count(count)?;
    let rho = match spec.side {
        Side::ZerosOutsideOpenDisk => spec.k / opts.decay,
        Side::ZerosInsideClosedDisk => spec.k * opts.decay,
        Side::Unrestricted => 1.0,
    };
    let mut polynomials = Vec::with_capacity(count);
    let mut draws = 0usize;
    for i in 0..count {
        let mut rng = member_rng(seed, i);
        loop {
            if draws >= max_rejects {
                return Err(Error::SamplerExhausted {
                    requested: count,
                    accepted: polynomials.len(),
                    draws,
                    rate: polynomials.len() as f64 / draws.max(1) as f64,
                });
            }
            draws += 1;
            let p = lacunary_member(spec, rho, &mut rng);
            if spec.certify(&p)? {
                polynomials.push(p);
                break;
            }
        }
    }
    Ok(SampleBatch {
        spec: *spec,
        seed,
        acceptance_rate: Some(count as f64 / draws as f64),
        polynomials,
    })
}

fn lacunary_member(spec: &FamilySpec, rho: f64, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = spec.n;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for j in spec.mu..=n {
        coeffs[n - j] = complex_gaussian(rng) * rho.powi(j as i32);
    }
    coeffs[n] = leading(rng);
    Polynomial::new(coeffs)
}

/// Gaussian coefficients with the lacunary gaps imposed; no zero constraint.
pub fn sample_unrestricted(spec: &FamilySpec, count: usize, seed: u64) -> Result<SampleBatch> {
    expect_side(spec, Side::Unrestricted)?;
    check_count(count)?;
    let polynomials = (0..count)
        .map(|i| lacunary_member(spec, 1.0, &mut member_rng(seed, i)))
        .collect();
    Ok(SampleBatch { spec: *spec, seed, polynomials, acceptance_rate: None })
}

/// Picks the sampler matching the spec's side and lacunary index.
pub fn sample(spec: &FamilySpec, count: usize, seed: u64) -> Result<SampleBatch> {
    match (spec.side, spec.mu) {
        (Side::Unrestricted, _) => sample_unrestricted(spec, count, seed),
        (Side::ZerosOutsideOpenDisk, _) => {
            sample_lacunary_outside(spec, count, seed, REJECTS_PER_SAMPLE * count)
        }
        (Side::ZerosInsideClosedDisk, _) => sample_zeros_inside(spec, count, seed),
    }
}

/// Member `index` of `sample(spec, index + 1, seed)`, computed without
/// drawing the earlier members. Rejection samplers get a budget of
/// [`REJECTS_PER_SAMPLE`] draws.
pub fn sample_member(spec: &FamilySpec, seed: u64, index: usize) -> Result<Polynomial> {
    spec.validate()?;
    let opts = SamplerOptions::default();
    let mut rng = member_rng(seed, index);
    let inside_roots = spec.side == Side::ZerosInsideClosedDisk && spec.mu == 1;
    if inside_roots && index == 0 {
        return Ok(Polynomial::monomial(spec.n, Complex64::new(1.0, 0.0)));
    }
    let rho = match spec.side {
        Side::Unrestricted => return Ok(lacunary_member(spec, 1.0, &mut rng)),
        Side::ZerosOutsideOpenDisk => spec.k / opts.decay,
        Side::ZerosInsideClosedDisk => spec.k * opts.decay,
    };
    for _ in 0..REJECTS_PER_SAMPLE {
        let p = match (spec.side, spec.mu) {
            (Side::ZerosOutsideOpenDisk, 1) => outside_member(spec, &opts, &mut rng),
            (Side::ZerosInsideClosedDisk, 1) => inside_member(spec, &mut rng),
            _ => lacunary_member(spec, rho, &mut rng),
        };
        if spec.certify(&p)? {
            return Ok(p);
        }
    }
    Err(Error::SamplerExhausted { requested: 1, accepted: 0, draws: REJECTS_PER_SAMPLE, rate: 0.0 })
}

/// Known and candidate extremal polynomials for the family, filtered to
/// members that satisfy its constraints.
///
/// * `z^n` (zeros at the origin)
/// * `(z + K)^n` (all zeros on `|z| = K`)
/// * `(z^μ + K^μ)^{n/μ}` when `μ | n`
/// * `1 + z^n`
/// * the binomial edge `z^n + K^n`
pub fn extremal_candidates(spec: &FamilySpec) -> Result<Vec<Polynomial>> {
    spec.validate()?;
    let one = Complex64::new(1.0, 0.0);
    let n = spec.n;
    let k = spec.k;
    let mut out = vec![Polynomial::monomial(n, one)];
    out.push(Polynomial::from_roots(&vec![Complex64::new(-k, 0.0); n], one));
    if n.is_multiple_of(spec.mu) {
        let mu = spec.mu;
        let block = {
            let mut c = vec![Complex64::new(0.0, 0.0); mu + 1];
            c[0] = Complex64::new(k.powi(mu as i32), 0.0);
            c[mu] = one;
            Polynomial::new(c)
        };
        let mut acc = Polynomial::constant(one);
        for _ in 0..n / mu {
            acc = multiply(&acc, &block);
        }
        out.push(acc);
    }
    let mut binomial = vec![Complex64::new(0.0, 0.0); n + 1];
    binomial[0] = one;
    binomial[n] = one;
    out.push(Polynomial::new(binomial.clone()));
    binomial[0] = Complex64::new(k.powi(n as i32), 0.0);
    out.push(Polynomial::new(binomial));

    let mut kept: Vec<Polynomial> = Vec::new();
    for p in out {
        if spec.certify(&p)? && !kept.contains(&p) {
            kept.push(p);
        }
    }
    Ok(kept)
}

fn multiply(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = vec![Complex64::new(0.0, 0.0); a.degree() + b.degree() + 1];
    for (i, &x) in a.coeffs().iter().enumerate() {
        for (j, &y) in b.coeffs().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}
