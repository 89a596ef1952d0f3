//! Complex polynomials in ascending coefficient order: evaluation, derivatives,
//! the polar derivative, the conjugate-reciprocal transform and roots.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Backward-error bound every returned root satisfies:
/// `|P(r)| <= tol * Σ|a_i| |r|^i`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Tightened residual used when re-certifying a suspected violation.
pub const ROOT_RESIDUAL_TOL_STRICT: f64 = 1e-12;
/// Relative threshold below which a coefficient counts as a structural zero.
pub const LACUNARY_ZERO_TOL: f64 = 1e-12;

const ABERTH_MAX_SWEEPS: usize = 200;
const ABERTH_RESTARTS: usize = 8;

/// A polynomial with complex coefficients; `coeffs[j]` multiplies `z^j`.
///
/// The leading coefficient is always nonzero. The zero polynomial has an empty
/// coefficient vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<Complex64>,
}

impl From<PolynomialRepr> for Polynomial {
    fn from(r: PolynomialRepr) -> Self {
        Polynomial::new(r.coeffs)
    }
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr { coeffs: p.coeffs }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|a| a.norm() == 0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| c(x)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(vec![value])
    }

    /// `leading * z^n`.
    pub fn monomial(n: usize, leading: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = leading;
        Self::new(coeffs)
    }

    /// `leading * prod (z - r)`.
    pub fn from_roots(roots: &[Complex64], leading: Complex64) -> Self {
        let mut coeffs = vec![leading];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (j, &a) in coeffs.iter().enumerate() {
                next[j + 1] += a;
                next[j] -= a * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// Value and first derivative in one Horner pass.
    pub fn evaluate_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// Value on the unit circle at angle `theta`.
    pub fn on_circle(&self, theta: f64) -> Complex64 {
        self.evaluate(Complex64::from_polar(1.0, theta))
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &a)| a * j as f64)
                .collect(),
        )
    }

    pub fn scale(&self, factor: Complex64) -> Polynomial {
        Self::new(self.coeffs.iter().map(|&a| a * factor).collect())
    }

    /// `P(z e^{i gamma})`.
    pub fn rotate(&self, gamma: f64) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, &a)| a * Complex64::from_polar(1.0, gamma * j as f64))
                .collect(),
        )
    }

    /// Untrimmed coefficients of `n P(z) + (alpha - z) P'(z)` with `n = degree`;
    /// entry `n` is the cancelled `z^n` term.
    pub fn polar_derivative_raw(&self, alpha: Complex64) -> Vec<Complex64> {
        self.polar_derivative_raw_with_degree(alpha, self.degree())
    }

    fn polar_derivative_raw_with_degree(&self, alpha: Complex64, n: usize) -> Vec<Complex64> {
        let nf = n as f64;
        let len = self.coeffs.len().max(n + 1);
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (j, &a) in self.coeffs.iter().enumerate() {
            // n a_j z^j - j a_j z^j + alpha j a_j z^{j-1}
            out[j] += a * (nf - j as f64);
            if j > 0 {
                out[j - 1] += alpha * a * j as f64;
            }
        }
        out
    }

    /// Polar derivative `D_alpha P(z) = n P(z) + (alpha - z) P'(z)`, `n = degree(P)`.
    pub fn polar_derivative(&self, alpha: Complex64) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        Self::new(self.polar_derivative_raw(alpha))
    }

    /// Polar derivative taken with respect to an explicit order `n >= degree(P)`,
    /// as needed when `P` is compared against a majorant of degree `n`.
    pub fn polar_derivative_with_degree(&self, alpha: Complex64, n: usize) -> Polynomial {
        Self::new(self.polar_derivative_raw_with_degree(alpha, n))
    }

    /// `Q(z) = z^n conj(P(1/conj z))`: reverses and conjugates the coefficients.
    pub fn conjugate_reciprocal(&self) -> Polynomial {
        Self::new(self.coeffs.iter().rev().map(|a| a.conj()).collect())
    }

    /// `z^n conj(P(K^2 / conj z)) / K^n`; reflects the zeros of `P` across `|z| = K`
    /// and agrees with `|P|` on that circle.
    pub fn reflect_across(&self, k: f64) -> Polynomial {
        let n = self.degree() as i32;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(j, a)| a.conj() * k.powi(2 * j as i32 - n))
                .collect(),
        )
    }

    pub fn matches_lacunary(&self, shape: LacunaryShape) -> Result<bool> {
        if self.degree() != shape.n || self.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: shape.n,
                found: self.degree(),
            });
        }
        let tol = LACUNARY_ZERO_TOL * self.max_coeff_modulus();
        Ok((1..shape.mu).all(|j| self.coeffs[shape.n - j].norm() <= tol))
    }

    pub fn roots(&self) -> Result<RootMultiset> {
        self.roots_with_tol(ROOT_RESIDUAL_TOL)
    }

    /// Roots whose backward error satisfies `|P(r)| <= tol * Σ|a_i| |r|^i`.
    pub fn roots_with_tol(&self, tol: f64) -> Result<RootMultiset> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        aberth_roots(self, tol).map(|roots| RootMultiset { roots })
    }

    pub fn min_root_modulus(&self) -> Result<f64> {
        Ok(self.roots()?.min_modulus())
    }

    pub fn max_root_modulus(&self) -> Result<f64> {
        Ok(self.roots()?.max_modulus())
    }
}

/// Degree `n` together with the gap index `mu`: coefficients of
/// `z^{n-1}, ..., z^{n-mu+1}` vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LacunaryShape {
    pub n: usize,
    pub mu: usize,
}

impl LacunaryShape {
    pub fn new(n: usize, mu: usize) -> Result<Self> {
        if n == 0 || mu == 0 || mu > n {
            return Err(Error::InvalidParameter(format!(
                "lacunary shape needs 1 <= mu <= n, got n = {n}, mu = {mu}"
            )));
        }
        Ok(LacunaryShape { n, mu })
    }
}

/// Roots with multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootMultiset {
    pub roots: Vec<Complex64>,
}

impl RootMultiset {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn to_polynomial(&self, leading: Complex64) -> Polynomial {
        Polynomial::from_roots(&self.roots, leading)
    }

    pub fn min_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    /// Largest pairwise distance under the assignment minimising the total
    /// distance between the two multisets. `None` if the sizes differ.
    pub fn matching_distance(&self, other: &RootMultiset) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        let cost: Vec<Vec<f64>> = self
            .roots
            .iter()
            .map(|a| other.roots.iter().map(|b| (a - b).norm()).collect())
            .collect();
        let assignment = hungarian(&cost);
        Some(
            assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| cost[i][j])
                .fold(0.0, f64::max),
        )
    }
}

/// Minimum-cost perfect assignment on a square matrix (Kuhn-Munkres with
/// potentials). Returns `row -> column`.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut way = vec![0usize; n + 1];
    // matched_row[j] = row assigned to column j (1-based, 0 = none)
    let mut matched_row = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        if matched_row[j] > 0 {
            assignment[matched_row[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Simultaneous Aberth-Ehrlich iteration with Newton polishing. Zero roots at
/// the origin are split off exactly first.
fn aberth_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    let coeffs = p.coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|a| a.norm() == 0.0).count();
    let reduced = Polynomial::new(coeffs[zeros_at_origin..].to_vec());
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if reduced.degree() == 0 {
        return Ok(roots);
    }
    let monic = reduced.scale(reduced.leading().inv());
    let magnitudes: Vec<f64> = monic.coeffs().iter().map(|a| a.norm()).collect();
    let backward_error = |r: Complex64| {
        let scale = magnitudes.iter().rev().fold(0.0, |acc, a| acc * r.norm() + a);
        monic.evaluate(r).norm() / scale
    };
    let deriv = monic.derivative();

    // Deterministic restarts: the generator is seeded from the degree only.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + monic.degree() as u64);
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for attempt in 0..=ABERTH_RESTARTS {
        let mut z = initial_guesses(&monic, attempt, &mut rng);
        aberth_sweeps(&monic, &deriv, &mut z);
        newton_polish(&monic, &deriv, &mut z);
        let worst = z.iter().map(|&r| backward_error(r)).fold(0.0, f64::max);
        if worst <= tol {
            merge_multiple_roots(&monic, &mut z);
            roots.extend(z);
            return Ok(roots);
        }
        if best.as_ref().is_none_or(|(w, _)| worst < *w) {
            best = Some((worst, z));
        }
    }
    let (worst, _) = best.expect("at least one attempt");
    Err(Error::RootsNotConverged {
        degree: p.degree(),
        residual: worst,
    })
}

/// Computed roots closer than this (relative to `max(1, |r|)`) are tested as
/// one multiple root.
const CLUSTER_RADIUS: f64 = 0.05;
/// A cluster of size `m` at `c` is accepted when the Taylor coefficients
/// `b_0 .. b_{m-1}` of `P(c + w)` vanish to this many rounding units of their
/// evaluation bound.
const CLUSTER_ROUNDING_UNITS: f64 = 256.0;

/// A root of multiplicity `m` is only resolved to about `eps^{1/m}` by any
/// simultaneous iteration. Clusters that are numerically an `m`-fold root are
/// replaced by `m` copies of the simple root of `P^{(m-1)}` near their centroid.
fn merge_multiple_roots(p: &Polynomial, z: &mut [Complex64]) {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= CLUSTER_RADIUS * z[i].norm().max(1.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    for group in groups.into_iter().filter(|g| g.len() >= 2) {
        let m = group.len();
        let centroid = group.iter().map(|&i| z[i]).sum::<Complex64>() / m as f64;
        let mut d = p.clone();
        for _ in 1..m {
            d = d.derivative();
        }
        let dd = d.derivative();
        let mut c = centroid;
        for _ in 0..16 {
            let step = d.evaluate(c) / dd.evaluate(c);
            if !step.is_finite() {
                break;
            }
            c -= step;
            if step.norm() <= f64::EPSILON * c.norm().max(1.0) {
                break;
            }
        }
        if (c - centroid).norm() > CLUSTER_RADIUS * centroid.norm().max(1.0) {
            continue;
        }
        let (b, bound) = taylor_at(p, c);
        let units = CLUSTER_ROUNDING_UNITS * p.degree() as f64 * f64::EPSILON;
        if (0..m).all(|j| b[j].norm() <= units * bound[j]) {
            for &i in &group {
                z[i] = c;
            }
        }
    }
}

/// Coefficients of `P(c + w)` in `w`, with the matching coefficients of
/// `Σ|a_i| (|c| + w)^i` as rounding bounds.
fn taylor_at(p: &Polynomial, c: Complex64) -> (Vec<Complex64>, Vec<f64>) {
    let mut b = p.coeffs().to_vec();
    let mut bound: Vec<f64> = b.iter().map(|a| a.norm()).collect();
    let n = b.len() - 1;
    let cm = c.norm();
    for k in 0..n {
        for i in (k..n).rev() {
            let next = b[i + 1];
            b[i] += c * next;
            bound[i] += cm * bound[i + 1];
        }
    }
    (b, bound)
}

fn initial_guesses(p: &Polynomial, attempt: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let n = p.degree();
    let a = p.coeffs();
    // Geometric-mean radius of the roots; robust starting circle.
    let radius = a[0].norm().powf(1.0 / n as f64).max(1e-3);
    let offset = 0.4 + attempt as f64 * 0.7;
    (0..n)
        .map(|k| {
            let mut r = radius;
            let mut phase = offset + std::f64::consts::TAU * k as f64 / n as f64;
            if attempt > 0 {
                r *= 1.0 + 0.5 * (rng.random::<f64>() - 0.5);
                phase += 0.3 * (rng.random::<f64>() - 0.5);
            }
            Complex64::from_polar(r, phase)
        })
        .collect()
}

fn aberth_sweeps(p: &Polynomial, dp: &Polynomial, z: &mut [Complex64]) {
    let n = z.len();
    for _ in 0..ABERTH_MAX_SWEEPS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pz = p.evaluate(z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dp.evaluate(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 4.0 * f64::EPSILON {
            break;
        }
    }
}

fn newton_polish(p: &Polynomial, dp: &Polynomial, z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let pz = p.evaluate(*r);
            let d = dp.evaluate(*r);
            if pz.norm() == 0.0 || d.norm() == 0.0 {
                break;
            }
            let next = *r - pz / d;
            if !next.is_finite() || p.evaluate(next).norm() >= pz.norm() {
                break;
            }
            *r = next;
        }
    }
}
