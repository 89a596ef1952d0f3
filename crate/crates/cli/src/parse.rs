//! Command-line scalar and polynomial grammar.
//!
//! Complex numbers are accepted as `a`, `bi`, `a+bi`, `a-bi` (`j` works in
//! place of `i`, a bare `i` means one) or as a JSON pair `[re, im]`.
//! Polynomials are JSON, either `{"coeffs": [[re, im], ...]}` or the bare
//! coefficient list, in ascending powers.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use zygmund_core::Polynomial;

pub fn complex(text: &str) -> Result<Complex64> {
    let z = complex_any(text)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        bail!("complex number `{text}` is not finite");
    }
    Ok(z)
}

fn complex_any(text: &str) -> Result<Complex64> {
    let s = text.trim();
    if s.starts_with('[') {
        let pair: [f64; 2] = serde_json::from_str(s).with_context(|| format!("bad complex pair `{text}`"))?;
        return Ok(Complex64::new(pair[0], pair[1]));
    }
    let bad = || anyhow!("bad complex number `{text}`; expected a+bi or [re, im]");
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // the sign separating the parts is the last one not inside an exponent
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, ch)| (ch == '+' || ch == '-') && k > 0 && !body[..k].ends_with(['e', 'E']))
        .map(|(k, _)| k);
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

pub fn polynomial(text: &str) -> Result<Polynomial> {
    let value: serde_json::Value = serde_json::from_str(text).context("polynomial is not valid JSON")?;
    let poly: Polynomial = if value.is_array() {
        let coeffs: Vec<Complex64> = serde_json::from_value(value).context("expected [[re, im], ...]")?;
        Polynomial::new(coeffs)
    } else {
        serde_json::from_value(value).context("expected {\"coeffs\": [[re, im], ...]}")?
    };
    if poly.coeffs().iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        bail!("polynomial has non-finite coefficients");
    }
    Ok(poly)
}

/// Comma-separated list, e.g. `1,2,inf`.
pub fn list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| anyhow!("bad list item `{t}`: {e}")))
        .collect()
}
