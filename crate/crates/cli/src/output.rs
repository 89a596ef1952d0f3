//! Report rendering and file writing. All writes happen on the main thread.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use zygmund_core::InequalityReport;

use crate::config::RunConfig;

pub const CSV_COLUMNS: &str = "name,n,K,mu,p,abs_alpha,abs_beta,lhs,rhs,ratio,margin,satisfied,convention";

/// Header object that opens every output. The CSV variant drops the
/// timestamp so reruns are byte-identical.
pub fn header(command: &str, config: &RunConfig, timestamp: bool) -> Value {
    let mut h = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": config.seed,
        "config": config,
    });
    if timestamp {
        h["timestamp"] = json!(chrono::Utc::now().to_rfc3339());
    }
    h
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn csv_row(r: &InequalityReport) -> String {
    let q = &r.params;
    format!(
        "{},{},{},{},{},{},{},{:e},{:e},{:e},{:e},{},{}",
        r.name,
        r.polynomial.degree(),
        opt(q.k),
        opt(q.mu),
        opt(q.p),
        opt(q.alpha.map(|a| a.norm())),
        opt(q.beta.map(|b| b.norm())),
        r.lhs,
        r.rhs,
        r.ratio,
        r.margin,
        r.satisfied,
        r.convention
    )
}

pub fn csv(command: &str, config: &RunConfig, reports: &[InequalityReport]) -> String {
    let mut out = format!("# {}\n{CSV_COLUMNS}\n", header(command, config, false));
    for r in reports {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

pub fn jsonl<T: Serialize>(command: &str, config: &RunConfig, items: &[T]) -> Result<String> {
    let mut out = serde_json::to_string(&header(command, config, true))?;
    out.push('\n');
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn table(reports: &[InequalityReport]) -> String {
    let mut out = format!(
        "{:<18} {:>3} {:>5} {:>3} {:>5} {:>10} {:>18} {:>18} {:>16} {:>5}\n",
        "name", "n", "K", "mu", "p", "|alpha|", "lhs", "rhs", "ratio", "ok"
    );
    for r in reports {
        let q = &r.params;
        let _ = writeln!(
            out,
            "{:<18} {:>3} {:>5} {:>3} {:>5} {:>10} {:>18.12e} {:>18.12e} {:>16.12} {:>5}",
            r.name.as_str(),
            r.polynomial.degree(),
            q.k.map_or("-".into(), |k| k.to_string()),
            q.mu.map_or("-".into(), |m| m.to_string()),
            q.p.map_or("-".into(), |p| p.to_string()),
            q.alpha.map_or("-".into(), |a| format!("{:.4}", a.norm())),
            r.lhs,
            r.rhs,
            r.ratio,
            r.satisfied
        );
    }
    out
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))
}
