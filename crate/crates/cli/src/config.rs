//! TOML run configuration. Command-line flags override file values.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use zygmund_core::inequalities::QuadConfig;
use zygmund_core::{CheckName, PExponent, ScanGrid, SearchConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub quadrature: QuadSection,
    pub scan: Option<ScanSection>,
    pub search: Option<SearchSection>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadSection {
    pub rel_tol: Option<f64>,
    pub max_nodes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub checks: Vec<CheckName>,
    pub grid: ScanGrid,
}

impl Default for ScanSection {
    fn default() -> Self {
        ScanSection {
            checks: vec![CheckName::Zygmund],
            grid: ScanGrid {
                p_values: vec![PExponent::Finite(1.0), PExponent::Finite(2.0), PExponent::Finite(4.0), PExponent::Inf],
                alpha_moduli: vec![1.0, 2.0, 4.0],
                alpha_phases: vec![0.0, 1.0],
                beta_values: vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5)],
                k_values: vec![0.5, 1.0],
                mu_values: vec![1, 2],
                n_values: vec![2, 4, 6],
                samples_per_cell: 4,
                seed: 0,
            },
        }
    }
}

/// One search target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRun {
    pub check: CheckName,
    pub n: usize,
    #[serde(rename = "K", default = "one")]
    pub k: f64,
    #[serde(default = "unit")]
    pub mu: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PExponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex64>,
}

fn one() -> f64 {
    1.0
}

fn unit() -> usize {
    1
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSection {
    pub runs: Vec<SearchRun>,
    pub config: SearchConfig,
}

/// Global flags shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub quad_tol: Option<f64>,
    pub max_nodes: Option<usize>,
}

/// Fully resolved settings; echoed into every output header.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub quadrature: QuadConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("bad config {}", path.display()))
}

impl RunConfig {
    pub fn resolve(flags: &Overrides) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => load(path)?,
            None => FileConfig::default(),
        };
        let mut quadrature = QuadConfig::default();
        if let Some(t) = flags.quad_tol.or(file.quadrature.rel_tol) {
            quadrature.single.rel_tol = t;
            quadrature.double.rel_tol = t;
        }
        if let Some(m) = flags.max_nodes.or(file.quadrature.max_nodes) {
            quadrature.single.max_nodes = m;
            quadrature.single.start_nodes = quadrature.single.start_nodes.min(m);
            quadrature.double.max_nodes = quadrature.double.max_nodes.min(m);
            quadrature.double.start_nodes = quadrature.double.start_nodes.min(m);
        }
        quadrature.single.validate()?;
        quadrature.double.validate()?;
        // one seed drives everything; seeds inside the sections are replaced
        let seed = flags.seed.or(file.seed).unwrap_or(0);
        let mut scan = file.scan;
        if let Some(s) = scan.as_mut() {
            s.grid.seed = seed;
        }
        let mut search = file.search;
        if let Some(s) = search.as_mut() {
            s.config.seed = seed;
        }
        Ok(RunConfig {
            seed,
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or_default(),
            quadrature,
            scan,
            search,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "seed = 5\nformat = \"csv\"\n[quadrature]\nrel_tol = 1e-8\n").unwrap();
        let flags = Overrides { config: Some(path.clone()), ..Default::default() };
        let cfg = RunConfig::resolve(&flags).unwrap();
        assert_eq!((cfg.seed, cfg.format), (5, Format::Csv));
        assert_eq!(cfg.quadrature.single.rel_tol, 1e-8);
        let flags = Overrides { config: Some(path), seed: Some(9), format: Some(Format::Json), ..Default::default() };
        let cfg = RunConfig::resolve(&flags).unwrap();
        assert_eq!((cfg.seed, cfg.format), (9, Format::Json));
    }

    #[test]
    fn scan_and_search_sections_parse() {
        let text = r#"
            [scan]
            checks = ["zygmund", "theorem-c"]
            [scan.grid]
            p_values = [2, "inf"]
            alpha_moduli = [2.0]
            K_values = [0.5]
            n_values = [3]
            samples_per_cell = 2
            [[search.runs]]
            check = "main"
            n = 4
            K = 0.5
            mu = 2
            p = 2
            [search.config]
            multistarts = 4
        "#;
        let file: FileConfig = toml::from_str(text).unwrap();
        let scan = file.scan.unwrap();
        assert_eq!(scan.checks, [CheckName::Zygmund, CheckName::TheoremC]);
        assert_eq!(scan.grid.p_values, [PExponent::Finite(2.0), PExponent::Inf]);
        let search = file.search.unwrap();
        assert_eq!(search.runs[0].mu, 2);
        assert_eq!(search.config.multistarts, 4);
        assert_eq!(search.config.max_iter, SearchConfig::default().max_iter);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("sed = 1").is_err());
    }
}
