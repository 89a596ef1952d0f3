//! `zygmund`: check polar-derivative inequalities, run scans and searches.
//!
//! Exit codes: 0 success or satisfied, 1 malformed input or runtime error,
//! 2 an inequality was violated, 3 a hypothesis or precondition failed.

mod config;
mod output;
mod parse;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use zygmund_core::explorer::{maximize_ratio, param_use, replay, scan, sharpness_report, target_family, SkipRecord};
use zygmund_core::inequalities::{run_check, CheckInput};
use zygmund_core::quad::{cp_closed_form, cp_constant_with, QuadratureSpec};
use zygmund_core::{CheckName, ExtremalRecord, InequalityParams, InequalityReport, PExponent, Polynomial};

use config::{Format, Overrides, RunConfig, ScanSection, SearchRun, SearchSection};

const VIOLATED: u8 = 2;
const HYPOTHESIS: u8 = 3;
const REPLAY_TOL: f64 = 1e-9;
const CP_TOL: f64 = 1e-10;
/// Exponent used by `check` when `--p` is omitted.
const DEFAULT_P: PExponent = PExponent::Finite(2.0);

#[derive(Parser)]
#[command(name = "zygmund", version, about = "Numerical checks of L^p inequalities for polar derivatives")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Relative tolerance of the quadrature doubling test.
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one inequality on one polynomial.
    Check(CheckArgs),
    /// Run every sample of a parameter grid.
    Scan(ScanArgs),
    /// Maximize the ratio lhs/rhs over a family.
    Search(SearchArgs),
    /// Tabulate C_p by quadrature against the Gamma closed form.
    CpTable {
        /// Comma-separated exponents, `inf` allowed.
        #[arg(long, default_value = "1,2,4,inf")]
        p: String,
    },
    /// Re-evaluate a saved extremal record.
    Replay {
        file: PathBuf,
    },
}

#[derive(Args)]
struct Params {
    /// Polar-derivative pole, `a+bi` or `[re, im]`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Norm exponent, a number >= 1 or `inf`; `check` defaults it to 2.
    #[arg(long)]
    p: Option<PExponent>,
    #[arg(long = "K")]
    k: Option<f64>,
    #[arg(long)]
    mu: Option<usize>,
}

impl Params {
    fn resolve(&self) -> Result<InequalityParams> {
        Ok(InequalityParams {
            alpha: self.alpha.as_deref().map(parse::complex).transpose()?,
            beta: self.beta.as_deref().map(parse::complex).transpose()?,
            p: self.p,
            k: self.k,
            mu: self.mu,
        })
    }
}

#[derive(Args)]
struct CheckArgs {
    check: CheckName,
    /// Coefficients in ascending powers as JSON.
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Majorant `Q` for lemma2; defaults to the reflected polynomial.
    #[arg(long, conflicts_with = "majorant_file")]
    majorant: Option<String>,
    #[arg(long)]
    majorant_file: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

#[derive(Args)]
struct ScanArgs {
    /// Checks to run; overrides the config file list.
    #[arg(long, value_delimiter = ',')]
    check: Vec<CheckName>,
}

#[derive(Args)]
struct SearchArgs {
    /// Run a single search instead of the config file list.
    #[arg(long)]
    check: Option<CheckName>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    params: Params,
    #[arg(long)]
    multistarts: Option<usize>,
    #[arg(long)]
    max_iter: Option<usize>,
}

/// A saved search: header object plus the record.
#[derive(Serialize, Deserialize)]
struct RecordFile {
    header: Value,
    record: ExtremalRecord,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Overrides {
        config: cli.global.config,
        seed: cli.global.seed,
        out: cli.global.out,
        format: cli.global.format,
        quad_tol: cli.global.quad_tol,
        max_nodes: cli.global.max_nodes,
    };
    let run = RunConfig::resolve(&flags).and_then(|cfg| match cli.command {
        Command::Check(args) => cmd_check(&cfg, args),
        Command::Scan(args) => cmd_scan(cfg, args),
        Command::Search(args) => cmd_search(cfg, args),
        Command::CpTable { p } => cmd_cp_table(&cfg, &p),
        Command::Replay { file } => cmd_replay(&cfg, &file),
    });
    match run {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let hypothesis = e
                .downcast_ref::<zygmund_core::Error>()
                .is_some_and(zygmund_core::Error::is_hypothesis_failure);
            ExitCode::from(if hypothesis { HYPOTHESIS } else { 1 })
        }
    }
}

fn read_poly(inline: Option<&str>, file: Option<&Path>) -> Result<Option<Polynomial>> {
    match (inline, file) {
        (Some(text), _) => parse::polynomial(text).map(Some),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse::polynomial(&text).map(Some)
        }
        (None, None) => Ok(None),
    }
}

fn print_reports(command: &str, cfg: &RunConfig, reports: &[InequalityReport]) -> Result<()> {
    match cfg.format {
        Format::Json => print!("{}", output::jsonl(command, cfg, reports)?),
        Format::Csv => print!("{}", output::csv(command, cfg, reports)),
        Format::Table => print!("{}", output::table(reports)),
    }
    Ok(())
}

fn verdict(satisfied: bool) -> u8 {
    if satisfied {
        0
    } else {
        VIOLATED
    }
}

fn cmd_check(cfg: &RunConfig, args: CheckArgs) -> Result<u8> {
    let poly = read_poly(args.poly.as_deref(), args.poly_file.as_deref())?
        .ok_or_else(|| anyhow!("give the polynomial with --poly or --poly-file"))?;
    let majorant = read_poly(args.majorant.as_deref(), args.majorant_file.as_deref())?;
    let mut params = args.params.resolve()?;
    if params.p.is_none() && param_use(args.check).p {
        params.p = Some(DEFAULT_P);
    }
    let input = CheckInput { poly, majorant, params };
    let report = run_check(args.check, &input, &cfg.quadrature)?;
    let reports = std::slice::from_ref(&report);
    print_reports("check", cfg, reports)?;
    if let Some(dir) = &cfg.out {
        output::write(dir, &format!("check-{}.jsonl", args.check), &output::jsonl("check", cfg, reports)?)?;
    }
    Ok(verdict(report.satisfied))
}

#[derive(Serialize)]
struct SkipLine<'a> {
    check: CheckName,
    skipped: &'a SkipRecord,
}

fn cmd_scan(mut cfg: RunConfig, args: ScanArgs) -> Result<u8> {
    let mut section = cfg.scan.take().unwrap_or_else(|| {
        let mut s = ScanSection::default();
        s.grid.seed = cfg.seed;
        s
    });
    if !args.check.is_empty() {
        section.checks = args.check;
    }
    if section.checks.is_empty() {
        bail!("no checks to scan");
    }
    cfg.scan = Some(section.clone());

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for &check in &section.checks {
        let out = scan(check, &section.grid, &cfg.quadrature)?;
        reports.extend(out.reports);
        skipped.extend(out.skipped.into_iter().map(|s| (check, s)));
    }
    let violations = reports.iter().filter(|r| !r.satisfied).count();

    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut lines: Vec<Value> = reports.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    for (check, s) in &skipped {
        lines.push(serde_json::to_value(SkipLine { check: *check, skipped: s })?);
    }
    output::write(&dir, "scan.jsonl", &output::jsonl("scan", &cfg, &lines)?)?;
    output::write(&dir, "scan.csv", &output::csv("scan", &cfg, &reports))?;

    match cfg.format {
        Format::Table => {
            println!("{:<18} {:>8} {:>8} {:>11} {:>16}", "check", "cases", "skipped", "violations", "max ratio");
            for &check in &section.checks {
                let mine: Vec<&InequalityReport> = reports.iter().filter(|r| r.name == check).collect();
                let worst = mine.iter().map(|r| r.ratio).fold(0.0, f64::max);
                println!(
                    "{:<18} {:>8} {:>8} {:>11} {:>16.12}",
                    check.as_str(),
                    mine.len(),
                    skipped.iter().filter(|(c, _)| *c == check).count(),
                    mine.iter().filter(|r| !r.satisfied).count(),
                    worst
                );
            }
        }
        _ => print_reports("scan", &cfg, &reports)?,
    }
    Ok(if violations == 0 { 0 } else { VIOLATED })
}

fn cmd_search(mut cfg: RunConfig, args: SearchArgs) -> Result<u8> {
    let mut section = cfg.search.take().unwrap_or_default();
    section.config.seed = cfg.seed;
    if let Some(m) = args.multistarts {
        section.config.multistarts = m;
    }
    if let Some(m) = args.max_iter {
        section.config.max_iter = m;
    }
    if let Some(check) = args.check {
        let params = args.params.resolve()?;
        section.runs = vec![SearchRun {
            check,
            n: args.n.ok_or_else(|| anyhow!("--n is required with --check"))?,
            k: params.k.unwrap_or(1.0),
            mu: params.mu.unwrap_or(1),
            p: params.p,
            alpha: params.alpha,
            beta: params.beta,
        }];
    }
    if section.runs.is_empty() {
        bail!("nothing to search: pass --check and --n or a [[search.runs]] config");
    }
    cfg.search = Some(SearchSection { runs: section.runs.clone(), config: section.config });

    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut records = Vec::new();
    for run in &section.runs {
        let spec = target_family(run.check, run.n, run.k, run.mu)?;
        let fixed = InequalityParams { alpha: run.alpha, beta: run.beta, p: run.p, k: None, mu: None };
        let record = maximize_ratio(run.check, &spec, &fixed, &section.config)?;
        let file = RecordFile { header: output::header("search", &cfg, true), record };
        let name = format!("search-{}-n{}-K{}-mu{}.json", run.check, run.n, run.k, run.mu);
        output::write(&dir, &name, &serde_json::to_string_pretty(&file)?)?;
        records.push(file.record);
    }
    let table = sharpness_report(&records);
    output::write(
        &dir,
        "sharpness.csv",
        &format!("# {}\n{}", output::header("search", &cfg, false), table.to_csv()),
    )?;
    match cfg.format {
        Format::Table => print!("{table}"),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!("{}", serde_json::to_string(&table)?),
    }
    Ok(verdict(!records.iter().any(ExtremalRecord::exceeds_bound)))
}

#[derive(Serialize)]
struct CpRow {
    p: PExponent,
    quadrature: f64,
    closed_form: f64,
    abs_diff: f64,
}

fn cmd_cp_table(cfg: &RunConfig, list: &str) -> Result<u8> {
    let ps: Vec<PExponent> = parse::list(list)?;
    let spec = QuadratureSpec { max_nodes: cfg.quadrature.single.max_nodes, ..QuadratureSpec::default() };
    let mut rows = Vec::with_capacity(ps.len());
    for p in ps {
        if let PExponent::Finite(v) = p {
            if v.is_nan() || v < 1.0 {
                bail!("C_p is tabulated for p >= 1, got {v}");
            }
        }
        let (quadrature, _) = cp_constant_with(p, &spec)?;
        let closed_form = cp_closed_form(p)?;
        rows.push(CpRow { p, quadrature, closed_form, abs_diff: (quadrature - closed_form).abs() });
    }
    match cfg.format {
        Format::Table => {
            println!("{:>6} {:>20} {:>20} {:>10}", "p", "C_p quadrature", "C_p closed form", "abs diff");
            for r in &rows {
                println!("{:>6} {:>20.15} {:>20.15} {:>10.2e}", r.p.to_string(), r.quadrature, r.closed_form, r.abs_diff);
            }
        }
        Format::Csv => {
            println!("p,quadrature,closed_form,abs_diff");
            for r in &rows {
                println!("{},{:e},{:e},{:e}", r.p, r.quadrature, r.closed_form, r.abs_diff);
            }
        }
        Format::Json => print!("{}", output::jsonl("cp-table", cfg, &rows)?),
    }
    Ok(if rows.iter().all(|r| r.abs_diff <= CP_TOL) { 0 } else { 1 })
}

fn cmd_replay(cfg: &RunConfig, path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let record = match serde_json::from_str::<RecordFile>(&text) {
        Ok(file) => file.record,
        Err(_) => serde_json::from_str::<ExtremalRecord>(&text).context("not an extremal record")?,
    };
    let report = replay(&record)?;
    print_reports("replay", cfg, std::slice::from_ref(&report))?;
    let drift = (report.ratio - record.best_ratio).abs();
    if drift > REPLAY_TOL * record.best_ratio.abs().max(f64::MIN_POSITIVE) {
        bail!("replayed ratio {} differs from the recorded {}", report.ratio, record.best_ratio);
    }
    eprintln!("replay matches recorded ratio {} (drift {drift:.1e})", record.best_ratio);
    Ok(verdict(report.satisfied))
}
