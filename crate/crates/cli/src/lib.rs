//! Command-line front end for `knotcount`.
//!
//! [`execute`] runs a parsed [`Cli`] and writes its report to any writer, so
//! the binary and the tests share one code path. Failures map onto fixed
//! exit codes through [`CliError::exit_code`].

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use knotcount::linking::{default_max_n, RecoveryBranch};
use knotcount::moves::{random_perturb, MoveScript};
use knotcount::{
    classify_splitness_evidence, count, is_connected, is_trivial_orbit_quandle, linking_profile,
    make_dihedral, make_trivial, make_xn, orbits, presentation, recover_abs_linking,
    verify_quandle, xn_counts, AxiomViolation, CountClass, CountOptions, Evidence, GaussError,
    HomError, KnotQuandlePresentation, LinkingError, Method, OperationMatrix, Quandle,
    QuandleError, SignedGaussCode, SweepMethod,
};

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const NOT_FOUND: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const COMPONENTS: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Link { path: String, source: GaussError },
    #[error("{0}")]
    Quandle(#[from] QuandleError),
    #[error("{0}")]
    Budget(HomError),
    #[error("{0}")]
    Components(LinkingError),
    #[error("{0}")]
    Linking(LinkingError),
    #[error("{0}")]
    Usage(String),
    #[error("not a quandle")]
    NotAQuandle,
    #[error("output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::NOT_FOUND,
            CliError::Link { .. } | CliError::Quandle(_) => exit::PARSE,
            CliError::Budget(_) => exit::BUDGET,
            CliError::Components(_) => exit::COMPONENTS,
            CliError::Linking(_) | CliError::Usage(_) | CliError::NotAQuandle | CliError::Output(_) => {
                exit::FAILURE
            }
        }
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> Self {
        match e {
            HomError::BudgetExceeded { .. } => CliError::Budget(e),
            HomError::NotAKnot(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<LinkingError> for CliError {
    fn from(e: LinkingError) -> Self {
        match e {
            LinkingError::Hom(h) => h.into(),
            LinkingError::ComponentCount(_) => CliError::Components(e),
            other => CliError::Linking(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "knotcount", version, about = "Quandle counting invariants of virtual links")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "table")]
    pub format: Format,
    /// Omit headers and error messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a quandle and report its orbits.
    Check(QuandleArg),
    /// Print the knot quandle presentation of a link.
    Present(LinkArg),
    /// Virtual and classical linking numbers of a two-component link.
    Linking(LinkArg),
    /// Count colorings of a link by a quandle.
    HomCount(HomCountArgs),
    /// Table of counts against X_n over a range of n.
    Invariants(InvariantsArgs),
    /// Recover |lk| of a two-component link from its X_n counts.
    Recover(RecoverArgs),
    /// Apply random Reidemeister I/II insertions.
    Perturb(PerturbArgs),
}

#[derive(Debug, Args)]
pub struct LinkArg {
    /// Gauss code file, or `-` for stdin.
    #[arg(long)]
    pub link: PathBuf,
}

#[derive(Debug, Args)]
pub struct QuandleArg {
    /// Matrix file, `Xn:k`, `Tn:k` or `Rn:k`.
    #[arg(long)]
    pub quandle: String,
}

#[derive(Debug, Args)]
pub struct HomCountArgs {
    #[arg(long)]
    pub link: PathBuf,
    #[arg(long)]
    pub quandle: String,
    #[arg(long, value_enum, default_value = "propagate")]
    pub method: EngineArg,
    /// Include every coloring in the output.
    #[arg(long)]
    pub list: bool,
    /// Largest number of assignments the oracle may enumerate.
    #[arg(long, default_value_t = knotcount::homcount::DEFAULT_ORACLE_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Oracle,
    Propagate,
}

impl From<EngineArg> for Method {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Oracle => Method::Oracle,
            EngineArg::Propagate => Method::Propagate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Closed,
    Oracle,
    Propagate,
}

impl From<SweepArg> for SweepMethod {
    fn from(m: SweepArg) -> Self {
        match m {
            SweepArg::Closed => SweepMethod::Closed,
            SweepArg::Oracle => SweepMethod::Oracle,
            SweepArg::Propagate => SweepMethod::Propagate,
        }
    }
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub link: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long, default_value_t = 7)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "propagate")]
    pub method: SweepArg,
    #[arg(long, default_value_t = knotcount::homcount::DEFAULT_ORACLE_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[arg(long)]
    pub link: PathBuf,
    /// Largest n tested; defaults to the number of crossings between the
    /// two components (at least 2).
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: SweepArg,
    #[arg(long, default_value_t = knotcount::homcount::DEFAULT_ORACLE_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    #[arg(long)]
    pub link: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of crossings to add.
    #[arg(long, default_value_t = 2)]
    pub budget: usize,
}

pub const MAX_N: u32 = 64;

fn read_input(path: &Path) -> Result<String, CliError> {
    let display = path.display().to_string();
    if display == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: display, source })?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|source| CliError::Io { path: display, source })
}

pub fn load_link(path: &Path) -> Result<SignedGaussCode, CliError> {
    let text = read_input(path)?;
    SignedGaussCode::parse(&text)
        .map_err(|source| CliError::Link { path: path.display().to_string(), source })
}

/// Resolves `Xn:k`, `Tn:k`, `Rn:k` or a matrix file.
pub fn load_quandle(spec: &str) -> Result<Quandle, CliError> {
    if let Some((family, k)) = spec.split_once(':') {
        let builder: Option<fn(usize) -> Result<Quandle, QuandleError>> = match family {
            "Xn" => Some(make_xn),
            "Tn" => Some(make_trivial),
            "Rn" => Some(make_dihedral),
            _ => None,
        };
        if let Some(build) = builder {
            let k: usize = k
                .parse()
                .map_err(|_| CliError::Usage(format!("bad quandle size in {spec:?}")))?;
            return Ok(build(k)?);
        }
    }
    let text = read_input(Path::new(spec))?;
    Ok(verify_quandle(&OperationMatrix::parse(&text)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub valid: bool,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toq: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<AxiomViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingReport {
    pub lk12: i64,
    pub lk21: i64,
    pub lk: knotcount::linking::HalfInteger,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub n: u32,
    pub count: u64,
    pub class: CountClass,
}

impl InvariantRow {
    /// The class is always recomputed from `n` and `count`.
    pub fn new(n: u32, count: u64) -> Self {
        InvariantRow { n, count, class: CountClass::of(n, count) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    pub link: String,
    pub method: SweepMethod,
    pub rows: Vec<InvariantRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverReport {
    pub link: String,
    pub method: SweepMethod,
    pub max_n: u32,
    pub s: Vec<u32>,
    pub s_prime: Vec<u32>,
    pub abs_lk: u64,
    pub branch: RecoveryBranch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcd: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_s_prime: Option<u32>,
    pub classical: bool,
    pub rows: Vec<InvariantRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbReport {
    pub code: String,
    pub script: MoveScript,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn check_quandle(spec: &str) -> Result<CheckReport, CliError> {
    let matrix = match spec.split_once(':') {
        Some((f, _)) if ["Xn", "Tn", "Rn"].contains(&f) => load_quandle(spec)?.matrix().clone(),
        _ => OperationMatrix::parse(&read_input(Path::new(spec))?)?,
    };
    match verify_quandle(&matrix) {
        Ok(q) => Ok(CheckReport {
            valid: true,
            order: q.order(),
            orbits: Some(orbits(&q).orbits),
            connected: Some(is_connected(&q)),
            toq: Some(is_trivial_orbit_quandle(&q)),
            violations: Vec::new(),
        }),
        Err(QuandleError::Axioms(violations)) => Ok(CheckReport {
            valid: false,
            order: matrix.order(),
            orbits: None,
            connected: None,
            toq: None,
            violations,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn invariant_table(
    link: &Path,
    ns: std::ops::RangeInclusive<u32>,
    method: SweepMethod,
    budget: u128,
) -> Result<InvariantTable, CliError> {
    if *ns.start() < 2 || *ns.end() > MAX_N || ns.is_empty() {
        return Err(CliError::Usage(format!(
            "n range {}..{} must lie within 2..{MAX_N}",
            ns.start(),
            ns.end()
        )));
    }
    let code = load_link(link)?;
    let rows = xn_counts(&code, ns, method, budget)?
        .into_iter()
        .map(|(n, c)| InvariantRow::new(n, c))
        .collect();
    Ok(InvariantTable { link: link.display().to_string(), method, rows })
}

pub fn recover(
    link: &Path,
    max_n: Option<u32>,
    method: SweepMethod,
    budget: u128,
) -> Result<RecoverReport, CliError> {
    let code = load_link(link)?;
    if code.component_count() != 2 {
        return Err(LinkingError::ComponentCount(code.component_count()).into());
    }
    let needed = default_max_n(&code);
    let max_n = max_n.unwrap_or(needed);
    if max_n < needed {
        return Err(CliError::Usage(format!(
            "--max-n {max_n} is below the {needed} inter-component crossings of this diagram"
        )));
    }
    if max_n > MAX_N {
        return Err(CliError::Usage(format!("--max-n must be at most {MAX_N}")));
    }
    let counts = xn_counts(&code, 2..=max_n, method, budget)?;
    let map: BTreeMap<u32, u64> = counts.iter().copied().collect();
    let r = recover_abs_linking(&map, max_n)?;
    Ok(RecoverReport {
        link: link.display().to_string(),
        method,
        max_n,
        s: r.s,
        s_prime: r.s_prime,
        abs_lk: r.abs_lk,
        branch: r.branch,
        gcd: r.gcd,
        max_s_prime: r.max_s_prime,
        classical: r.classical,
        rows: counts.into_iter().map(|(n, c)| InvariantRow::new(n, c)).collect(),
    })
}

fn set_string(xs: &[u32]) -> String {
    let parts: Vec<String> = xs.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn write_rows(out: &mut dyn Write, rows: &[InvariantRow], format: Format, quiet: bool) -> io::Result<()> {
    match format {
        Format::Csv => {
            if !quiet {
                writeln!(out, "n,count,class")?;
            }
            for r in rows {
                writeln!(out, "{},{},{}", r.n, r.count, r.class.label())?;
            }
        }
        _ => {
            if !quiet {
                writeln!(out, "{:>3}  {:>8}  class", "n", "count")?;
            }
            for r in rows {
                writeln!(out, "{:>3}  {:>8}  {}", r.n, r.count, r.class.label())?;
            }
        }
    }
    Ok(())
}

fn write_presentation(out: &mut dyn Write, p: &KnotQuandlePresentation, format: Format, quiet: bool) -> io::Result<()> {
    match format {
        Format::Json => out.write_all(to_json(p).as_bytes()),
        Format::Csv => {
            if !quiet {
                writeln!(out, "crossing,under_out,under_in,op,over")?;
            }
            for r in &p.relations {
                let op = if r.sign.is_positive() { "op" } else { "dual" };
                writeln!(out, "{},a{},a{},{op},a{}", r.crossing, r.under_out + 1, r.under_in + 1, r.over + 1)?;
            }
            Ok(())
        }
        Format::Table => write!(out, "{p}"),
    }
}

/// Runs one command, writing its report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (format, quiet) = (cli.format, cli.quiet);
    match &cli.command {
        Command::Check(a) => {
            let report = check_quandle(&a.quandle)?;
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                Format::Csv => {
                    if !quiet {
                        writeln!(out, "valid,order,orbits,connected,toq,violations")?;
                    }
                    let orbit_text = report.orbits.as_ref().map_or(String::new(), |o| {
                        o.iter().map(|x| set_string(x)).collect::<Vec<_>>().join(" ")
                    });
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        report.valid,
                        report.order,
                        orbit_text,
                        report.connected.map_or(String::new(), |b| b.to_string()),
                        report.toq.map_or(String::new(), |b| b.to_string()),
                        report.violations.len()
                    )?;
                }
                Format::Table => {
                    if report.valid {
                        let orbit_text: Vec<String> =
                            report.orbits.as_ref().unwrap().iter().map(|o| set_string(o)).collect();
                        writeln!(
                            out,
                            "quandle: valid; orbits: {}; TOQ: {}",
                            orbit_text.join(","),
                            if report.toq == Some(true) { "yes" } else { "no" }
                        )?;
                    } else {
                        writeln!(out, "quandle: invalid; {} violation(s)", report.violations.len())?;
                        for v in &report.violations {
                            writeln!(out, "  {v}")?;
                        }
                    }
                }
            }
            if !report.valid {
                return Err(CliError::NotAQuandle);
            }
        }
        Command::Present(a) => {
            let code = load_link(&a.link)?;
            write_presentation(out, &presentation(&code), format, quiet)?;
        }
        Command::Linking(a) => {
            let code = load_link(&a.link)?;
            let lp = linking_profile(&code)?;
            let report = LinkingReport {
                lk12: lp.lk_over,
                lk21: lp.lk_under,
                lk: lp.lk_classical,
                evidence: classify_splitness_evidence(&lp),
            };
            let evidence = serde_json::to_value(report.evidence).unwrap();
            let evidence = evidence.as_str().unwrap();
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                Format::Csv => {
                    if !quiet {
                        writeln!(out, "lk12,lk21,lk,evidence")?;
                    }
                    writeln!(out, "{},{},{},{evidence}", report.lk12, report.lk21, report.lk)?;
                }
                Format::Table => {
                    writeln!(out, "lk12: {}", report.lk12)?;
                    writeln!(out, "lk21: {}", report.lk21)?;
                    writeln!(out, "lk: {}", report.lk)?;
                    writeln!(out, "evidence: {evidence}")?;
                }
            }
        }
        Command::HomCount(a) => {
            let code = load_link(&a.link)?;
            let t = load_quandle(&a.quandle)?;
            let opts = CountOptions { list: a.list, budget: a.budget, parallel: true };
            let report = count(&presentation(&code), &t, a.method.into(), &opts)?;
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                Format::Csv => {
                    if !quiet {
                        writeln!(out, "count,method,arcs,target_order")?;
                    }
                    writeln!(out, "{},{},{},{}", report.count, report.method, report.arcs, report.target_order)?;
                }
                Format::Table => {
                    writeln!(
                        out,
                        "count: {} (method {}, {} arcs, target order {})",
                        report.count, report.method, report.arcs, report.target_order
                    )?;
                }
            }
            if format != Format::Json {
                if let Some(list) = &report.colorings {
                    for c in list {
                        let cells: Vec<String> = c.iter().map(u32::to_string).collect();
                        writeln!(out, "{}", cells.join(if format == Format::Csv { "," } else { " " }))?;
                    }
                }
            }
        }
        Command::Invariants(a) => {
            let table = invariant_table(&a.link, a.n_min..=a.n_max, a.method.into(), a.budget)?;
            match format {
                Format::Json => out.write_all(to_json(&table).as_bytes())?,
                _ => {
                    if !quiet && format == Format::Table {
                        writeln!(out, "# {} ({})", table.link, table.method)?;
                    }
                    write_rows(out, &table.rows, format, quiet)?;
                }
            }
        }
        Command::Recover(a) => {
            let report = recover(&a.link, a.max_n, a.method.into(), a.budget)?;
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                Format::Csv => write_rows(out, &report.rows, format, quiet)?,
                Format::Table => {
                    writeln!(out, "|lk|: {}", report.abs_lk)?;
                    writeln!(out, "S: {}", set_string(&report.s))?;
                    writeln!(out, "S': {}", set_string(&report.s_prime))?;
                    writeln!(out, "N: {}", report.max_n)?;
                    if !report.classical {
                        writeln!(out, "note: S' is non-empty, so the diagram is not classical")?;
                    }
                    if !quiet {
                        write_rows(out, &report.rows, format, quiet)?;
                    }
                }
            }
        }
        Command::Perturb(a) => {
            let code = load_link(&a.link)?;
            let (moved, script) = random_perturb(&code, a.seed, a.budget);
            let report = PerturbReport { code: moved.to_string(), script };
            match format {
                Format::Json => out.write_all(to_json(&report).as_bytes())?,
                _ => {
                    out.write_all(report.code.as_bytes())?;
                    if !quiet {
                        for m in &report.script {
                            writeln!(out, "# {}", serde_json::to_string(m).unwrap())?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
