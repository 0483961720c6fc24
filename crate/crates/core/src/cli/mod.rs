//! Command implementations behind the `torsion-units` binary.
//!
//! Every command returns its full output as a string together with an exit
//! code, so the binary only prints. Exit codes: 0 success, 1 computational
//! failure, 2 bad input.

mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::arith::divisors;
use crate::chartab::{load_table, validate, CharacterTable, ChartabError};
use crate::method::{
    candidate_orders, prime_graph_compare, processing_order, solve_order, CharSelector, MethodError, OrderOutcome,
    PrimeGraphReport, SolutionStore, SolveOptions, Verdict,
};
use crate::solver::{count, enumerate, load_system, SolverError, DEFAULT_LIMIT};

pub use report::{OrderTiming, RunOptions, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn at_order(k: u64, e: MethodError) -> Self {
        match CliError::from(e) {
            CliError::Input(m) => CliError::Input(format!("order {k}: {m}")),
            CliError::Compute(m) => CliError::Compute(format!("order {k}: {m}")),
        }
    }
}

impl From<ChartabError> for CliError {
    fn from(e: ChartabError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Parse(_) | SolverError::UnknownVariable(_) => CliError::Input(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<MethodError> for CliError {
    fn from(e: MethodError) -> Self {
        match e {
            MethodError::Solver(s) => s.into(),
            MethodError::MissingScenarioOrder(_) => CliError::Compute(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a command prints to stdout and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "torsion-units", version, about = "Partial-augmentation constraints for torsion units")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a character table document
    Validate {
        table: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Admissible partial augmentations for one unit order
    Solve(SolveArgs),
    /// Every candidate order of a table, in divisor order
    Run(RunArgs),
    /// Solve or count a raw integer system
    Raw {
        #[command(subcommand)]
        command: RawCommand,
    },
    /// Compare the prime graphs of the group and of its torsion units
    Graph {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub table: PathBuf,
    /// restrict to named rows, `id` ordinary or `id@p` Brauer
    #[arg(long)]
    pub chars: Option<String>,
    /// drop scenarios whose trivial parts disagree with the power maps
    #[arg(long)]
    pub prune_power: bool,
    /// bound every partial augmentation to [-N, N]
    #[arg(long)]
    pub max_abs: Option<i64>,
    /// solutions per scenario before giving up
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: usize,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub order: u64,
    /// run report supplying solutions for divisor orders
    #[arg(long)]
    pub artifact: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// write the JSON run report here
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// record wall-clock time per order
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum RawCommand {
    Solve {
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    Count {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate { table, format } => cmd_validate(table, *format),
        Command::Solve(a) => cmd_solve(a),
        Command::Run(a) => cmd_run(a).map(|(_, out)| out),
        Command::Raw { command } => cmd_raw(command),
        Command::Graph { table, artifact, format } => cmd_graph(table, artifact, *format),
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Input("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Compute(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn cmd_validate(path: &Path, format: Format) -> Result<Output, CliError> {
    let table = load_table(path)?;
    let rep = validate(&table);
    let code = if rep.is_clean() { 0 } else { 2 };
    let text = match format {
        Format::Json => to_json(&serde_json::json!({
            "group": table.group,
            "classes": table.classes.len(),
            "ordinary_rows": table.ordinary.len(),
            "brauer_rows": table.brauer.iter().map(|(p, b)| (p.to_string(), b.rows.len())).collect::<std::collections::BTreeMap<_, _>>(),
            "clean": rep.is_clean(),
            "issues": rep.issues,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group {}: {} classes, {} ordinary rows", table.group, table.classes.len(), table.ordinary.len());
            for (p, b) in &table.brauer {
                let _ = writeln!(s, "  {p}-modular: {} rows on {} classes", b.rows.len(), b.classes.len());
            }
            for issue in &rep.issues {
                let _ = writeln!(s, "{issue}");
            }
            let errors = rep.errors().count();
            let _ = writeln!(s, "{}", if errors == 0 { "clean".to_string() } else { format!("{errors} errors") });
            s
        }
    };
    Ok(Output { text, code })
}

fn solve_options(a: &CommonArgs) -> Result<SolveOptions, CliError> {
    let selection = match &a.chars {
        Some(spec) => CharSelector::parse(spec)?,
        None => CharSelector::All,
    };
    Ok(SolveOptions { selection, prune_power: a.prune_power, max_abs: a.max_abs, limit: a.limit, explain: true })
}

/// Fill `store` for every proper divisor order of `k` that it lacks.
fn fill_divisors(table: &CharacterTable, k: u64, store: &mut SolutionStore, opts: &SolveOptions) -> Result<(), CliError> {
    let divs: Vec<u64> = divisors(k).into_iter().filter(|&m| m > 1 && m < k).collect();
    for m in processing_order(&divs) {
        if store.get(m).is_none() {
            let out = solve_order(table, m, store, opts).map_err(|e| CliError::at_order(m, e))?;
            store.insert(m, out.solutions);
        }
    }
    Ok(())
}

fn tuple(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn outcome_text(o: &OrderOutcome) -> String {
    let mut s = String::new();
    let _ = write!(s, "order {} over {}: ", o.order, tuple_names(&o.classes));
    if !o.killed_by_power.is_empty() {
        let m: Vec<String> = o.killed_by_power.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(s, "no solutions, no units of order {}", m.join(", "));
        return s;
    }
    let _ = writeln!(s, "{} solutions ({} trivial, {} nontrivial)", o.solutions.len(), o.trivial, o.nontrivial);
    for p in &o.solutions {
        let _ = writeln!(s, "  {}", tuple(&p.values));
    }
    for (i, labels) in o.killed_by.iter().enumerate() {
        let l: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(s, "  scenario {i} killed by {}", l.join(", "));
    }
    s
}

fn tuple_names(classes: &[String]) -> String {
    format!("({})", classes.join(", "))
}

pub fn cmd_solve(a: &SolveArgs) -> Result<Output, CliError> {
    let table = load_table(&a.common.table)?;
    let opts = solve_options(&a.common)?;
    let mut store = match &a.artifact {
        Some(p) => RunReport::load(p)?.store(),
        None => SolutionStore::new(),
    };
    let out = with_pool(a.common.jobs, || -> Result<OrderOutcome, CliError> {
        fill_divisors(&table, a.order, &mut store, &opts)?;
        solve_order(&table, a.order, &store, &opts).map_err(|e| CliError::at_order(a.order, e))
    })??;
    Ok(Output::ok(match a.common.format {
        Format::Json => to_json(&out),
        Format::Text => outcome_text(&out),
    }))
}

/// Solve every candidate order and assemble the run report.
pub fn cmd_run(a: &RunArgs) -> Result<(RunReport, Output), CliError> {
    let table = load_table(&a.common.table)?;
    let opts = solve_options(&a.common)?;
    let orders = processing_order(&candidate_orders(&table));
    let report = with_pool(a.common.jobs, || -> Result<RunReport, CliError> {
        let mut store = SolutionStore::new();
        let mut outcomes = Vec::new();
        let mut timings = Vec::new();
        for &k in &orders {
            let start = Instant::now();
            fill_divisors(&table, k, &mut store, &opts)?;
            let out = solve_order(&table, k, &store, &opts).map_err(|e| CliError::at_order(k, e))?;
            timings.push(OrderTiming { order: k, millis: start.elapsed().as_secs_f64() * 1e3 });
            store.insert(k, out.solutions.clone());
            outcomes.push(out);
        }
        Ok(RunReport {
            group: table.group.clone(),
            options: RunOptions { chars: a.common.chars.clone(), prune_power: a.common.prune_power, max_abs: a.common.max_abs },
            processing_order: orders.clone(),
            killed_orders: outcomes.iter().filter(|o| o.solutions.is_empty()).map(|o| o.order).collect(),
            prime_graph: Some(prime_graph_compare(&table, &store)?),
            orders: outcomes,
            timings: a.timings.then_some(timings),
        })
    })??;
    if let Some(path) = &a.out {
        std::fs::write(path, to_json(&report)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let text = match a.common.format {
        Format::Json => to_json(&report),
        Format::Text => run_text(&report),
    };
    Ok((report, Output::ok(text)))
}

fn run_text(r: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group {}", r.group);
    for o in &r.orders {
        s.push_str(&outcome_text(o));
    }
    let killed: Vec<String> = r.killed_orders.iter().map(|k| k.to_string()).collect();
    let killed = if killed.is_empty() { "none".to_string() } else { killed.join(", ") };
    let _ = writeln!(s, "no units of orders: {killed}");
    if let Some(g) = &r.prime_graph {
        s.push_str(&graph_text(g));
    }
    if let Some(t) = &r.timings {
        for t in t {
            let _ = writeln!(s, "time order {}: {:.1} ms", t.order, t.millis);
        }
    }
    s
}

fn edges(e: &[(u64, u64)]) -> String {
    let v: Vec<String> = e.iter().map(|(p, q)| format!("{p}-{q}")).collect();
    v.join(" ")
}

fn graph_text(g: &PrimeGraphReport) -> String {
    let primes: Vec<String> = g.primes.iter().map(|p| p.to_string()).collect();
    let verdict = match g.verdict {
        Verdict::Equal => "EQUAL".to_string(),
        Verdict::Extra => format!("EXTRA {}", edges(&g.extra_edges)),
    };
    format!(
        "primes: {}\ngroup edges: {}\nunit edges: {}\nverdict: {verdict}\n",
        primes.join(" "),
        edges(&g.group_edges),
        edges(&g.unit_edges)
    )
}

pub fn cmd_graph(table: &Path, artifact: &Path, format: Format) -> Result<Output, CliError> {
    let table = load_table(table)?;
    let store = RunReport::load(artifact)?.store();
    let g = prime_graph_compare(&table, &store)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&g),
        Format::Text => graph_text(&g),
    }))
}

pub fn cmd_raw(cmd: &RawCommand) -> Result<Output, CliError> {
    match cmd {
        RawCommand::Solve { system, limit, jobs, format } => {
            let sys = load_system(system)?;
            let sols = with_pool(*jobs, || enumerate(&sys, *limit))??;
            Ok(Output::ok(match format {
                Format::Json => to_json(&serde_json::json!({ "variables": sys.variables, "solutions": sols })),
                Format::Text => {
                    let mut s = format!("{}: {} solutions\n", tuple_names(&sys.variables), sols.len());
                    for x in &sols {
                        let _ = writeln!(s, "  {}", tuple(x));
                    }
                    s
                }
            }))
        }
        RawCommand::Count { system, format } => {
            let n = count(&load_system(system)?)?;
            Ok(Output::ok(match format {
                Format::Json => to_json(&serde_json::json!({ "count": n.to_string() })),
                Format::Text => format!("{n}\n"),
            }))
        }
    }
}

impl RunReport {
    pub fn load(path: &Path) -> Result<RunReport, CliError> {
        serde_json::from_str(&read_to_string(path)?)
            .map_err(|e| CliError::Input(format!("{}: bad run report: {e}", path.display())))
    }
}
