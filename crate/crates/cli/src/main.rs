//! `qga-bench`: generate instances, run solvers, reproduce the benchmark
//! suites and evaluate qubit budgets.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 when a register would
//! exceed the qubit cap.

mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qga_maxcut::bench::{
    rows_markdown, run_rows, run_suite, summary_markdown, write_assignments_csv, write_rows_csv, GraphSpec, Instance,
    Row, SolverOptions,
};
use qga_maxcut::budget::{qubit_bound, qubit_budget};
use qga_maxcut::objective::PairObjective;
use qga_maxcut::qga::{IterationMode, RegisterLayout};
use qga_maxcut::report::Method;

use config::{SuiteFile, SuiteKind};

#[derive(Parser, Debug)]
#[command(name = "qga-bench", version, about = "MaxCut with a simulated Grover-based genetic algorithm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph in edge-list format.
    Gen(GenArgs),
    /// Run one method on one graph.
    Run(RunArgs),
    /// Run a benchmark suite (dnc and gw on every instance).
    Bench(BenchArgs),
    /// Evaluate the qubit-count formulas.
    Budget(BudgetArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// `complete:n[:w]`, `er:n:p[:seed]` or `file:path`
    #[arg(long)]
    graph: GraphSpec,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Qga,
    Dnc,
    Gw,
    Brute,
    Random,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Qga => Method::Qga,
            MethodArg::Dnc => Method::Dnc,
            MethodArg::Gw => Method::Gw,
            MethodArg::Brute => Method::Brute,
            MethodArg::Random => Method::Random,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Paper,
    Adaptive,
}

impl From<ModeArg> for IterationMode {
    fn from(m: ModeArg) -> IterationMode {
        match m {
            ModeArg::Paper => IterationMode::PaperFixed,
            ModeArg::Adaptive => IterationMode::Adaptive,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Csv,
    Md,
}

#[derive(Args, Debug, Default)]
struct SolverArgs {
    /// Largest part the divide-and-conquer solver hands to the QGA [default: 8]
    #[arg(long)]
    max_part_size: Option<usize>,
    /// Largest register the simulator may allocate [default: 26]
    #[arg(long)]
    qubit_cap: Option<usize>,
    /// Grover iteration schedule [default: adaptive]
    #[arg(long, value_enum)]
    iteration_mode: Option<ModeArg>,
    /// Finish divide-and-conquer runs with single-vertex local search.
    #[arg(long)]
    polish: bool,
}

impl SolverArgs {
    fn options(&self, file: &SuiteFile) -> Result<SolverOptions, CliError> {
        let mut o = SolverOptions::default();
        if let Some(v) = self.max_part_size.or(file.max_part_size) {
            o.max_part_size = v;
        }
        if let Some(v) = self.qubit_cap.or(file.qubit_cap) {
            o.qubit_cap = v;
        }
        if let Some(m) = self.iteration_mode {
            o.iteration_mode = m.into();
        } else if let Some(m) = &file.iteration_mode {
            o.iteration_mode = m.parse().map_err(|e| CliError::Usage(format!("config: {e}")))?;
        }
        o.polish = self.polish || file.polish.unwrap_or(false);
        Ok(o)
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file. CSV output also writes `<stem>.assignments.csv` next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    /// `complete:n[:w]`, `er:n:p[:seed]` or `file:path`
    #[arg(long)]
    graph: GraphSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// complete: K_n for n in --n; er: Erdős–Rényi instances
    #[arg(long, value_enum)]
    suite: Option<SuiteKind>,
    /// TOML file with suite settings; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Vertex counts for the complete suite [default: 3,5,8,12]
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Instances for the er suite (repeatable) [default: er:16:0.5:0, er:32:0.5:0, er:50:0.5:0]
    #[arg(long)]
    graph: Vec<GraphSpec>,
    /// Seeds per instance [default: 5]
    #[arg(long)]
    repeats: Option<usize>,
    /// First seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// |V| in f(|V|, n, M, m)
    #[arg(long)]
    vertices: Option<u64>,
    /// Qubits per vertex
    #[arg(long, default_value_t = 1)]
    n_bits: u64,
    /// Fitness register width M
    #[arg(long)]
    fitness_bits: Option<u64>,
    /// Grover iterations m
    #[arg(long)]
    iters: Option<u64>,
    /// Also evaluate the complete-graph bound g(n) for this n.
    #[arg(long)]
    bound: Option<u64>,
    /// Report the register the simulator would allocate for this graph.
    #[arg(long)]
    graph: Option<GraphSpec>,
    #[arg(long, default_value_t = qga_maxcut::qsim::DEFAULT_QUBIT_CAP)]
    qubit_cap: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Capacity(String),
    Failed(String),
}

impl From<qga_maxcut::Error> for CliError {
    fn from(e: qga_maxcut::Error) -> Self {
        match e {
            e if e.is_capacity() => CliError::Capacity(e.to_string()),
            e @ (qga_maxcut::Error::InvalidArgument(_) | qga_maxcut::Error::Parse { .. }) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Bench(a) => bench(a),
        Command::Budget(a) => budget(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(1)
        }
        Err(CliError::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn gen(a: GenArgs) -> Result<(), CliError> {
    let text = a.graph.build()?.to_edge_list();
    match a.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(a: RunArgs) -> Result<(), CliError> {
    let opts = a.solver.options(&SuiteFile::default())?;
    let inst = Instance::new(&a.graph)?;
    let rows = run_rows(&[inst], &[a.method.into()], a.seed, a.repeats, &opts)?;
    emit(&rows, None, &a.output)
}

fn bench(a: BenchArgs) -> Result<(), CliError> {
    let file = match &a.config {
        Some(path) => SuiteFile::load(path)?,
        None => SuiteFile::default(),
    };
    let kind = a
        .suite
        .or(file.suite)
        .ok_or_else(|| CliError::Usage("bench needs --suite or a config file with `suite`".into()))?;
    let specs: Vec<GraphSpec> = match kind {
        SuiteKind::Complete => {
            let ns = if !a.n.is_empty() { a.n.clone() } else { file.complete.clone().unwrap_or(vec![3, 5, 8, 12]) };
            ns.into_iter().map(|n| GraphSpec::Complete { n, w: 1 }).collect()
        }
        SuiteKind::Er => {
            if !a.graph.is_empty() {
                a.graph.clone()
            } else if let Some(specs) = file.er_specs()? {
                specs
            } else {
                [16, 32, 50].into_iter().map(|n| GraphSpec::ErdosRenyi { n, p: 0.5, seed: 0 }).collect()
            }
        }
    };
    let opts = a.solver.options(&file)?;
    let repeats = a.repeats.or(file.repeats).unwrap_or(5);
    let seed = a.seed.or(file.seed).unwrap_or(0);
    let report = run_suite(&specs, repeats, seed, &opts)?;
    emit(&report.rows, Some(&summary_markdown(&report.summary)), &a.output)
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("assignments.csv")
}

/// Writes rows in the requested format. With `--out` the summary (or the
/// rows, for `run`) is also echoed to stdout as Markdown.
fn emit(rows: &[Row], summary: Option<&str>, out: &OutputArgs) -> Result<(), CliError> {
    let markdown = || match summary {
        Some(s) => format!("{s}\n{}", rows_markdown(rows)),
        None => rows_markdown(rows),
    };
    match (&out.out, out.format) {
        (Some(path), Format::Csv) => {
            write_rows_csv(rows, fs::File::create(path)?)?;
            write_assignments_csv(rows, fs::File::create(sidecar_path(path))?)?;
            print!("{}", summary.map_or_else(|| rows_markdown(rows), str::to_string));
        }
        (Some(path), Format::Md) => {
            let text = markdown();
            fs::write(path, &text)?;
            print!("{text}");
        }
        (None, Format::Csv) => write_rows_csv(rows, io::stdout().lock())?,
        (None, Format::Md) => print!("{}", markdown()),
    }
    Ok(())
}

fn budget(a: BudgetArgs) -> Result<(), CliError> {
    let mut printed = false;
    match (a.vertices, a.fitness_bits, a.iters) {
        (Some(v), Some(m), Some(it)) => {
            let b = qubit_budget(v, a.n_bits, m, it);
            println!("{b}");
            printed = true;
        }
        (None, None, None) => {}
        _ => return Err(CliError::Usage("--vertices, --fitness-bits and --iters go together".into())),
    }
    if let Some(n) = a.bound {
        let g = qubit_bound(n);
        let note = if g.exact { "" } else { " (fractional exponent, rounded up)" };
        println!("g({n}) = {}{note}", g.value);
        printed = true;
    }
    if let Some(spec) = &a.graph {
        let graph = spec.build()?;
        let layout = RegisterLayout::for_objective(&PairObjective::from_graph(&graph));
        let m = layout.fitness_bits();
        println!(
            "{spec}: individual {} + xor 1 + fitness {m} + threshold {m} + carry-in 1 + carry-out 1 + flag 1 = {} qubits (cap {})",
            graph.num_vertices(),
            layout.num_qubits,
            a.qubit_cap
        );
        layout.check_cap(a.qubit_cap)?;
        printed = true;
    }
    if !printed {
        return Err(CliError::Usage("nothing to evaluate; pass --vertices/--fitness-bits/--iters, --bound or --graph".into()));
    }
    Ok(())
}
