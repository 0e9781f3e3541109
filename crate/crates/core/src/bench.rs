//! Benchmark plumbing shared by the command-line tool and the tests: graph
//! spec strings, method dispatch, experiment suites and CSV/Markdown output.
//!
//! Runs are parallel over (instance, method, repeat) but results are always
//! reported in input order, so the same inputs give byte-identical CSV apart
//! from the `wall_ms` column.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dnc::{dnc_maxcut, DncConfig};
use crate::error::{Error, Result};
use crate::graph::{
    brute_force_maxcut, complete_graph_optimum, generate_complete, generate_erdos_renyi, random_cut_baseline,
    read_edge_list, CutAssignment, Graph,
};
use crate::gw::{gw_maxcut, recommended_rank, solve_relaxation, GwConfig};
use crate::qga::{run_qga_maxcut, IterationMode, QgaConfig};
use crate::qsim::DEFAULT_QUBIT_CAP;
use crate::report::{Method, RunReport};

/// Instances up to this size get a brute-force optimum as their reference.
pub const EXACT_REFERENCE_MAX_VERTICES: usize = 20;

/// Column order of the results CSV.
pub const CSV_COLUMNS: [&str; 10] = [
    "instance",
    "method",
    "seed",
    "value",
    "optimum_or_bound",
    "ratio",
    "qubits",
    "oracle_calls",
    "wall_ms",
    "boundary_weight_lost",
];

/// `complete:n[:w]`, `er:n:p[:seed]` or `file:path`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Complete { n: usize, w: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    File(PathBuf),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Complete { n, w } => generate_complete(*n, *w),
            GraphSpec::ErdosRenyi { n, p, seed } => generate_erdos_renyi(*n, *p, *seed),
            GraphSpec::File(path) => read_edge_list(path),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete { n, w: 1 } => write!(f, "complete:{n}"),
            GraphSpec::Complete { n, w } => write!(f, "complete:{n}:{w}"),
            GraphSpec::ErdosRenyi { n, p, seed } => write!(f, "er:{n}:{p}:{seed}"),
            GraphSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("graph spec {s:?}: {why}"));
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(bad("missing path"));
            }
            return Ok(GraphSpec::File(PathBuf::from(path)));
        }
        let fields: Vec<&str> = s.split(':').collect();
        let int = |t: &str| t.parse::<u64>().map_err(|_| bad(&format!("{t:?} is not a non-negative integer")));
        match fields.as_slice() {
            ["complete", n] => Ok(GraphSpec::Complete { n: int(n)? as usize, w: 1 }),
            ["complete", n, w] => Ok(GraphSpec::Complete { n: int(n)? as usize, w: int(w)? }),
            ["er", n, p, rest @ ..] if rest.len() <= 1 => {
                let p: f64 = p.parse().map_err(|_| bad(&format!("{p:?} is not a probability")))?;
                let seed = rest.first().map(|t| int(t)).transpose()?.unwrap_or(0);
                Ok(GraphSpec::ErdosRenyi { n: int(n)? as usize, p, seed })
            }
            _ => Err(bad("expected complete:n[:w], er:n:p[:seed] or file:path")),
        }
    }
}

/// Knobs shared by every method.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub max_part_size: usize,
    pub qubit_cap: usize,
    pub iteration_mode: IterationMode,
    pub polish: bool,
    /// Hyperplane roundings for `gw`.
    pub gw_trials: usize,
    /// Uniform random cuts for `random`.
    pub random_trials: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_part_size: DncConfig::default().max_part_size,
            qubit_cap: DEFAULT_QUBIT_CAP,
            iteration_mode: IterationMode::default(),
            polish: false,
            gw_trials: GwConfig::default().trials,
            random_trials: 64,
        }
    }
}

impl SolverOptions {
    pub fn qga_config(&self, seed: u64) -> QgaConfig {
        QgaConfig { seed, iteration_mode: self.iteration_mode, qubit_cap: self.qubit_cap, ..QgaConfig::default() }
    }

    pub fn dnc_config(&self, seed: u64) -> DncConfig {
        DncConfig {
            max_part_size: self.max_part_size,
            polish: self.polish,
            seed,
            qga: self.qga_config(seed),
            ..DncConfig::default()
        }
    }
}

/// Runs one method once.
pub fn run_method(method: Method, g: &Graph, seed: u64, opts: &SolverOptions) -> Result<RunReport> {
    match method {
        Method::Qga => run_qga_maxcut(g, &opts.qga_config(seed)),
        Method::Dnc => dnc_maxcut(g, &opts.dnc_config(seed)),
        Method::Gw => gw_maxcut(g, &GwConfig { trials: opts.gw_trials, seed, ..GwConfig::default() }),
        Method::Brute => {
            let (a, _) = brute_force_maxcut(g)?;
            RunReport::new(Method::Brute, g, a, seed)
        }
        Method::Random => {
            let (a, _) = random_cut_baseline(g, opts.random_trials, seed)?;
            let mut r = RunReport::new(Method::Random, g, a, seed)?;
            r.measurements = opts.random_trials as u64;
            Ok(r)
        }
    }
}

/// How an instance's reference value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Known optimum: closed form for complete graphs, brute force when small.
    Exact,
    /// Relaxed objective of the vector embedding, rounded down. An upper
    /// bound when the ascent reaches the relaxation's optimum.
    Relaxation,
}

/// A named graph with the value ratios are measured against.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub reference: u64,
    pub reference_kind: ReferenceKind,
}

impl Instance {
    pub fn new(spec: &GraphSpec) -> Result<Self> {
        let graph = spec.build()?;
        let (reference, reference_kind) = match spec {
            GraphSpec::Complete { n, w } => (complete_graph_optimum(*n as u64, *w), ReferenceKind::Exact),
            _ if graph.num_vertices() <= EXACT_REFERENCE_MAX_VERTICES => {
                (brute_force_maxcut(&graph)?.1, ReferenceKind::Exact)
            }
            _ => {
                let d = GwConfig::default();
                let e = solve_relaxation(&graph, recommended_rank(graph.num_vertices()), d.max_iters, d.tol, 0)?;
                (e.objective.floor() as u64, ReferenceKind::Relaxation)
            }
        };
        Ok(Instance { name: spec.to_string(), graph, reference, reference_kind })
    }
}

/// One line of the results CSV. The assignment goes to the sidecar file so
/// every value can be recomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub instance: String,
    pub method: Method,
    pub seed: u64,
    pub value: u64,
    pub optimum_or_bound: u64,
    pub qubits: usize,
    pub oracle_calls: u64,
    pub wall_ms: u64,
    pub boundary_weight_lost: u64,
    pub assignment: CutAssignment,
}

impl Row {
    pub fn from_report(inst: &Instance, r: &RunReport) -> Self {
        Row {
            instance: inst.name.clone(),
            method: r.method,
            seed: r.seed,
            value: r.best_value,
            optimum_or_bound: inst.reference,
            qubits: r.qubits_used,
            oracle_calls: r.oracle_calls,
            wall_ms: r.wall_ms,
            boundary_weight_lost: r.boundary_weight_lost,
            assignment: r.assignment.clone(),
        }
    }

    pub fn ratio(&self) -> f64 {
        ratio(self.value, self.optimum_or_bound)
    }
}

fn ratio(value: u64, reference: u64) -> f64 {
    if reference == 0 {
        if value == 0 { 1.0 } else { f64::INFINITY }
    } else {
        value as f64 / reference as f64
    }
}

/// Runs every method on every instance for seeds `seed..seed + repeats`.
/// Rows come back ordered by instance, then method, then seed.
pub fn run_rows(
    instances: &[Instance],
    methods: &[Method],
    seed: u64,
    repeats: usize,
    opts: &SolverOptions,
) -> Result<Vec<Row>> {
    if repeats == 0 {
        return Err(Error::invalid("repeats must be at least 1"));
    }
    let jobs: Vec<(&Instance, Method, u64)> = instances
        .iter()
        .flat_map(|inst| {
            methods
                .iter()
                .flat_map(move |&m| (0..repeats as u64).map(move |r| (inst, m, seed.wrapping_add(r))))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(inst, m, s)| Ok(Row::from_report(inst, &run_method(m, &inst.graph, s, opts)?)))
        .collect()
}

/// Lower-middle element for even counts.
pub fn median(values: &[u64]) -> Option<u64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.get(v.len().checked_sub(1)? / 2).copied()
}

/// Per-instance summary of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    pub reference: u64,
    pub reference_kind: ReferenceKind,
    pub dnc_median: u64,
    pub dnc_best: u64,
    /// Median over the same seeds.
    pub gw: u64,
}

impl SummaryRow {
    pub fn dnc_vs_reference(&self) -> f64 {
        ratio(self.dnc_median, self.reference)
    }

    pub fn gw_vs_reference(&self) -> f64 {
        ratio(self.gw, self.reference)
    }

    /// Median divide-and-conquer value over GW-style value.
    pub fn median_vs_gw(&self) -> f64 {
        ratio(self.dnc_median, self.gw)
    }

    pub fn best_vs_gw(&self) -> f64 {
        ratio(self.dnc_best, self.gw)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub rows: Vec<Row>,
    pub summary: Vec<SummaryRow>,
}

/// `dnc` and `gw` on every instance with seeds `seed..seed + repeats`.
pub fn run_suite(specs: &[GraphSpec], repeats: usize, seed: u64, opts: &SolverOptions) -> Result<SuiteReport> {
    let instances: Vec<Instance> = specs.par_iter().map(Instance::new).collect::<Result<_>>()?;
    let rows = run_rows(&instances, &[Method::Dnc, Method::Gw], seed, repeats, opts)?;
    let summary = instances
        .iter()
        .map(|inst| {
            let values = |m: Method| -> Vec<u64> {
                rows.iter().filter(|r| r.instance == inst.name && r.method == m).map(|r| r.value).collect()
            };
            let dnc = values(Method::Dnc);
            SummaryRow {
                instance: inst.name.clone(),
                vertices: inst.graph.num_vertices(),
                edges: inst.graph.num_edges(),
                reference: inst.reference,
                reference_kind: inst.reference_kind,
                dnc_median: median(&dnc).expect("repeats >= 1"),
                dnc_best: *dnc.iter().max().expect("repeats >= 1"),
                gw: median(&values(Method::Gw)).expect("repeats >= 1"),
            }
        })
        .collect();
    Ok(SuiteReport { rows, summary })
}

/// Complete graphs `K_n`, whose optimum is `⌊n²/4⌋`.
pub fn suite_complete(ns: &[usize], repeats: usize, seed: u64, opts: &SolverOptions) -> Result<SuiteReport> {
    let specs: Vec<GraphSpec> = ns.iter().map(|&n| GraphSpec::Complete { n, w: 1 }).collect();
    run_suite(&specs, repeats, seed, opts)
}

/// Erdős–Rényi instances `(n, p, instance seed)`.
pub fn suite_er(instances: &[(usize, f64, u64)], repeats: usize, seed: u64, opts: &SolverOptions) -> Result<SuiteReport> {
    let specs: Vec<GraphSpec> =
        instances.iter().map(|&(n, p, s)| GraphSpec::ErdosRenyi { n, p, seed: s }).collect();
    run_suite(&specs, repeats, seed, opts)
}

pub fn write_rows_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.method.to_string(),
            r.seed.to_string(),
            r.value.to_string(),
            r.optimum_or_bound.to_string(),
            format!("{:.4}", r.ratio()),
            r.qubits.to_string(),
            r.oracle_calls.to_string(),
            r.wall_ms.to_string(),
            r.boundary_weight_lost.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Sidecar with one assignment per row, vertex 0 first.
pub fn write_assignments_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance", "method", "seed", "value", "assignment"])?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.method.to_string(),
            r.seed.to_string(),
            r.value.to_string(),
            r.assignment.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parsed sidecar entry.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentRecord {
    pub instance: String,
    pub method: Method,
    pub seed: u64,
    pub value: u64,
    pub assignment: CutAssignment,
}

pub fn read_assignments_csv<R: std::io::Read>(input: R) -> Result<Vec<AssignmentRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |k: usize| rec.get(k).ok_or(Error::Parse { line, message: format!("missing column {k}") });
        let parse_err = |message: String| Error::Parse { line, message };
        out.push(AssignmentRecord {
            instance: field(0)?.to_string(),
            method: field(1)?.parse().map_err(|e: Error| parse_err(e.to_string()))?,
            seed: field(2)?.parse().map_err(|_| parse_err("bad seed".into()))?,
            value: field(3)?.parse().map_err(|_| parse_err("bad value".into()))?,
            assignment: field(4)?.parse().map_err(|e: Error| parse_err(e.to_string()))?,
        });
    }
    Ok(out)
}

pub fn rows_markdown(rows: &[Row]) -> String {
    let mut s = String::from(
        "| instance | method | seed | value | optimum_or_bound | ratio | qubits | oracle_calls | wall_ms | boundary_weight_lost |\n\
         |---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n",
    );
    for r in rows {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {:.4} | {} | {} | {} | {} |",
            r.instance,
            r.method,
            r.seed,
            r.value,
            r.optimum_or_bound,
            r.ratio(),
            r.qubits,
            r.oracle_calls,
            r.wall_ms,
            r.boundary_weight_lost
        );
    }
    s
}

pub fn summary_markdown(summary: &[SummaryRow]) -> String {
    let mut s = String::from(
        "| instance | V | E | reference | dnc median | dnc best | gw | dnc/ref | gw/ref | median/gw | best/gw |\n\
         |---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n",
    );
    for r in summary {
        let mark = match r.reference_kind {
            ReferenceKind::Exact => "",
            ReferenceKind::Relaxation => " (relaxation)",
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {}{} | {} | {} | {} | {:.4} | {:.4} | {:.4} | {:.4} |",
            r.instance,
            r.vertices,
            r.edges,
            r.reference,
            mark,
            r.dnc_median,
            r.dnc_best,
            r.gw,
            r.dnc_vs_reference(),
            r.gw_vs_reference(),
            r.median_vs_gw(),
            r.best_vs_gw()
        );
    }
    s
}
