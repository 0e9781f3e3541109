//! Divide-and-conquer MaxCut.
//!
//! Graphs too large for one QGA register are split into parts of at most
//! `max_part_size` vertices. Each part is solved on its internal edges alone,
//! then the parts are contracted into a [`MetaGraph`] whose vertices decide
//! whether to flip their part's local solution. The meta problem is solved
//! exactly when small, by recursion when it is itself too large, and by the
//! QGA otherwise. The final cut is recomputed on the original graph.

mod meta;
mod partition;

use std::time::Instant;

use rayon::prelude::*;

pub use meta::{assemble, contract, MetaGraph, MetaPair};
pub use partition::{partition_graph, partition_objective, BoundaryEdge, Partition, REFINE_SWEEPS};

use crate::error::{Error, Result};
use crate::graph::{cut_value, local_search_improve, CutAssignment, Graph};
use crate::objective::PairObjective;
use crate::qga::{run_qga, run_qga_maxcut, QgaConfig, RegisterLayout};
use crate::report::{LevelStats, Method, RunReport};
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct DncConfig {
    pub max_part_size: usize,
    /// Meta problems with at most this many parts are solved by enumeration.
    pub meta_brute_limit: usize,
    /// Steepest-ascent single-vertex moves on the assembled cut.
    pub polish: bool,
    pub seed: u64,
    /// Settings for every QGA call. Its `seed` is ignored; each call gets a
    /// seed derived from `seed` above and its position in the recursion.
    pub qga: QgaConfig,
}

impl Default for DncConfig {
    fn default() -> Self {
        DncConfig { max_part_size: 8, meta_brute_limit: 20, polish: false, seed: 0, qga: QgaConfig::default() }
    }
}

/// One contraction step, kept for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelTrace {
    pub depth: usize,
    pub partition: Partition,
    pub meta: MetaGraph,
    pub flips: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DncOutcome {
    pub report: RunReport,
    /// Contraction steps sorted by depth; empty when the graph was solved directly.
    pub trace: Vec<LevelTrace>,
}

#[derive(Debug, Default)]
struct Stats {
    oracle_calls: u64,
    measurements: u64,
    qubits: usize,
    trace: Vec<LevelTrace>,
}

impl Stats {
    fn absorb(&mut self, other: Stats) {
        self.oracle_calls += other.oracle_calls;
        self.measurements += other.measurements;
        self.qubits = self.qubits.max(other.qubits);
        self.trace.extend(other.trace);
    }
}

/// Solves one part on its internal terms: enumeration for at most two
/// variables, the QGA otherwise.
fn solve_leaf(obj: &PairObjective, cfg: &DncConfig, seed: u64) -> Result<(Vec<bool>, u64, Stats)> {
    if obj.num_vars() <= 2 {
        let (bits, value) = obj.solve_exact(2)?;
        return Ok((bits, value, Stats::default()));
    }
    let out = run_qga(obj, &QgaConfig { seed, ..cfg.qga.clone() })?;
    let stats = Stats { oracle_calls: out.oracle_calls, measurements: out.measurements, qubits: out.qubits, trace: vec![] };
    Ok((out.bits, out.value, stats))
}

/// Solves a part of a graph; the part's own edges are all that count.
pub fn solve_part(sub: &Graph, cfg: &DncConfig) -> Result<(CutAssignment, u64)> {
    let (bits, value, _) = solve_leaf(&PairObjective::from_graph(sub), cfg, cfg.seed)?;
    Ok((CutAssignment::new(bits), value))
}

/// Flip per part maximizing [`MetaGraph::value`].
pub fn solve_meta(m: &MetaGraph, cfg: &DncConfig) -> Result<Vec<bool>> {
    let mut stats = Stats::default();
    solve_meta_inner(m, cfg, 1, cfg.seed, &mut stats)
}

fn solve_meta_inner(m: &MetaGraph, cfg: &DncConfig, depth: usize, seed: u64, stats: &mut Stats) -> Result<Vec<bool>> {
    let obj = m.to_objective();
    if m.num_parts <= cfg.meta_brute_limit {
        return Ok(obj.solve_exact(cfg.meta_brute_limit)?.0);
    }
    if m.num_parts > cfg.max_part_size {
        return divide(&obj, cfg, depth, seed, stats);
    }
    let (bits, _, s) = solve_leaf(&obj, cfg, seed)?;
    stats.absorb(s);
    Ok(bits)
}

/// Partition, solve parts in parallel, contract, solve the meta problem and
/// assemble.
fn divide(obj: &PairObjective, cfg: &DncConfig, depth: usize, seed: u64, stats: &mut Stats) -> Result<Vec<bool>> {
    let p = partition_objective(obj, cfg.max_part_size, derive_seed(seed, 0))?;
    let solved: Vec<(Vec<bool>, u64, Stats)> = (0..p.num_parts())
        .into_par_iter()
        .map(|i| solve_leaf(&p.part_objective(i)?, cfg, derive_seed(seed, i as u64 + 1)))
        .collect::<Result<_>>()?;
    let mut solutions = Vec::with_capacity(solved.len());
    for (bits, _, s) in solved {
        solutions.push(CutAssignment::new(bits));
        stats.absorb(s);
    }
    let m = contract(&p, &solutions)?;
    let flips = solve_meta_inner(&m, cfg, depth + 1, derive_seed(seed, p.num_parts() as u64 + 1), stats)?;
    let bits = assemble(&p, &solutions, &flips).bits().to_vec();
    debug_assert_eq!(obj.value(&bits), m.value(&flips));
    stats.trace.push(LevelTrace { depth, partition: p, meta: m, flips });
    Ok(bits)
}

/// Divide-and-conquer run with its contraction trace.
///
/// Graphs with at most `max_part_size` vertices whose register fits the qubit
/// cap go straight to the QGA.
pub fn dnc_solve(g: &Graph, cfg: &DncConfig) -> Result<DncOutcome> {
    if cfg.max_part_size < 2 {
        return Err(Error::invalid(format!("max part size {} < 2", cfg.max_part_size)));
    }
    let start = Instant::now();
    let obj = PairObjective::from_graph(g);
    if g.num_vertices() <= cfg.max_part_size && RegisterLayout::for_objective(&obj).check_cap(cfg.qga.qubit_cap).is_ok() {
        let mut report = run_qga_maxcut(g, &QgaConfig { seed: cfg.seed, ..cfg.qga.clone() })?;
        report.method = Method::Dnc;
        return Ok(DncOutcome { report, trace: vec![] });
    }

    let mut stats = Stats::default();
    let bits = if g.num_vertices() <= cfg.max_part_size {
        // Small but over the cap: let the QGA report the capacity error.
        let (bits, _, s) = solve_leaf(&obj, cfg, cfg.seed)?;
        stats.absorb(s);
        bits
    } else {
        divide(&obj, cfg, 0, cfg.seed, &mut stats)?
    };
    let mut assignment = CutAssignment::new(bits);
    if cfg.polish {
        assignment = local_search_improve(g, &assignment)?;
    }
    stats.trace.sort_by_key(|t| t.depth);

    let mut report = RunReport::new(Method::Dnc, g, assignment, cfg.seed)?;
    report.oracle_calls = stats.oracle_calls;
    report.measurements = stats.measurements;
    report.qubits_used = stats.qubits;
    report.levels = stats
        .trace
        .iter()
        .map(|t| LevelStats {
            depth: t.depth,
            num_vars: t.partition.parts.iter().map(Vec::len).sum(),
            num_parts: t.partition.num_parts(),
            local_value: t.meta.local_total(),
            boundary_weight: t.partition.boundary_weight(),
        })
        .collect();
    if let Some(top) = stats.trace.first() {
        report.boundary_weight_lost = top
            .partition
            .boundary_edges
            .iter()
            .filter(|e| report.assignment.get(e.term.a) == report.assignment.get(e.term.b))
            .map(|e| e.term.diff)
            .sum();
    }
    debug_assert_eq!(report.best_value, cut_value(g, &report.assignment)?);
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(DncOutcome { report, trace: stats.trace })
}

pub fn dnc_maxcut(g: &Graph, cfg: &DncConfig) -> Result<RunReport> {
    Ok(dnc_solve(g, cfg)?.report)
}
