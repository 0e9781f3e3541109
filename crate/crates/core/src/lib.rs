//! MaxCut with a Grover-based quantum genetic algorithm, run on a classical
//! state-vector simulator.
//!
//! The whole population of cuts lives in one quantum register. A reversible
//! fitness circuit writes each cut's value next to it, an oracle built from a
//! ripple-carry comparator marks the cuts that beat the current threshold, and
//! amplitude amplification makes them likely to be sampled. Graphs larger than
//! the simulator can hold are split into parts, solved part by part, and
//! stitched back together by choosing which parts to flip.
//!
//! | Module | Contents |
//! |---|---|
//! | [`graph`] | graphs, cuts, generators, edge-list I/O, exact and random baselines |
//! | [`qsim`] | gates, circuits and the dense/sparse state-vector simulator |
//! | [`qarith`] | ripple-carry adder, controlled increment, comparator |
//! | [`qga`] | register layout, fitness circuit, oracle, diffusion and the search loop |
//! | [`dnc`] | partitioning, contraction to a meta-graph, recursive solving |
//! | [`gw`] | low-rank relaxation with hyperplane rounding |
//! | [`bench`](mod@bench) | graph specs, method dispatch, suites and CSV/Markdown output |
//! | [`budget`] | closed-form qubit counts |
//!
//! ```
//! use qga_maxcut::dnc::{dnc_maxcut, DncConfig};
//! use qga_maxcut::graph::generate_complete;
//!
//! // K12 needs 30 qubits in one register, so it is split into two parts of 6.
//! let k12 = generate_complete(12, 1)?;
//! let report = dnc_maxcut(&k12, &DncConfig::default())?;
//! assert_eq!(report.best_value, 36);
//! # Ok::<(), qga_maxcut::Error>(())
//! ```
//!
//! Every randomized routine takes an explicit `u64` seed and is reproducible.
//! See the guide in `book/` for a walk through each layer.

pub mod bench;
pub mod budget;
pub mod dnc;
pub mod error;
pub mod graph;
pub mod gw;
pub mod objective;
pub mod qarith;
pub mod qga;
pub mod qsim;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
