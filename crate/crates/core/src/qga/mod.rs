//! Grover-based quantum genetic algorithm.
//!
//! The whole population lives in one register: a uniform superposition over
//! every assignment, entangled with a fitness register by `U_fit`. Each round
//! marks the individuals whose fitness beats the current threshold, amplifies
//! them, samples, and raises the threshold to the best value seen. Rounds stop
//! once `stagnation_limit` in a row bring no improvement. The first round
//! measures the unamplified superposition to seed the threshold.
//!
//! One Grover iteration is `oracle → U_fit⁻¹ → diffusion → U_fit`. The
//! fitness register is uncomputed around the diffusion so that the reflection
//! acts on a disentangled individual register, which keeps the standard
//! amplitude-amplification law exact.

mod fitness;
mod grover;
mod layout;

use std::time::Instant;

use rand::RngCore;

pub use fitness::{build_fitness_circuit, build_objective_fitness, FitnessCircuit};
pub use grover::{
    apply_diffusion, apply_oracle, diffusion_program, grover_iterations, oracle_program, fixed_iterations,
    IterationMode, IterationSchedule,
};
pub use layout::{build_layout, fitness_bits, RegisterLayout};

use crate::error::Result;
use crate::graph::{CutAssignment, Graph};
use crate::objective::PairObjective;
use crate::qsim::{Backend, QuantumState, DEFAULT_QUBIT_CAP};
use crate::report::{Method, RunReport};
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct QgaConfig {
    pub max_rounds: usize,
    /// Consecutive rounds without improvement before stopping.
    pub stagnation_limit: usize,
    pub shots_per_round: usize,
    pub iteration_mode: IterationMode,
    pub seed: u64,
    pub backend: Backend,
    pub qubit_cap: usize,
}

impl Default for QgaConfig {
    fn default() -> Self {
        QgaConfig {
            max_rounds: 40,
            stagnation_limit: 3,
            shots_per_round: 32,
            iteration_mode: IterationMode::Adaptive,
            seed: 0,
            backend: Backend::Sparse,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

impl QgaConfig {
    fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 || self.stagnation_limit == 0 || self.shots_per_round == 0 {
            return Err(crate::Error::invalid(
                "max_rounds, stagnation_limit and shots_per_round must be >= 1",
            ));
        }
        Ok(())
    }
}

/// What happened in one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace {
    /// Threshold the oracle marked against.
    pub threshold: u64,
    pub iterations: u64,
    /// Probability mass on individuals above the threshold just before sampling.
    pub marked_probability: f64,
    pub best_sampled: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QgaOutcome {
    pub bits: Vec<bool>,
    pub value: u64,
    pub rounds: Vec<RoundTrace>,
    pub oracle_calls: u64,
    pub measurements: u64,
    pub qubits: usize,
}

/// Maximizes a pair objective with the QGA.
pub fn run_qga(obj: &PairObjective, cfg: &QgaConfig) -> Result<QgaOutcome> {
    cfg.validate()?;
    let layout = RegisterLayout::for_objective(obj);
    layout.check_cap(cfg.qubit_cap)?;
    let fitness = build_objective_fitness(obj, &layout)?.program;
    let unfitness = fitness.inverse();
    let diffusion = diffusion_program(layout.individual.clone());
    let mask = layout.individual_mask();
    let n = obj.num_vars();

    let mut rng = rng::seeded(cfg.seed);
    let mut schedule = IterationSchedule::new(cfg.iteration_mode, layout.fitness_bits(), n);
    // Anything at or below half the total weight is reachable by a random
    // guess, so only strictly better individuals are ever marked.
    let mut threshold = obj.half_total();
    let mut best: Option<(u64, u64)> = None;
    let mut stagnant = 0;
    let mut rounds = Vec::new();
    let (mut oracle_calls, mut measurements) = (0u64, 0u64);

    for round in 0..cfg.max_rounds {
        // Round 0 samples the initial population without amplification. With
        // the threshold at half the total, often more than a quarter of all
        // individuals are marked and a single Grover iteration overshoots
        // them (K3 marks 6 of 8 and one iteration leaves probability 0).
        let r = if round == 0 { 0 } else { schedule.next(&mut rng) };
        let oracle = oracle_program(&layout, threshold)?;
        let mut state = QuantumState::allocate_with(layout.num_qubits, cfg.backend, cfg.qubit_cap)?;
        state.apply_h_range(layout.individual.clone())?;
        state.run(&fitness)?;
        for _ in 0..r {
            state.run(&oracle)?;
            state.run(&unfitness)?;
            debug_assert!(state.register_is_zero(layout.xor_ancilla..layout.num_qubits));
            state.run(&diffusion)?;
            state.run(&fitness)?;
        }
        let marked_probability = state.probability_where(|i| obj.value_of_index(i & mask) > threshold);
        let shots = state.measure(rng.next_u64(), cfg.shots_per_round)?;
        oracle_calls += r;
        measurements += shots.len() as u64;

        let mut round_best: Option<(u64, u64)> = None;
        for idx in shots {
            let u = idx & mask;
            let complement = !u & mask;
            let (v, vc) = (obj.value_of_index(u), obj.value_of_index(complement));
            let cand = if vc > v { (complement, vc) } else { (u, v) };
            if round_best.is_none_or(|(_, b)| cand.1 > b) {
                round_best = Some(cand);
            }
        }
        let round_best = round_best.expect("at least one shot");
        rounds.push(RoundTrace { threshold, iterations: r, marked_probability, best_sampled: round_best.1 });

        if best.is_none_or(|(_, b)| round_best.1 > b) {
            best = Some(round_best);
            stagnant = 0;
            schedule.on_improvement();
        } else {
            stagnant += 1;
            schedule.on_stagnation();
        }
        threshold = threshold.max(best.expect("set above").1);
        if stagnant >= cfg.stagnation_limit {
            break;
        }
    }

    let (index, value) = best.expect("max_rounds >= 1");
    Ok(QgaOutcome {
        bits: (0..n).map(|i| (index >> i) & 1 == 1).collect(),
        value,
        rounds,
        oracle_calls,
        measurements,
        qubits: layout.num_qubits,
    })
}

/// Runs the QGA on MaxCut for `g` and reports the best cut found.
pub fn run_qga_maxcut(g: &Graph, cfg: &QgaConfig) -> Result<RunReport> {
    let start = Instant::now();
    let out = run_qga(&PairObjective::from_graph(g), cfg)?;
    let mut report = RunReport::new(Method::Qga, g, CutAssignment::new(out.bits), cfg.seed)?;
    debug_assert_eq!(report.best_value, out.value);
    report.oracle_calls = out.oracle_calls;
    report.measurements = out.measurements;
    report.qubits_used = out.qubits;
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_maxcut, generate_complete, generate_erdos_renyi};

    #[test]
    fn small_examples() {
        let cfg = QgaConfig::default();
        let k3 = generate_complete(3, 1).unwrap();
        assert_eq!(run_qga_maxcut(&k3, &cfg).unwrap().best_value, 2);
        let edge = Graph::new(2, [(0, 1, 1)]).unwrap();
        assert_eq!(run_qga_maxcut(&edge, &cfg).unwrap().best_value, 1);
        let single = Graph::new(1, []).unwrap();
        assert_eq!(run_qga_maxcut(&single, &cfg).unwrap().best_value, 0);
    }

    #[test]
    fn matches_brute_force_on_er6() {
        for seed in 0..20 {
            let g = generate_erdos_renyi(6, 0.5, seed).unwrap();
            let cfg = QgaConfig { seed, ..QgaConfig::default() };
            let report = run_qga_maxcut(&g, &cfg).unwrap();
            report.verify(&g).unwrap();
            assert_eq!(report.best_value, brute_force_maxcut(&g).unwrap().1, "seed {seed}");
        }
    }

    #[test]
    fn threshold_never_decreases() {
        let g = generate_erdos_renyi(7, 0.6, 4).unwrap();
        let out = run_qga(&PairObjective::from_graph(&g), &QgaConfig { seed: 3, ..Default::default() }).unwrap();
        assert!(out.rounds.windows(2).all(|w| w[0].threshold <= w[1].threshold));
        assert_eq!(out.oracle_calls, out.rounds.iter().map(|r| r.iterations).sum::<u64>());
        assert_eq!(out.measurements, 32 * out.rounds.len() as u64);
    }

    #[test]
    fn dense_and_sparse_runs_agree() {
        let g = generate_erdos_renyi(5, 0.6, 8).unwrap();
        let sparse = run_qga(&PairObjective::from_graph(&g), &QgaConfig { seed: 5, ..Default::default() }).unwrap();
        let dense = run_qga(
            &PairObjective::from_graph(&g),
            &QgaConfig { seed: 5, backend: Backend::Dense, ..Default::default() },
        )
        .unwrap();
        assert_eq!(sparse.bits, dense.bits);
        assert_eq!(sparse.rounds.len(), dense.rounds.len());
        for (a, b) in sparse.rounds.iter().zip(&dense.rounds) {
            assert_eq!((a.threshold, a.iterations, a.best_sampled), (b.threshold, b.iterations, b.best_sampled));
            assert!((a.marked_probability - b.marked_probability).abs() < 1e-10);
        }
    }

    #[test]
    fn paper_fixed_mode_runs() {
        let g = generate_complete(5, 1).unwrap();
        let cfg = QgaConfig { iteration_mode: IterationMode::PaperFixed, ..Default::default() };
        let out = run_qga(&PairObjective::from_graph(&g), &cfg).unwrap();
        // |E| = 10 -> M = 4 -> r = ⌊π/4·√8⌋ = 2
        assert_eq!(out.rounds[0].iterations, 0);
        assert!(out.rounds[1..].iter().all(|r| r.iterations == 2));
        assert_eq!(out.value, 6);
    }

    #[test]
    fn capacity_is_checked_before_allocation() {
        let g = generate_complete(12, 1).unwrap();
        assert!(run_qga_maxcut(&g, &QgaConfig::default()).unwrap_err().is_capacity());
        let small = generate_complete(4, 1).unwrap();
        let cfg = QgaConfig { qubit_cap: 10, ..Default::default() };
        assert!(run_qga_maxcut(&small, &cfg).unwrap_err().is_capacity());
    }

    #[test]
    fn rejects_degenerate_config() {
        let g = generate_complete(3, 1).unwrap();
        let cfg = QgaConfig { shots_per_round: 0, ..Default::default() };
        assert!(run_qga_maxcut(&g, &cfg).is_err());
    }
}
