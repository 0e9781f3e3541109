use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qarith::build_compare_greater;
use crate::qsim::{CircuitProgram, QuantumState};

use super::layout::RegisterLayout;

/// Phase oracle: negates components whose fitness register exceeds
/// `threshold`. Compare into the flag, Z on the flag, compare again to clear it.
pub fn oracle_program(layout: &RegisterLayout, threshold: u64) -> Result<CircuitProgram> {
    let compare = build_compare_greater(
        layout.fitness.clone(),
        layout.threshold.clone(),
        threshold,
        layout.flag,
        (layout.carry_in, layout.carry_out),
    )?;
    let mut p = compare.clone();
    p.z(layout.flag);
    p.append(&compare);
    Ok(p)
}

/// Runs the oracle after checking that its scratch qubits are clean.
pub fn apply_oracle(state: &mut QuantumState, layout: &RegisterLayout, threshold: u64) -> Result<()> {
    let scratch = layout.threshold.start..layout.flag + 1;
    if !state.register_is_zero(scratch) {
        return Err(Error::PreconditionViolation(
            "threshold, carry and flag qubits must be |0⟩ before the oracle".into(),
        ));
    }
    state.run(&oracle_program(layout, threshold)?)
}

/// `2|s⟩⟨s| − I` on `range`, where `|s⟩` is the uniform superposition.
///
/// H and X on every qubit turn the all-zero state into all-ones, which a
/// multi-controlled X conjugated by H on the last qubit phase-flips. Undoing
/// X and H gives `I − 2|s⟩⟨s|`; the closing Z·X·Z·X on one qubit equals −I
/// and fixes the overall sign.
pub fn diffusion_program(range: Range<usize>) -> CircuitProgram {
    let qubits: Vec<usize> = range.collect();
    let mut p = CircuitProgram::new();
    let Some((&last, rest)) = qubits.split_last() else {
        return p;
    };
    for &q in &qubits {
        p.h(q);
    }
    for &q in &qubits {
        p.x(q);
    }
    p.h(last);
    p.mcx(rest.to_vec(), last);
    p.h(last);
    for &q in &qubits {
        p.x(q);
    }
    for &q in &qubits {
        p.h(q);
    }
    let q0 = qubits[0];
    p.x(q0).z(q0).x(q0).z(q0);
    p
}

pub fn apply_diffusion(state: &mut QuantumState, range: Range<usize>) -> Result<()> {
    state.run(&diffusion_program(range))
}

/// `max(1, ⌊(π/4)·√(2^(M−1))⌋)`: one search over a fitness space of `2^M`
/// values with two symmetric optima.
pub fn fixed_iterations(fitness_bits: usize) -> u64 {
    let n = 2f64.powi(fitness_bits.saturating_sub(1) as i32);
    ((std::f64::consts::FRAC_PI_4 * n.sqrt()).floor() as u64).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IterationMode {
    /// Always [`fixed_iterations`].
    PaperFixed,
    /// Random count in `1..=r_max`, doubling `r_max` after each round that
    /// finds nothing better and resetting it after an improvement. This is the
    /// standard schedule when the number of marked states is unknown.
    #[default]
    Adaptive,
}

impl fmt::Display for IterationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IterationMode::PaperFixed => "paper",
            IterationMode::Adaptive => "adaptive",
        })
    }
}

impl FromStr for IterationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper_fixed" => Ok(IterationMode::PaperFixed),
            "adaptive" => Ok(IterationMode::Adaptive),
            other => Err(Error::invalid(format!("unknown iteration mode {other:?}"))),
        }
    }
}

/// Grover iteration count for the mode. Adaptive mode returns its starting
/// ceiling; use [`IterationSchedule`] for the per-round draw.
pub fn grover_iterations(fitness_bits: usize, mode: IterationMode) -> u64 {
    match mode {
        IterationMode::PaperFixed => fixed_iterations(fitness_bits),
        IterationMode::Adaptive => 1,
    }
}

/// Per-round iteration counts for one QGA run.
#[derive(Debug, Clone)]
pub struct IterationSchedule {
    mode: IterationMode,
    fixed: u64,
    r_max: u64,
    ceiling: u64,
}

impl IterationSchedule {
    pub fn new(mode: IterationMode, fitness_bits: usize, individual_bits: usize) -> Self {
        let space = 2f64.powi(individual_bits as i32);
        let ceiling = ((std::f64::consts::FRAC_PI_4 * space.sqrt()).floor() as u64).max(1);
        IterationSchedule { mode, fixed: fixed_iterations(fitness_bits), r_max: 1, ceiling }
    }

    pub fn next<R: Rng>(&self, rng: &mut R) -> u64 {
        match self.mode {
            IterationMode::PaperFixed => self.fixed,
            IterationMode::Adaptive => rng.random_range(1..=self.r_max),
        }
    }

    pub fn on_improvement(&mut self) {
        self.r_max = 1;
    }

    pub fn on_stagnation(&mut self) {
        self.r_max = (self.r_max * 2).min(self.ceiling);
    }

    pub fn r_max(&self) -> u64 {
        self.r_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_value, generate_complete, CutAssignment};
    use crate::objective::PairObjective;
    use crate::qga::fitness::build_objective_fitness;
    use crate::qsim::testutil::{assert_close, assert_normalized};
    use crate::qsim::{Backend, Gate};
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(fixed_iterations(3), 1);
        assert_eq!(fixed_iterations(5), 3);
        assert_eq!(fixed_iterations(1), 1);
        assert_eq!(grover_iterations(5, IterationMode::PaperFixed), 3);
    }

    #[test]
    fn adaptive_schedule_doubles_and_resets() {
        let mut s = IterationSchedule::new(IterationMode::Adaptive, 4, 6);
        let mut rng = crate::rng::seeded(0);
        assert_eq!(s.next(&mut rng), 1);
        s.on_stagnation();
        s.on_stagnation();
        assert_eq!(s.r_max(), 4);
        for _ in 0..50 {
            assert!((1..=4).contains(&s.next(&mut rng)));
        }
        for _ in 0..10 {
            s.on_stagnation();
        }
        assert_eq!(s.r_max(), 6, "capped at ⌊π/4·√64⌋");
        s.on_improvement();
        assert_eq!(s.r_max(), 1);
    }

    #[test]
    fn diffusion_examples() {
        let d = diffusion_program(0..2);
        let mut s = QuantumState::allocate(2).unwrap();
        s.run(&d).unwrap();
        assert_close(&s.to_dense(), &[c(-0.5), c(0.5), c(0.5), c(0.5)], 1e-12);

        let mut u = QuantumState::allocate(3).unwrap();
        u.apply_h_range(0..3).unwrap();
        let before = u.to_dense();
        u.run(&diffusion_program(0..3)).unwrap();
        assert_close(&u.to_dense(), &before, 1e-10);

        let mut v = QuantumState::basis(3, 5, Backend::Dense, 26).unwrap();
        v.apply(&Gate::H(1)).unwrap();
        let before = v.to_dense();
        apply_diffusion(&mut v, 0..3).unwrap();
        apply_diffusion(&mut v, 0..3).unwrap();
        assert_close(&v.to_dense(), &before, 1e-10);
        assert_normalized(&v);
    }

    #[test]
    fn diffusion_matches_matrix() {
        // Compare against 2|s⟩⟨s| − I applied directly, on an asymmetric input.
        let n = 3;
        let dim = 1 << n;
        let input: Vec<Complex64> = (0..dim).map(|i| Complex64::new(i as f64 + 1.0, 0.5 * i as f64)).collect();
        let norm = input.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let input: Vec<Complex64> = input.iter().map(|a| a / norm).collect();
        let mean: Complex64 = input.iter().sum::<Complex64>() / dim as f64;
        let expected: Vec<Complex64> = input.iter().map(|a| 2.0 * mean - a).collect();
        let mut s = QuantumState::from_amplitudes(n, input).unwrap();
        apply_diffusion(&mut s, 0..n).unwrap();
        assert_close(&s.to_dense(), &expected, 1e-12);
    }

    #[test]
    fn single_qubit_diffusion_is_x() {
        let mut s = QuantumState::allocate(1).unwrap();
        apply_diffusion(&mut s, 0..1).unwrap();
        assert_close(&s.to_dense(), &[c(0.0), c(1.0)], 1e-12);
    }

    fn prepared(obj: &PairObjective, individual: u64) -> (QuantumState, RegisterLayout) {
        let layout = RegisterLayout::for_objective(obj);
        let fc = build_objective_fitness(obj, &layout).unwrap();
        let mut s = QuantumState::basis(layout.num_qubits, individual, Backend::Sparse, 64).unwrap();
        s.run(&fc.program).unwrap();
        (s, layout)
    }

    #[test]
    fn oracle_on_basis_states() {
        // Fitness 5 against T = 3 and T = 5, via a single weighted edge.
        let g = crate::graph::Graph::new(2, [(0, 1, 5)]).unwrap();
        let obj = PairObjective::from_graph(&g);
        let (s, layout) = prepared(&obj, 0b01);
        let mut hit = s.clone();
        apply_oracle(&mut hit, &layout, 3).unwrap();
        assert!((hit.inner(&s).re + 1.0).abs() < 1e-12, "f=5 > 3 must be negated");
        let mut miss = s.clone();
        apply_oracle(&mut miss, &layout, 5).unwrap();
        assert!((miss.inner(&s).re - 1.0).abs() < 1e-12, "f=5 is not > 5");
        assert!(miss.register_is_zero(layout.threshold.start..layout.flag + 1));
    }

    #[test]
    fn oracle_marks_triangle_cuts() {
        let g = generate_complete(3, 1).unwrap();
        let obj = PairObjective::from_graph(&g);
        let layout = RegisterLayout::for_objective(&obj);
        let fc = build_objective_fitness(&obj, &layout).unwrap();
        let mut s = QuantumState::allocate_with(layout.num_qubits, Backend::Dense, 26).unwrap();
        s.apply_h_range(layout.individual.clone()).unwrap();
        s.run(&fc.program).unwrap();
        apply_oracle(&mut s, &layout, 1).unwrap();
        let mut negated = 0;
        for (idx, amp) in s.entries() {
            let u = idx & layout.individual_mask();
            let cut = cut_value(&g, &CutAssignment::from_index(3, u)).unwrap();
            assert_eq!(amp.re < 0.0, cut > 1, "u={u:03b}");
            negated += (amp.re < 0.0) as usize;
        }
        assert_eq!(negated, 6);
    }

    #[test]
    fn oracle_rejects_dirty_scratch() {
        let g = generate_complete(3, 1).unwrap();
        let obj = PairObjective::from_graph(&g);
        let layout = RegisterLayout::for_objective(&obj);
        let mut s = QuantumState::basis(layout.num_qubits, 1 << layout.threshold.start, Backend::Sparse, 64).unwrap();
        assert!(matches!(apply_oracle(&mut s, &layout, 1), Err(Error::PreconditionViolation(_))));
    }
}
