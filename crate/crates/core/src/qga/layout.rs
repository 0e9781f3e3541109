use std::ops::Range;

use crate::budget::qubit_budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::PairObjective;

use super::grover::fixed_iterations;

/// Qubit assignment for one QGA circuit, in allocation order:
/// individual, xor ancilla, fitness, threshold, carry-in, carry-out, flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    /// One qubit per vertex; qubit `i` is vertex `i`.
    pub individual: Range<usize>,
    pub xor_ancilla: usize,
    pub fitness: Range<usize>,
    pub threshold: Range<usize>,
    pub carry_in: usize,
    pub carry_out: usize,
    pub flag: usize,
    pub num_qubits: usize,
}

/// `⌈log₂(max_value + 1)⌉`, at least 1.
pub fn fitness_bits(max_value: u64) -> usize {
    (64 - max_value.leading_zeros() as usize).max(1)
}

impl RegisterLayout {
    /// Layout for `vars` individual qubits and a fitness register wide enough
    /// for `max_value`.
    pub fn new(vars: usize, max_value: u64) -> Self {
        let m = fitness_bits(max_value);
        let xor_ancilla = vars;
        let fitness = vars + 1..vars + 1 + m;
        let threshold = fitness.end..fitness.end + m;
        let carry_in = threshold.end;
        RegisterLayout {
            individual: 0..vars,
            xor_ancilla,
            fitness,
            threshold,
            carry_in,
            carry_out: carry_in + 1,
            flag: carry_in + 2,
            num_qubits: carry_in + 3,
        }
    }

    pub fn for_objective(obj: &PairObjective) -> Self {
        Self::new(obj.num_vars(), obj.max_value_bound())
    }

    pub fn fitness_bits(&self) -> usize {
        self.fitness.len()
    }

    /// Mask selecting the individual register bits of a basis index.
    pub fn individual_mask(&self) -> u64 {
        crate::qsim::range_mask(&self.individual)
    }

    /// Refuses layouts over `cap` before anything is allocated.
    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.num_qubits <= cap {
            return Ok(());
        }
        let v = self.individual.len();
        let m = self.fitness_bits();
        let paper = qubit_budget(v as u64, 1, m as u64, fixed_iterations(m));
        Err(Error::CapacityExceeded {
            what: "qubits",
            required: self.num_qubits,
            available: cap,
            detail: format!(
                "; layout individual {v} + xor 1 + fitness {m} + threshold {m} + carry-in 1 + carry-out 1 + flag 1 = {}, short by {}; {paper}",
                self.num_qubits,
                self.num_qubits - cap
            ),
        })
    }
}

/// Layout for MaxCut on `g`, refused when it needs more than `cap` qubits.
pub fn build_layout(g: &Graph, cap: usize) -> Result<RegisterLayout> {
    let layout = RegisterLayout::for_objective(&PairObjective::from_graph(g));
    layout.check_cap(cap)?;
    Ok(layout)
}
