use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::PairObjective;
use crate::qarith::build_controlled_increment;
use crate::qsim::CircuitProgram;

use super::layout::{fitness_bits, RegisterLayout};

/// `U_fit: |u⟩|0⟩ → |u⟩|f(u)⟩` on a [`RegisterLayout`].
#[derive(Debug, Clone)]
pub struct FitnessCircuit {
    pub program: CircuitProgram,
    pub layout: RegisterLayout,
    /// Largest value the fitness register can be asked to hold.
    pub max_value: u64,
}

/// Fitness circuit for MaxCut on `g`: per edge, XOR the endpoint bits into
/// the ancilla, add the edge weight to the fitness register under control of
/// the ancilla, and XOR again to clear the ancilla.
pub fn build_fitness_circuit(g: &Graph, layout: &RegisterLayout) -> Result<FitnessCircuit> {
    build_objective_fitness(&PairObjective::from_graph(g), layout)
}

/// Fitness circuit for a general pair objective. A term adds `diff` while the
/// XOR ancilla is 1 and `same` while it is 0 (by conjugating with X).
pub fn build_objective_fitness(obj: &PairObjective, layout: &RegisterLayout) -> Result<FitnessCircuit> {
    if layout.individual.len() != obj.num_vars() {
        return Err(Error::invalid(format!(
            "layout has {} individual qubits, objective has {} variables",
            layout.individual.len(),
            obj.num_vars()
        )));
    }
    let max_value = obj.max_value_bound();
    if layout.fitness_bits() < fitness_bits(max_value) {
        return Err(Error::invalid(format!(
            "fitness register of {} bits cannot hold {max_value}",
            layout.fitness_bits()
        )));
    }
    let x = layout.xor_ancilla;
    let q = |v: usize| layout.individual.start + v;
    let mut p = CircuitProgram::new();
    for t in obj.terms() {
        p.cnot(q(t.a), x).cnot(q(t.b), x);
        if t.diff > 0 {
            p.append(&build_controlled_increment(x, layout.fitness.clone(), t.diff)?);
        }
        if t.same > 0 {
            p.x(x);
            p.append(&build_controlled_increment(x, layout.fitness.clone(), t.same)?);
            p.x(x);
        }
        p.cnot(q(t.a), x).cnot(q(t.b), x);
    }
    Ok(FitnessCircuit { program: p, layout: layout.clone(), max_value })
}
