use std::fmt;

use crate::error::{Error, Result};

/// Primitive gates. Every variant is its own inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    X(usize),
    H(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Ccx { c1: usize, c2: usize, target: usize },
    /// Multi-controlled X. With no controls it is a plain X.
    Mcx { controls: Vec<usize>, target: usize },
    /// Negates amplitudes of basis states where every listed qubit is 1.
    /// A single qubit gives Z; several give a multi-controlled Z.
    PhaseFlip(Vec<usize>),
}

impl Gate {
    fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X(t) | Gate::H(t) | Gate::Z(t) => vec![*t],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Ccx { c1, c2, target } => vec![*c1, *c2, *target],
            Gate::Mcx { controls, target } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
            Gate::PhaseFlip(qs) => qs.clone(),
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&bad) = qs.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::invalid(format!(
                "{self} touches qubit {bad}, state has {num_qubits}"
            )));
        }
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != qs.len() {
            return Err(Error::invalid(format!("{self} repeats a qubit")));
        }
        Ok(())
    }

    /// For gates that permute basis states: `(control_mask, target_bit)` such
    /// that index `i` maps to `i ^ target_bit` when `i & control_mask == control_mask`.
    pub(crate) fn as_permutation(&self) -> Option<(u64, u64)> {
        let bit = |q: usize| 1u64 << q;
        match self {
            Gate::X(t) => Some((0, bit(*t))),
            Gate::Cnot { control, target } => Some((bit(*control), bit(*target))),
            Gate::Ccx { c1, c2, target } => Some((bit(*c1) | bit(*c2), bit(*target))),
            Gate::Mcx { controls, target } => {
                Some((controls.iter().fold(0, |m, &c| m | bit(c)), bit(*target)))
            }
            Gate::H(_) | Gate::Z(_) | Gate::PhaseFlip(_) => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::X(t) => write!(f, "X({t})"),
            Gate::H(t) => write!(f, "H({t})"),
            Gate::Z(t) => write!(f, "Z({t})"),
            Gate::Cnot { control, target } => write!(f, "CNOT({control}->{target})"),
            Gate::Ccx { c1, c2, target } => write!(f, "CCX({c1},{c2}->{target})"),
            Gate::Mcx { controls, target } => write!(f, "MCX({controls:?}->{target})"),
            Gate::PhaseFlip(qs) => write!(f, "PHASEFLIP({qs:?})"),
        }
    }
}

/// An ordered gate list. Since each primitive is self-inverse, the inverse
/// program is the same gates in reverse order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircuitProgram {
    gates: Vec<Gate>,
}

impl CircuitProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn x(&mut self, t: usize) -> &mut Self {
        self.push(Gate::X(t))
    }

    pub fn h(&mut self, t: usize) -> &mut Self {
        self.push(Gate::H(t))
    }

    pub fn z(&mut self, t: usize) -> &mut Self {
        self.push(Gate::Z(t))
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Gate::Cnot { control, target })
    }

    pub fn ccx(&mut self, c1: usize, c2: usize, target: usize) -> &mut Self {
        self.push(Gate::Ccx { c1, c2, target })
    }

    pub fn mcx(&mut self, controls: Vec<usize>, target: usize) -> &mut Self {
        self.push(Gate::Mcx { controls, target })
    }

    pub fn append(&mut self, other: &CircuitProgram) -> &mut Self {
        self.gates.extend_from_slice(&other.gates);
        self
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn inverse(&self) -> CircuitProgram {
        CircuitProgram { gates: self.gates.iter().rev().cloned().collect() }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(num_qubits))
    }
}

impl FromIterator<Gate> for CircuitProgram {
    fn from_iter<T: IntoIterator<Item = Gate>>(iter: T) -> Self {
        CircuitProgram { gates: iter.into_iter().collect() }
    }
}
