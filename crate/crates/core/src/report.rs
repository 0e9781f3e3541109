use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{cut_value, CutAssignment, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Qga,
    Dnc,
    Gw,
    Brute,
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Qga, Method::Dnc, Method::Gw, Method::Brute, Method::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Qga => "qga",
            Method::Dnc => "dnc",
            Method::Gw => "gw",
            Method::Brute => "brute",
            Method::Random => "random",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown method {s:?}")))
    }
}

/// One contraction level of a divide-and-conquer run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub depth: usize,
    /// Variables at this level (vertices at depth 0, parts below).
    pub num_vars: usize,
    pub num_parts: usize,
    /// Σ of the parts' optimized internal values.
    pub local_value: u64,
    /// Weight of boundary terms (`same + diff`) at risk at this level.
    pub boundary_weight: u64,
}

/// Result of one solver run.
///
/// Every randomized method is a pure function of its inputs and `seed`;
/// randomness comes from ChaCha8 streams (see [`crate::rng`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub method: Method,
    pub best_value: u64,
    pub assignment: CutAssignment,
    pub oracle_calls: u64,
    pub measurements: u64,
    pub qubits_used: usize,
    pub seed: u64,
    pub wall_ms: u64,
    /// Empty unless the graph went through partitioning.
    pub levels: Vec<LevelStats>,
    /// Original-graph boundary weight left uncut by the final assignment.
    pub boundary_weight_lost: u64,
}

impl RunReport {
    pub(crate) fn new(method: Method, g: &Graph, assignment: CutAssignment, seed: u64) -> Result<Self> {
        let best_value = cut_value(g, &assignment)?;
        Ok(RunReport {
            method,
            best_value,
            assignment,
            oracle_calls: 0,
            measurements: 0,
            qubits_used: 0,
            seed,
            wall_ms: 0,
            levels: Vec::new(),
            boundary_weight_lost: 0,
        })
    }

    /// Recomputes the cut on `g` and checks it against `best_value`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let v = cut_value(g, &self.assignment)?;
        if v != self.best_value {
            return Err(Error::PreconditionViolation(format!(
                "report claims {} but assignment cuts {v}",
                self.best_value
            )));
        }
        Ok(())
    }
}
