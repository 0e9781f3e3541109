//! Dense and sparse state-vector simulation over the gate set the QGA
//! circuits need: X, H, Z, CNOT, Toffoli, multi-controlled X and
//! multi-qubit phase flips.
//!
//! Qubit 0 is the least significant bit of a basis index. [`bitstring`]
//! prints indices most-significant qubit first, so `|10⟩` is index 2.
//!
//! Multi-controlled X acts directly on the amplitudes and counts as one
//! gate; it is not decomposed into Toffolis.

mod circuit;
mod state;

pub use circuit::{CircuitProgram, Gate};
pub use state::{bitstring, Backend, QuantumState, DEFAULT_QUBIT_CAP, NORM_TOLERANCE};
pub(crate) use state::range_mask;

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use num_complex::Complex64;

    pub fn assert_normalized(s: &QuantumState) {
        let n = s.norm_sqr();
        assert!((n - 1.0).abs() < 1e-10, "norm² drifted to {n}");
    }

    pub fn assert_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            assert!((x - y).norm() < tol, "amplitude {i}: {x} vs {y}");
        }
    }
}
