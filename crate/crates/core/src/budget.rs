//! Qubit-count formulas for the full (non-partitioned) algorithm.
//!
//! [`qubit_budget`] is `f(|V|, n, M, m) = |V|·n + 2·(M + m) + 3` and
//! [`qubit_bound`] is the complete-graph bound `g(n) = n² + 2^(n(n−1)/4 + 1) + 3`.
//! Both are reported alongside the concrete register layout the simulator
//! actually allocates, which is smaller (see `qga::RegisterLayout`).

use std::fmt;

use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitBudget {
    pub vertices: u64,
    /// Qubits per vertex in the chromosome register.
    pub n_bits: u64,
    /// Fitness register width.
    pub fitness_bits: u64,
    /// Grover iterations.
    pub iterations: u64,
    pub total: u64,
}

pub fn qubit_budget(vertices: u64, n_bits: u64, fitness_bits: u64, iterations: u64) -> QubitBudget {
    QubitBudget {
        vertices,
        n_bits,
        fitness_bits,
        iterations,
        total: vertices * n_bits + 2 * (fitness_bits + iterations) + 3,
    }
}

impl fmt::Display for QubitBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f(|V|={}, n={}, M={}, m={}) = {}·{} + 2·({} + {}) + 3 = {}",
            self.vertices,
            self.n_bits,
            self.fitness_bits,
            self.iterations,
            self.vertices,
            self.n_bits,
            self.fitness_bits,
            self.iterations,
            self.total
        )
    }
}

/// Value of the complete-graph bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitBound {
    pub value: BigUint,
    /// False when `n(n−1)/4` is fractional (n ≡ 2, 3 mod 4). The exponent is
    /// then `k + 1/2` and `value` is the ceiling of the real-valued bound.
    pub exact: bool,
}

pub fn qubit_bound(n: u64) -> QubitBound {
    let pairs = n * n.saturating_sub(1);
    let base = BigUint::from(n) * n + 3u32;
    if pairs % 4 == 0 {
        let exp = pairs / 4 + 1;
        QubitBound { value: base + (BigUint::from(1u32) << exp), exact: true }
    } else {
        // pairs ≡ 2 (mod 4): 2^(e + 1/2) with e = (pairs - 2)/4 + 1, whose
        // ceiling is isqrt(2^(2e+1)) + 1 because 2^odd is never a square.
        let e = (pairs - 2) / 4 + 1;
        let root = (BigUint::from(1u32) << (2 * e + 1)).sqrt();
        QubitBound { value: base + root + 1u32, exact: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_examples() {
        assert_eq!(qubit_budget(5, 1, 3, 2).total, 18);
        assert_eq!(qubit_budget(0, 0, 0, 0).total, 3);
        assert_eq!(qubit_budget(8, 1, 5, 4).total, 29);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(qubit_bound(4), QubitBound { value: 35u32.into(), exact: true });
        assert_eq!(qubit_bound(5), QubitBound { value: 92u32.into(), exact: true });
        assert_eq!(qubit_bound(1), QubitBound { value: 6u32.into(), exact: true });
    }

    #[test]
    fn fractional_exponent_is_ceiled() {
        // g(2) = 4 + 2^1.5 + 3 = 9.83 -> 10; g(3) = 9 + 2^2.5 + 3 = 17.66 -> 18
        let g2 = qubit_bound(2);
        assert!(!g2.exact);
        assert_eq!(g2.value, 10u32.into());
        assert_eq!(qubit_bound(3).value, 18u32.into());
        let real = 49.0 + 2f64.powf(42.0 / 4.0 + 1.0) + 3.0;
        assert_eq!(qubit_bound(7).value, BigUint::from(real.ceil() as u64));
    }

    #[test]
    fn bound_grows_past_u64() {
        assert!(qubit_bound(20).value.bits() > 64);
    }
}
