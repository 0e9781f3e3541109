//! Reversible arithmetic: the Cuccaro ripple-carry adder built from MAJ and
//! UMA blocks, a controlled constant increment, and a strict greater-than
//! comparator that writes its answer into a flag qubit.
//!
//! Registers are qubit ranges, least significant bit first.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::qsim::CircuitProgram;

/// Operand layout for [`build_adder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdderSpec {
    pub width: usize,
    /// Addend, left unchanged.
    pub reg_a: Range<usize>,
    /// Receives `(a + b + carry_in) mod 2^width`.
    pub reg_b: Range<usize>,
    pub carry_in: usize,
    /// XORed with the carry out of the top bit.
    pub carry_out: usize,
}

impl AdderSpec {
    fn validate(&self) -> Result<()> {
        if self.width == 0 {
            return Err(Error::invalid("adder width must be at least 1"));
        }
        if self.reg_a.len() != self.width || self.reg_b.len() != self.width {
            return Err(Error::invalid(format!(
                "adder registers {:?} and {:?} must both have width {}",
                self.reg_a, self.reg_b, self.width
            )));
        }
        let mut used: Vec<usize> = self.reg_a.clone().chain(self.reg_b.clone()).collect();
        used.push(self.carry_in);
        used.push(self.carry_out);
        ensure_distinct(&used, "adder")
    }
}

fn ensure_distinct(qubits: &[usize], what: &str) -> Result<()> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("{what} registers overlap")));
    }
    Ok(())
}

// MAJ(c, b, a): a <- maj(a, b, c), b <- a ^ b, c <- a ^ c.
fn maj(p: &mut CircuitProgram, c: usize, b: usize, a: usize) {
    p.cnot(a, b).cnot(a, c).ccx(c, b, a);
}

// UMA(c, b, a): undoes MAJ and leaves the sum bit in b.
fn uma(p: &mut CircuitProgram, c: usize, b: usize, a: usize) {
    p.ccx(c, b, a).cnot(a, c).cnot(c, b);
}

/// Cuccaro ripple-carry adder: `|a⟩|b⟩|c₀⟩|z⟩ → |a⟩|a+b+c₀ mod 2^w⟩|c₀⟩|z ⊕ carry⟩`.
pub fn build_adder(spec: &AdderSpec) -> Result<CircuitProgram> {
    spec.validate()?;
    let a: Vec<usize> = spec.reg_a.clone().collect();
    let b: Vec<usize> = spec.reg_b.clone().collect();
    let n = spec.width;
    let mut p = CircuitProgram::new();
    maj(&mut p, spec.carry_in, b[0], a[0]);
    for i in 1..n {
        maj(&mut p, a[i - 1], b[i], a[i]);
    }
    p.cnot(a[n - 1], spec.carry_out);
    for i in (1..n).rev() {
        uma(&mut p, a[i - 1], b[i], a[i]);
    }
    uma(&mut p, spec.carry_in, b[0], a[0]);
    Ok(p)
}

/// `reg ← reg + amount (mod 2^width)` when `ctrl` is 1.
///
/// Adding `2^j` is an increment of the sub-register starting at bit `j`,
/// done as a cascade of multi-controlled X gates from the top bit down. One
/// cascade runs per set bit of `amount`; no scratch qubits are used.
pub fn build_controlled_increment(ctrl: usize, reg: Range<usize>, amount: u64) -> Result<CircuitProgram> {
    let width = reg.len();
    if width == 0 {
        return Err(Error::invalid("increment register is empty"));
    }
    if amount == 0 || (width < 64 && amount >> width != 0) {
        return Err(Error::invalid(format!("amount {amount} does not fit {width} bits or is zero")));
    }
    if reg.contains(&ctrl) {
        return Err(Error::invalid("control qubit lies inside the target register"));
    }
    let bits: Vec<usize> = reg.collect();
    let mut p = CircuitProgram::new();
    for j in (0..width).filter(|j| (amount >> j) & 1 == 1) {
        for i in (j..width).rev() {
            let mut controls = vec![ctrl];
            controls.extend_from_slice(&bits[j..i]);
            p.mcx(controls, bits[i]);
        }
    }
    Ok(p)
}

/// `flag ^= [f > threshold]` with every other qubit restored.
///
/// Loads `2^M - 1 - threshold` into `threshold_reg` (which must start at
/// zero), adds `f` into it so the carry out is set exactly when
/// `f > threshold`, copies the carry to `flag`, then runs the addition and
/// the load backwards.
pub fn build_compare_greater(
    reg_f: Range<usize>,
    threshold_reg: Range<usize>,
    threshold: u64,
    flag: usize,
    (carry_in, carry_out): (usize, usize),
) -> Result<CircuitProgram> {
    let width = reg_f.len();
    if width >= 64 || threshold >> width != 0 {
        return Err(Error::invalid(format!("threshold {threshold} does not fit {width} bits")));
    }
    let spec = AdderSpec {
        width,
        reg_a: reg_f,
        reg_b: threshold_reg.clone(),
        carry_in,
        carry_out,
    };
    let adder = build_adder(&spec)?;
    let mut used: Vec<usize> = spec.reg_a.clone().chain(threshold_reg.clone()).collect();
    used.extend([carry_in, carry_out, flag]);
    ensure_distinct(&used, "comparator")?;

    let mut load = CircuitProgram::new();
    for (bit, q) in threshold_reg.enumerate() {
        if (threshold >> bit) & 1 == 0 {
            load.x(q);
        }
    }
    let mut p = load.clone();
    p.append(&adder);
    p.cnot(carry_out, flag);
    p.append(&adder.inverse());
    p.append(&load.inverse());
    Ok(p)
}
