use std::ops::Range;

use num_complex::Complex64;
use rand::Rng;

use super::circuit::{CircuitProgram, Gate};
use crate::error::{Error, Result};
use crate::rng;

/// Default qubit cap: 2^26 complex doubles is 1 GiB of dense amplitudes.
/// Largest `|‖ψ‖² − 1|` that debug builds accept after [`QuantumState::run`].
pub const NORM_TOLERANCE: f64 = 1e-10;

pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Hard ceiling from using `u64` basis indices.
const INDEX_BITS: usize = 63;

/// Sparse amplitudes whose squared magnitude falls below this are dropped
/// after a Hadamard. The discarded probability mass is far below the
/// 1e-10 norm tolerance even over millions of gates.
const PRUNE_NORM_SQR: f64 = 1e-30;

/// Amplitude storage.
///
/// `Dense` keeps all `2^k` amplitudes. `Sparse` keeps only nonzero ones as
/// `(basis index, amplitude)` pairs. Both apply the same arithmetic, so the
/// two backends agree to rounding error; sparse storage is what makes the
/// QGA registers (mostly classical ancillas) cheap to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Dense,
    Sparse,
}

#[derive(Debug, Clone)]
enum Storage {
    Dense { amps: Vec<Complex64>, scratch: Vec<Complex64> },
    Sparse(Vec<(u64, Complex64)>),
}

/// A pure state of `num_qubits` qubits. Qubit 0 is the least significant bit
/// of the basis index.
#[derive(Debug, Clone)]
pub struct QuantumState {
    num_qubits: usize,
    storage: Storage,
}

impl QuantumState {
    /// `|0…0⟩` on `k` qubits, dense, under [`DEFAULT_QUBIT_CAP`].
    pub fn allocate(k: usize) -> Result<Self> {
        Self::allocate_with(k, Backend::Dense, DEFAULT_QUBIT_CAP)
    }

    /// `|0…0⟩` on `k` qubits with an explicit backend and cap.
    pub fn allocate_with(k: usize, backend: Backend, cap: usize) -> Result<Self> {
        Self::basis(k, 0, backend, cap)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(k: usize, index: u64, backend: Backend, cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("a state needs at least one qubit"));
        }
        let limit = cap.min(INDEX_BITS);
        if k > limit {
            return Err(Error::CapacityExceeded {
                what: "qubits",
                required: k,
                available: limit,
                detail: String::new(),
            });
        }
        if index >> k != 0 {
            return Err(Error::invalid(format!("basis index {index} needs more than {k} qubits")));
        }
        let one = Complex64::new(1.0, 0.0);
        let storage = match backend {
            Backend::Dense => {
                let mut amps = vec![Complex64::default(); 1usize << k];
                amps[index as usize] = one;
                Storage::Dense { amps, scratch: Vec::new() }
            }
            Backend::Sparse => Storage::Sparse(vec![(index, one)]),
        };
        Ok(QuantumState { num_qubits: k, storage })
    }

    /// Dense state from explicit amplitudes; the caller is responsible for
    /// normalization.
    pub fn from_amplitudes(k: usize, amps: Vec<Complex64>) -> Result<Self> {
        if k == 0 || k > INDEX_BITS || amps.len() != 1usize << k {
            return Err(Error::invalid(format!("{} amplitudes do not match {k} qubits", amps.len())));
        }
        Ok(QuantumState { num_qubits: k, storage: Storage::Dense { amps, scratch: Vec::new() } })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn backend(&self) -> Backend {
        match self.storage {
            Storage::Dense { .. } => Backend::Dense,
            Storage::Sparse(_) => Backend::Sparse,
        }
    }

    /// Number of stored amplitudes (2^k for dense, support size for sparse).
    pub fn stored_len(&self) -> usize {
        match &self.storage {
            Storage::Dense { amps, .. } => amps.len(),
            Storage::Sparse(e) => e.len(),
        }
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        match &self.storage {
            Storage::Dense { amps, .. } => amps.get(index as usize).copied().unwrap_or_default(),
            Storage::Sparse(e) => e
                .iter()
                .find(|(i, _)| *i == index)
                .map(|(_, a)| *a)
                .unwrap_or_default(),
        }
    }

    /// Nonzero amplitudes in increasing basis order.
    pub fn entries(&self) -> Vec<(u64, Complex64)> {
        let mut out: Vec<(u64, Complex64)> = match &self.storage {
            Storage::Dense { amps, .. } => amps
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm_sqr() > 0.0)
                .map(|(i, a)| (i as u64, *a))
                .collect(),
            Storage::Sparse(e) => e.clone(),
        };
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }

    /// All `2^k` amplitudes; intended for small states in tests and examples.
    pub fn to_dense(&self) -> Vec<Complex64> {
        match &self.storage {
            Storage::Dense { amps, .. } => amps.clone(),
            Storage::Sparse(e) => {
                let mut v = vec![Complex64::default(); 1usize << self.num_qubits];
                for &(i, a) in e {
                    v[i as usize] = a;
                }
                v
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.probability_where(|_| true)
    }

    /// Total probability of basis states satisfying `pred`.
    pub fn probability_where(&self, mut pred: impl FnMut(u64) -> bool) -> f64 {
        match &self.storage {
            Storage::Dense { amps, .. } => amps
                .iter()
                .enumerate()
                .map(|(i, a)| (i as u64, a.norm_sqr()))
                .filter(|&(i, p)| p > 0.0 && pred(i))
                .map(|(_, p)| p)
                .sum(),
            Storage::Sparse(e) => e.iter().filter(|(i, _)| pred(*i)).map(|(_, a)| a.norm_sqr()).sum(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        let a = self.entries();
        let b = other.entries();
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex64::default();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a[i].1.conj() * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &QuantumState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// True when every basis state with nonzero amplitude has all qubits in
    /// `range` equal to 0.
    pub fn register_is_zero(&self, range: Range<usize>) -> bool {
        let mask = range_mask(&range);
        self.probability_where(|i| i & mask != 0) < 1e-20
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    /// Hadamard on every qubit in `range`.
    pub fn apply_h_range(&mut self, range: Range<usize>) -> Result<()> {
        if range.end > self.num_qubits {
            return Err(Error::invalid(format!(
                "range {range:?} exceeds {} qubits",
                self.num_qubits
            )));
        }
        for q in range {
            self.hadamard(q);
        }
        Ok(())
    }

    /// Applies `program` in order. The program is validated up front so a bad
    /// gate leaves the state untouched.
    pub fn run(&mut self, program: &CircuitProgram) -> Result<()> {
        program.validate(self.num_qubits)?;
        let gates = program.gates();
        let mut i = 0;
        while i < gates.len() {
            // Consecutive permutation gates are fused into one pass.
            let mut perms = Vec::new();
            while let Some(p) = gates.get(i).and_then(Gate::as_permutation) {
                perms.push(p);
                i += 1;
            }
            if !perms.is_empty() {
                self.permute(&perms);
                continue;
            }
            self.apply_unchecked(&gates[i]);
            i += 1;
        }
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() < NORM_TOLERANCE,
            "norm drifted to {} after a {}-gate program",
            self.norm_sqr(),
            gates.len()
        );
        Ok(())
    }

    /// Samples `shots` basis indices from the Born distribution. The state is
    /// not collapsed; the same seed gives the same samples.
    pub fn measure(&self, seed: u64, shots: usize) -> Result<Vec<u64>> {
        if shots == 0 {
            return Err(Error::invalid("measurement needs at least one shot"));
        }
        let entries = self.entries();
        let mut cumulative = Vec::with_capacity(entries.len());
        let mut total = 0.0;
        for (_, a) in &entries {
            total += a.norm_sqr();
            cumulative.push(total);
        }
        let mut rng = rng::seeded(seed);
        Ok((0..shots)
            .map(|_| {
                let u = rng.random::<f64>() * total;
                let k = cumulative.partition_point(|&c| c <= u).min(entries.len() - 1);
                entries[k].0
            })
            .collect())
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        match gate {
            Gate::H(t) => self.hadamard(*t),
            Gate::Z(t) => self.phase_flip(1 << t),
            Gate::PhaseFlip(qs) => self.phase_flip(qs.iter().fold(0, |m, &q| m | (1 << q))),
            _ => {
                let p = gate.as_permutation().expect("remaining gates are permutations");
                self.permute(&[p]);
            }
        }
    }

    fn permute(&mut self, perms: &[(u64, u64)]) {
        let map = |mut i: u64| {
            for &(ctrl, tgt) in perms {
                if i & ctrl == ctrl {
                    i ^= tgt;
                }
            }
            i
        };
        match &mut self.storage {
            Storage::Sparse(e) => {
                for (i, _) in e.iter_mut() {
                    *i = map(*i);
                }
            }
            Storage::Dense { amps, .. } if perms.len() == 1 => {
                let (ctrl, tgt) = perms[0];
                for i in 0..amps.len() as u64 {
                    if i & ctrl == ctrl && i & tgt == 0 {
                        amps.swap(i as usize, (i | tgt) as usize);
                    }
                }
            }
            Storage::Dense { amps, scratch } => {
                scratch.clear();
                scratch.resize(amps.len(), Complex64::default());
                for (i, a) in amps.iter().enumerate() {
                    scratch[map(i as u64) as usize] = *a;
                }
                std::mem::swap(amps, scratch);
            }
        }
    }

    fn phase_flip(&mut self, mask: u64) {
        match &mut self.storage {
            Storage::Dense { amps, .. } => {
                for (i, a) in amps.iter_mut().enumerate() {
                    if (i as u64) & mask == mask {
                        *a = -*a;
                    }
                }
            }
            Storage::Sparse(e) => {
                for (i, a) in e.iter_mut() {
                    if *i & mask == mask {
                        *a = -*a;
                    }
                }
            }
        }
    }

    fn hadamard(&mut self, t: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bit = 1u64 << t;
        match &mut self.storage {
            Storage::Dense { amps, .. } => {
                for i in 0..amps.len() as u64 {
                    if i & bit == 0 {
                        let (lo, hi) = (i as usize, (i | bit) as usize);
                        let (a, b) = (amps[lo], amps[hi]);
                        amps[lo] = (a + b) * s;
                        amps[hi] = (a - b) * s;
                    }
                }
            }
            Storage::Sparse(e) => {
                e.sort_unstable_by_key(|&(i, _)| (i & !bit, i & bit));
                let mut out = Vec::with_capacity(e.len() * 2);
                let mut k = 0;
                while k < e.len() {
                    let base = e[k].0 & !bit;
                    let (mut a, mut b) = (Complex64::default(), Complex64::default());
                    while k < e.len() && e[k].0 & !bit == base {
                        if e[k].0 & bit == 0 {
                            a = e[k].1;
                        } else {
                            b = e[k].1;
                        }
                        k += 1;
                    }
                    for (idx, amp) in [(base, (a + b) * s), (base | bit, (a - b) * s)] {
                        if amp.norm_sqr() > PRUNE_NORM_SQR {
                            out.push((idx, amp));
                        }
                    }
                }
                *e = out;
            }
        }
    }
}

pub(crate) fn range_mask(range: &Range<usize>) -> u64 {
    range.clone().fold(0, |m, q| m | (1u64 << q))
}

/// Renders a basis index most-significant qubit first.
pub fn bitstring(index: u64, num_qubits: usize) -> String {
    (0..num_qubits)
        .rev()
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}
