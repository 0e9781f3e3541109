//! Pairwise binary objectives.
//!
//! A [`PairObjective`] scores a bit vector by summing, over its terms, `same`
//! when the two bits agree and `diff` when they disagree. A MaxCut instance is
//! the special case `same = 0, diff = w`; a contracted meta-graph uses both
//! coefficients. The quantum fitness circuit, the exact solvers and the
//! divide-and-conquer driver all work on this one representation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairTerm {
    pub a: usize,
    pub b: usize,
    /// Contribution when `bit[a] == bit[b]`.
    pub same: u64,
    /// Contribution when `bit[a] != bit[b]`.
    pub diff: u64,
}

impl PairTerm {
    pub fn eval(&self, bit_a: bool, bit_b: bool) -> u64 {
        if bit_a == bit_b {
            self.same
        } else {
            self.diff
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairObjective {
    num_vars: usize,
    terms: Vec<PairTerm>,
}

impl PairObjective {
    pub fn new(num_vars: usize, terms: Vec<PairTerm>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::invalid("objective needs at least one variable"));
        }
        for t in &terms {
            if t.a >= num_vars || t.b >= num_vars || t.a == t.b {
                return Err(Error::invalid(format!("bad term on ({}, {})", t.a, t.b)));
            }
        }
        let total = terms
            .iter()
            .try_fold(0u64, |acc, t| acc.checked_add(t.same)?.checked_add(t.diff));
        if total.is_none() {
            return Err(Error::invalid("objective coefficients overflow u64"));
        }
        Ok(PairObjective { num_vars, terms })
    }

    pub fn from_graph(g: &Graph) -> Self {
        let terms = g
            .edges()
            .iter()
            .map(|e| PairTerm { a: e.u, b: e.v, same: 0, diff: e.w })
            .collect();
        PairObjective { num_vars: g.num_vertices(), terms }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[PairTerm] {
        &self.terms
    }

    pub fn value(&self, bits: &[bool]) -> u64 {
        debug_assert_eq!(bits.len(), self.num_vars);
        self.terms.iter().map(|t| t.eval(bits[t.a], bits[t.b])).sum()
    }

    /// Value of the assignment whose bit `i` is bit `i` of `index`.
    pub fn value_of_index(&self, index: u64) -> u64 {
        self.terms
            .iter()
            .map(|t| t.eval((index >> t.a) & 1 == 1, (index >> t.b) & 1 == 1))
            .sum()
    }

    /// Σ max(same, diff); no assignment can score higher.
    pub fn max_value_bound(&self) -> u64 {
        self.terms.iter().map(|t| t.same.max(t.diff)).sum()
    }

    /// ⌊Σ (same + diff) / 2⌋, the mean over uniformly random assignments
    /// rounded down. Some assignment always reaches it.
    pub fn half_total(&self) -> u64 {
        self.terms.iter().map(|t| t.same + t.diff).sum::<u64>() / 2
    }

    /// Terms with both endpoints in `vars`, renumbered so that `vars[i]` becomes `i`.
    pub fn restrict(&self, vars: &[usize]) -> Result<PairObjective> {
        let mut local = vec![usize::MAX; self.num_vars];
        for (i, &v) in vars.iter().enumerate() {
            local[v] = i;
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let (a, b) = (local[t.a], local[t.b]);
                (a != usize::MAX && b != usize::MAX).then_some(PairTerm { a, b, ..*t })
            })
            .collect();
        PairObjective::new(vars.len(), terms)
    }

    /// Graph on the same variables weighted by `same + diff` per pair, used to
    /// partition an objective that is not itself a graph.
    pub fn connectivity_graph(&self) -> Graph {
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for t in &self.terms {
            *merged.entry((t.a.min(t.b), t.a.max(t.b))).or_default() += t.same + t.diff;
        }
        Graph::new(self.num_vars, merged.into_iter().map(|((a, b), w)| (a, b, w)))
            .expect("terms were validated on construction")
    }

    /// Exact maximum by Gray-code enumeration of the `2^(n-1)` assignments with
    /// bit 0 cleared (complementing every bit never changes the value).
    /// Among optimal assignments the one with the smallest integer value wins.
    pub fn solve_exact(&self, max_vars: usize) -> Result<(Vec<bool>, u64)> {
        let n = self.num_vars;
        if n > max_vars {
            return Err(Error::CapacityExceeded {
                what: "exact enumeration variables",
                required: n,
                available: max_vars,
                detail: String::new(),
            });
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, t) in self.terms.iter().enumerate() {
            incident[t.a].push(k);
            incident[t.b].push(k);
        }
        let mut mask: u64 = 0;
        let mut value = self.value_of_index(0) as i128;
        let (mut best_mask, mut best_value) = (0u64, value);
        for step in 1u64..(1u64 << (n - 1)) {
            let var = step.trailing_zeros() as usize + 1;
            for &k in &incident[var] {
                let t = &self.terms[k];
                let equal_before = ((mask >> t.a) & 1) == ((mask >> t.b) & 1);
                value += if equal_before {
                    t.diff as i128 - t.same as i128
                } else {
                    t.same as i128 - t.diff as i128
                };
            }
            mask ^= 1 << var;
            if value > best_value || (value == best_value && mask < best_mask) {
                best_value = value;
                best_mask = mask;
            }
        }
        let bits = (0..n).map(|i| (best_mask >> i) & 1 == 1).collect();
        Ok((bits, best_value as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_max(obj: &PairObjective) -> u64 {
        (0..1u64 << obj.num_vars()).map(|i| obj.value_of_index(i)).max().unwrap()
    }

    #[test]
    fn exact_matches_naive_on_mixed_terms() {
        let obj = PairObjective::new(
            5,
            vec![
                PairTerm { a: 0, b: 1, same: 3, diff: 1 },
                PairTerm { a: 1, b: 2, same: 0, diff: 2 },
                PairTerm { a: 2, b: 3, same: 5, diff: 0 },
                PairTerm { a: 3, b: 4, same: 1, diff: 4 },
                PairTerm { a: 0, b: 4, same: 2, diff: 2 },
            ],
        )
        .unwrap();
        let (bits, v) = obj.solve_exact(20).unwrap();
        assert_eq!(v, naive_max(&obj));
        assert_eq!(obj.value(&bits), v);
        assert!(!bits[0]);
    }

    #[test]
    fn single_variable() {
        let obj = PairObjective::new(1, vec![]).unwrap();
        assert_eq!(obj.solve_exact(20).unwrap(), (vec![false], 0));
    }

    #[test]
    fn capacity() {
        let obj = PairObjective::new(30, vec![]).unwrap();
        assert!(obj.solve_exact(24).unwrap_err().is_capacity());
    }

    #[test]
    fn rejects_bad_terms() {
        assert!(PairObjective::new(2, vec![PairTerm { a: 0, b: 0, same: 1, diff: 0 }]).is_err());
        assert!(PairObjective::new(2, vec![PairTerm { a: 0, b: 2, same: 1, diff: 0 }]).is_err());
    }

    #[test]
    fn bounds() {
        let obj = PairObjective::new(3, vec![
            PairTerm { a: 0, b: 1, same: 3, diff: 1 },
            PairTerm { a: 1, b: 2, same: 0, diff: 2 },
        ])
        .unwrap();
        assert_eq!(obj.max_value_bound(), 5);
        assert_eq!(obj.half_total(), 3);
        let g = obj.connectivity_graph();
        assert_eq!(g.total_weight(), 6);
    }
}
