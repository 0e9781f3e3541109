use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::CutAssignment;
use crate::objective::{PairObjective, PairTerm};

use super::partition::Partition;

/// Contribution of the boundary between parts `i < j` under part flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetaPair {
    pub i: usize,
    pub j: usize,
    /// Earned when the two parts keep the same orientation.
    pub c_same: u64,
    /// Earned when exactly one of them is flipped.
    pub c_diff: u64,
}

/// One vertex per part. Flipping part `i` complements its local solution,
/// which never changes the local value but swaps `c_same` and `c_diff` on
/// every pair that involves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaGraph {
    pub num_parts: usize,
    pub pairs: Vec<MetaPair>,
    pub local_solutions: Vec<CutAssignment>,
    pub local_values: Vec<u64>,
}

impl MetaGraph {
    pub fn local_total(&self) -> u64 {
        self.local_values.iter().sum()
    }

    /// Global objective after flipping every part `i` with `flips[i]`.
    pub fn value(&self, flips: &[bool]) -> u64 {
        self.local_total() + self.pair_value(flips)
    }

    /// Boundary part of [`MetaGraph::value`].
    pub fn pair_value(&self, flips: &[bool]) -> u64 {
        self.pairs
            .iter()
            .map(|p| if flips[p.i] == flips[p.j] { p.c_same } else { p.c_diff })
            .sum()
    }

    /// The flip problem as a pair objective over parts.
    pub fn to_objective(&self) -> PairObjective {
        let terms = self.pairs.iter().map(|p| PairTerm { a: p.i, b: p.j, same: p.c_same, diff: p.c_diff }).collect();
        PairObjective::new(self.num_parts, terms).expect("pairs index valid parts")
    }
}

/// Builds the meta-graph from one local solution per part.
///
/// A boundary term between parts `i` and `j` pays `same` or `diff` depending
/// on whether its two endpoint bits agree. With both parts unflipped they
/// agree exactly when the local bits agree, so the term adds `(same, diff)` to
/// `(c_same, c_diff)`; when the local bits differ the roles swap. For a graph
/// edge this puts the weight in `c_same` when the local bits differ.
pub fn contract(p: &Partition, solutions: &[CutAssignment]) -> Result<MetaGraph> {
    if solutions.len() != p.num_parts() {
        return Err(Error::invalid(format!(
            "{} solutions for {} parts",
            solutions.len(),
            p.num_parts()
        )));
    }
    for (i, (s, part)) in solutions.iter().zip(&p.parts).enumerate() {
        if s.len() != part.len() {
            return Err(Error::invalid(format!("solution for part {i} has {} bits, part has {}", s.len(), part.len())));
        }
    }
    let bit = |v: usize| solutions[p.part_of(v)].get(p.position(v));
    let local_values = p
        .internal_edges
        .iter()
        .map(|terms| terms.iter().map(|t| t.eval(bit(t.a), bit(t.b))).sum())
        .collect();
    let mut merged: BTreeMap<(usize, usize), (u64, u64)> = BTreeMap::new();
    for e in &p.boundary_edges {
        let t = e.term;
        let (same, diff) = if bit(t.a) == bit(t.b) { (t.same, t.diff) } else { (t.diff, t.same) };
        let entry = merged.entry((e.part_a.min(e.part_b), e.part_a.max(e.part_b))).or_default();
        entry.0 += same;
        entry.1 += diff;
    }
    Ok(MetaGraph {
        num_parts: p.num_parts(),
        pairs: merged.into_iter().map(|((i, j), (c_same, c_diff))| MetaPair { i, j, c_same, c_diff }).collect(),
        local_solutions: solutions.to_vec(),
        local_values,
    })
}

/// Global assignment: each part's local bits XOR its flip.
pub fn assemble(p: &Partition, solutions: &[CutAssignment], flips: &[bool]) -> CutAssignment {
    let n = p.parts.iter().map(Vec::len).sum();
    let mut out = CutAssignment::zeros(n);
    for (i, part) in p.parts.iter().enumerate() {
        for (pos, &v) in part.iter().enumerate() {
            out.set(v, solutions[i].get(pos) ^ flips[i]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_value, generate_erdos_renyi, Graph};

    fn c4() -> (Graph, Partition) {
        let g = Graph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        let p = Partition::from_parts(&PairObjective::from_graph(&g), vec![vec![0, 1], vec![2, 3]]).unwrap();
        (g, p)
    }

    #[test]
    fn c4_example() {
        let (g, p) = c4();
        let sols = vec!["01".parse().unwrap(), "01".parse().unwrap()];
        let m = contract(&p, &sols).unwrap();
        assert_eq!(m.pairs, vec![MetaPair { i: 0, j: 1, c_same: 2, c_diff: 0 }]);
        assert_eq!(m.local_values, vec![1, 1]);
        assert_eq!(m.value(&[false, false]), 4);
        assert_eq!(m.value(&[false, true]), 2);
        assert_eq!(cut_value(&g, &assemble(&p, &sols, &[false, false])).unwrap(), 4);
        assert!(contract(&p, &sols[..1]).is_err());
    }

    #[test]
    fn no_boundary_means_local_total() {
        let g = Graph::new(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let p = Partition::from_parts(&PairObjective::from_graph(&g), vec![vec![0, 1], vec![2, 3]]).unwrap();
        let sols = vec!["01".parse().unwrap(), "00".parse().unwrap()];
        let m = contract(&p, &sols).unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.value(&[true, false]), 1);
    }

    fn best(m: &MetaGraph) -> u64 {
        (0..1u64 << m.num_parts)
            .map(|mask| m.value(&(0..m.num_parts).map(|i| (mask >> i) & 1 == 1).collect::<Vec<_>>()))
            .max()
            .unwrap()
    }

    #[test]
    fn flipping_a_local_solution_swaps_coefficients() {
        let g = generate_erdos_renyi(9, 0.6, 2).unwrap();
        let p = Partition::from_parts(&PairObjective::from_graph(&g), vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]])
            .unwrap();
        let sols: Vec<CutAssignment> = vec!["010".parse().unwrap(), "110".parse().unwrap(), "001".parse().unwrap()];
        let m = contract(&p, &sols).unwrap();
        let mut flipped = sols.clone();
        flipped[1] = flipped[1].complement();
        let m2 = contract(&p, &flipped).unwrap();
        for (a, b) in m.pairs.iter().zip(&m2.pairs) {
            if a.i == 1 || a.j == 1 {
                assert_eq!((a.c_same, a.c_diff), (b.c_diff, b.c_same));
            } else {
                assert_eq!(a, b);
            }
        }
        assert_eq!(best(&m), best(&m2));
    }

    #[test]
    fn value_matches_assembled_cut() {
        let g = generate_erdos_renyi(9, 0.5, 7).unwrap();
        let p = Partition::from_parts(&PairObjective::from_graph(&g), vec![vec![0, 4, 8], vec![1, 2], vec![3, 5, 6, 7]])
            .unwrap();
        let sols: Vec<CutAssignment> = vec!["011".parse().unwrap(), "10".parse().unwrap(), "0110".parse().unwrap()];
        let m = contract(&p, &sols).unwrap();
        for mask in 0..8u64 {
            let flips: Vec<bool> = (0..3).map(|i| (mask >> i) & 1 == 1).collect();
            let a = assemble(&p, &sols, &flips);
            assert_eq!(m.value(&flips), cut_value(&g, &a).unwrap());
            let pair_sums: Vec<u64> = m.pairs.iter().map(|p| p.c_same + p.c_diff).collect();
            assert_eq!(pair_sums.iter().sum::<u64>(), p.boundary_weight());
        }
    }
}
