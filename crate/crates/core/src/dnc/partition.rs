use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::{PairObjective, PairTerm};
use crate::rng;

/// Greedy swap sweeps run after each bisection.
pub const REFINE_SWEEPS: usize = 8;

/// A term whose endpoints landed in different parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub term: PairTerm,
    pub part_a: usize,
    pub part_b: usize,
}

/// Disjoint parts covering every variable, with each term filed as internal to
/// one part or as a boundary edge between two. Terms keep their original
/// variable indices. For a graph, an edge `(u, v, w)` is the term with
/// `same = 0, diff = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub internal_edges: Vec<Vec<PairTerm>>,
    pub boundary_edges: Vec<BoundaryEdge>,
    part_of: Vec<usize>,
    position: Vec<usize>,
}

impl Partition {
    /// Files the terms of `obj` against `parts`, which must be disjoint and
    /// cover `0..obj.num_vars()`.
    pub fn from_parts(obj: &PairObjective, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = obj.num_vars();
        let mut part_of = vec![usize::MAX; n];
        let mut position = vec![0; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::invalid(format!("part {i} is empty")));
            }
            for (pos, &v) in part.iter().enumerate() {
                if v >= n || part_of[v] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v} is out of range or in two parts")));
                }
                part_of[v] = i;
                position[v] = pos;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::invalid(format!("vertex {v} is in no part")));
        }
        let mut internal_edges = vec![Vec::new(); parts.len()];
        let mut boundary_edges = Vec::new();
        for &t in obj.terms() {
            let (pa, pb) = (part_of[t.a], part_of[t.b]);
            if pa == pb {
                internal_edges[pa].push(t);
            } else {
                boundary_edges.push(BoundaryEdge { term: t, part_a: pa, part_b: pb });
            }
        }
        Ok(Partition { parts, internal_edges, boundary_edges, part_of, position })
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Index of `v` inside its part's vertex list.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Internal terms of part `i`, renumbered to the part's local indices.
    pub fn part_objective(&self, i: usize) -> Result<PairObjective> {
        let terms = self.internal_edges[i]
            .iter()
            .map(|t| PairTerm { a: self.position[t.a], b: self.position[t.b], ..*t })
            .collect();
        PairObjective::new(self.parts[i].len(), terms)
    }

    /// Σ `same + diff` over boundary edges.
    pub fn boundary_weight(&self) -> u64 {
        self.boundary_edges.iter().map(|e| e.term.same + e.term.diff).sum()
    }
}

pub fn partition_graph(g: &Graph, max_size: usize, seed: u64) -> Result<Partition> {
    partition_objective(&PairObjective::from_graph(g), max_size, seed)
}

/// Recursive balanced bisection of the objective's connectivity graph until
/// every part has at most `max_size` variables.
pub fn partition_objective(obj: &PairObjective, max_size: usize, seed: u64) -> Result<Partition> {
    if max_size < 2 {
        return Err(Error::invalid(format!("max part size {max_size} < 2")));
    }
    let g = obj.connectivity_graph();
    let adj = g.adjacency();
    let mut rng = rng::seeded(seed);
    let mut parts = Vec::new();
    split(&adj, (0..g.num_vertices()).collect(), max_size, &mut rng, &mut parts);
    Partition::from_parts(obj, parts)
}

fn split(adj: &[Vec<(usize, u64)>], verts: Vec<usize>, max_size: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<usize>>) {
    if verts.len() <= max_size {
        out.push(verts);
        return;
    }
    let (a, b) = bisect(adj, &verts, rng);
    split(adj, a, max_size, rng, out);
    split(adj, b, max_size, rng, out);
}

/// Splits `verts` into halves of sizes `⌈k/2⌉` and `⌊k/2⌋`: grow the first
/// half breadth-first from a random vertex, then apply positive-gain pair
/// swaps.
fn bisect(adj: &[Vec<(usize, u64)>], verts: &[usize], rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let k = verts.len();
    let mut local = vec![usize::MAX; adj.len()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    // Adjacency restricted to the subset, in local indices, sorted for lookup.
    let ladj: Vec<Vec<(usize, u64)>> = verts
        .iter()
        .map(|&v| {
            let mut l: Vec<(usize, u64)> =
                adj[v].iter().filter(|(u, _)| local[*u] != usize::MAX).map(|&(u, w)| (local[u], w)).collect();
            l.sort_unstable();
            l
        })
        .collect();

    let target = k.div_ceil(2);
    let mut in_a = vec![false; k];
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let start = rng.random_range(0..k);
    let mut queue = std::collections::VecDeque::from([start]);
    let mut seen = vec![false; k];
    seen[start] = true;
    let mut taken = 0;
    let mut fallback = order.into_iter();
    while taken < target {
        let v = match queue.pop_front() {
            Some(v) => v,
            None => {
                let v = fallback.find(|&v| !seen[v]).expect("fewer than k vertices taken");
                seen[v] = true;
                v
            }
        };
        in_a[v] = true;
        taken += 1;
        for &(u, _) in &ladj[v] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }

    refine(&ladj, &mut in_a);
    let (mut a, mut b) = (Vec::with_capacity(target), Vec::with_capacity(k - target));
    for (i, &v) in verts.iter().enumerate() {
        if in_a[i] {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    (a, b)
}

fn weight_between(ladj: &[Vec<(usize, u64)>], a: usize, b: usize) -> i128 {
    ladj[a].binary_search_by_key(&b, |&(u, _)| u).map_or(0, |i| ladj[a][i].1 as i128)
}

/// Each sweep repeatedly swaps the unlocked pair with the largest positive
/// reduction in cut weight and locks it. Ties go to the lowest indices.
fn refine(ladj: &[Vec<(usize, u64)>], in_a: &mut [bool]) {
    let k = in_a.len();
    for _ in 0..REFINE_SWEEPS {
        let mut locked = vec![false; k];
        let mut swapped = false;
        loop {
            // External minus internal weight per vertex.
            let d: Vec<i128> = (0..k)
                .map(|v| {
                    ladj[v]
                        .iter()
                        .map(|&(u, w)| if in_a[u] != in_a[v] { w as i128 } else { -(w as i128) })
                        .sum()
                })
                .collect();
            let mut best: Option<(i128, usize, usize)> = None;
            for a in (0..k).filter(|&v| in_a[v] && !locked[v]) {
                for b in (0..k).filter(|&v| !in_a[v] && !locked[v]) {
                    let gain = d[a] + d[b] - 2 * weight_between(ladj, a, b);
                    if gain > 0 && best.is_none_or(|(g, _, _)| gain > g) {
                        best = Some((gain, a, b));
                    }
                }
            }
            let Some((_, a, b)) = best else { break };
            in_a[a] = false;
            in_a[b] = true;
            locked[a] = true;
            locked[b] = true;
            swapped = true;
        }
        if !swapped {
            break;
        }
    }
}
