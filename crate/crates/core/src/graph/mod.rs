//! Weighted undirected graphs, cut assignments and the classical MaxCut
//! machinery used as ground truth elsewhere in the crate.

mod generate;
mod io;
mod solve;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub use generate::{generate_complete, generate_erdos_renyi};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use solve::{brute_force_maxcut, local_search_improve, random_cut_baseline, BRUTE_FORCE_MAX_VERTICES};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

/// Weighted undirected simple graph.
///
/// Edge orientation is normalized to `u < v` on construction; edge order is
/// otherwise preserved, which makes text round-trips exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
    total_weight: u64,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate unordered pairs.
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if num_vertices == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut total: u64 = 0;
        for (a, b, w) in edges {
            if a >= num_vertices || b >= num_vertices {
                return Err(Error::invalid(format!(
                    "edge ({a}, {b}) out of range for {num_vertices} vertices"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop on vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
            total = total
                .checked_add(w)
                .ok_or_else(|| Error::invalid("total edge weight overflows u64"))?;
            out.push(Edge { u, v, w });
        }
        Ok(Graph { num_vertices, edges: out, total_weight: total })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sum of all edge weights (W).
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// True when every edge has weight 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1)
    }

    /// Adjacency lists of `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut local = vec![usize::MAX; self.num_vertices];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.num_vertices {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            local[v] = i;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (a, b) = (local[e.u], local[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, e.w))
        });
        Graph::new(vertices.len(), edges)
    }
}

/// Bit vector over vertices; `true` places the vertex in S.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutAssignment {
    bits: Vec<bool>,
}

impl CutAssignment {
    pub fn new(bits: Vec<bool>) -> Self {
        CutAssignment { bits }
    }

    pub fn zeros(len: usize) -> Self {
        CutAssignment { bits: vec![false; len] }
    }

    /// Reads bit `i` of `index` as vertex `i`, matching the qubit ordering of
    /// the simulator (qubit 0 is the least significant bit).
    pub fn from_index(len: usize, index: u64) -> Self {
        CutAssignment { bits: (0..len).map(|i| (index >> i) & 1 == 1).collect() }
    }

    /// Inverse of [`CutAssignment::from_index`]. Only meaningful for len <= 64.
    pub fn to_index(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| if b { acc | (1 << i) } else { acc })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, vertex: usize) -> bool {
        self.bits[vertex]
    }

    pub fn set(&mut self, vertex: usize, value: bool) {
        self.bits[vertex] = value;
    }

    pub fn flip(&mut self, vertex: usize) {
        self.bits[vertex] = !self.bits[vertex];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Swaps S and T. The cut value is unchanged.
    pub fn complement(&self) -> Self {
        CutAssignment { bits: self.bits.iter().map(|b| !b).collect() }
    }
}

/// Vertex 0 first.
impl fmt::Display for CutAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CutAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!("bad assignment character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CutAssignment::new)
    }
}

/// Total weight of edges whose endpoints carry different bits.
pub fn cut_value(g: &Graph, a: &CutAssignment) -> Result<u64> {
    if a.len() != g.num_vertices() {
        return Err(Error::invalid(format!(
            "assignment has {} bits, graph has {} vertices",
            a.len(),
            g.num_vertices()
        )));
    }
    Ok(g.edges().iter().filter(|e| a.get(e.u) != a.get(e.v)).map(|e| e.w).sum())
}

/// `⌊n²·w/4⌋`, the MaxCut of the complete graph K_n with uniform weight `w`.
pub fn complete_graph_optimum(n: u64, w: u64) -> u64 {
    n * n * w / 4
}

/// `W/2`: every graph has a cut of at least half its total weight.
pub fn lower_bound(g: &Graph) -> Ratio<u64> {
    Ratio::new(g.total_weight(), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(0, 0, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1, 1), (1, 0, 2)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn normalizes_orientation() {
        let g = Graph::new(3, [(2, 0, 5)]).unwrap();
        assert_eq!(g.edges()[0], Edge { u: 0, v: 2, w: 5 });
        assert_eq!(g.total_weight(), 5);
    }

    #[test]
    fn triangle_cut() {
        let g = triangle();
        let a: CutAssignment = "011".parse().unwrap();
        assert_eq!(cut_value(&g, &a).unwrap(), 2);
        assert_eq!(cut_value(&g, &CutAssignment::zeros(3)).unwrap(), 0);
        assert!(cut_value(&g, &CutAssignment::zeros(4)).is_err());
    }

    #[test]
    fn index_round_trip() {
        let a = CutAssignment::from_index(5, 0b10110);
        assert_eq!(a.to_string(), "01101");
        assert_eq!(a.to_index(), 0b10110);
    }

    #[test]
    fn complete_optimum_values() {
        assert_eq!(complete_graph_optimum(8, 1), 16);
        assert_eq!(complete_graph_optimum(23, 1), 132);
        assert_eq!(complete_graph_optimum(4, 1), 4);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&triangle()), Ratio::new(3, 2));
        assert_eq!(lower_bound(&Graph::new(4, []).unwrap()), Ratio::from_integer(0));
    }

    #[test]
    fn induced() {
        let g = triangle();
        let sub = g.induced_subgraph(&[2, 0]).unwrap();
        assert_eq!(sub.num_edges(), 1);
        assert_eq!(sub.edges()[0], Edge { u: 0, v: 1, w: 1 });
    }
}
