use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

/// K_n with every edge of weight `w`.
pub fn generate_complete(n: usize, w: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    if w == 0 {
        return Err(Error::invalid("complete graph weight must be >= 1"));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, w)));
    Graph::new(n, edges)
}

/// G(n, p) with unit weights. Pairs are visited in lexicographic order and
/// each consumes exactly one uniform draw, so the edge set depends only on
/// `(n, p, seed)`.
pub fn generate_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v, 1));
            }
        }
    }
    Graph::new(n, edges)
}
