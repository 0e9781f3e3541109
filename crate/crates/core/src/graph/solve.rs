use rand::Rng;

use super::{cut_value, CutAssignment, Graph};
use crate::error::{Error, Result};
use crate::objective::PairObjective;
use crate::rng;

/// Largest graph [`brute_force_maxcut`] will enumerate.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

/// Exact MaxCut by enumeration with vertex 0 pinned to T.
/// Ties resolve to the lowest bit-vector value.
pub fn brute_force_maxcut(g: &Graph) -> Result<(CutAssignment, u64)> {
    let (bits, value) = PairObjective::from_graph(g).solve_exact(BRUTE_FORCE_MAX_VERTICES)?;
    Ok((CutAssignment::new(bits), value))
}

/// Best of `trials` uniformly random assignments; first found wins ties.
pub fn random_cut_baseline(g: &Graph, trials: usize, seed: u64) -> Result<(CutAssignment, u64)> {
    if trials == 0 {
        return Err(Error::invalid("random baseline needs at least one trial"));
    }
    let mut rng = rng::seeded(seed);
    let mut best: Option<(CutAssignment, u64)> = None;
    for _ in 0..trials {
        let a = CutAssignment::new((0..g.num_vertices()).map(|_| rng.random::<bool>()).collect());
        let v = cut_value(g, &a)?;
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((a, v));
        }
    }
    Ok(best.expect("trials >= 1"))
}

/// Steepest-ascent single-vertex flips until no flip improves the cut.
pub fn local_search_improve(g: &Graph, a: &CutAssignment) -> Result<CutAssignment> {
    if a.len() != g.num_vertices() {
        return Err(Error::invalid("assignment length does not match graph"));
    }
    let adj = g.adjacency();
    let mut cur = a.clone();
    // gain[v] = weight to same-side neighbors - weight to other-side neighbors
    let gain_of = |cur: &CutAssignment, v: usize| -> i128 {
        adj[v]
            .iter()
            .map(|&(u, w)| if cur.get(u) == cur.get(v) { w as i128 } else { -(w as i128) })
            .sum()
    };
    let mut gain: Vec<i128> = (0..g.num_vertices()).map(|v| gain_of(&cur, v)).collect();
    loop {
        let Some((v, &best)) = gain
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
        else {
            return Ok(cur);
        };
        if best <= 0 {
            return Ok(cur);
        }
        cur.flip(v);
        gain[v] = -gain[v];
        for &(u, _) in &adj[v] {
            gain[u] = gain_of(&cur, u);
        }
    }
}
