//! Goemans–Williamson-style classical baseline.
//!
//! The MaxCut SDP is replaced by its low-rank factorization: each vertex gets
//! a unit vector in `R^rank` and projected gradient ascent maximizes
//! `Σ w_ij (1 − ⟨v_i, v_j⟩) / 2`. Random hyperplanes then round the vectors
//! to cuts. This is not an exact SDP solve, so reports call it "GW-style".

use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::{cut_value, CutAssignment, Graph};
use crate::report::{Method, RunReport};
use crate::rng;

const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct GwConfig {
    /// Defaults to [`recommended_rank`].
    pub rank: Option<usize>,
    pub max_iters: usize,
    /// Relative objective change below which ascent stops.
    pub tol: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for GwConfig {
    fn default() -> Self {
        GwConfig { rank: None, max_iters: 2000, tol: 1e-7, trials: 64, seed: 0 }
    }
}

/// `⌈√(2n)⌉`, clamped to at least 2.
pub fn recommended_rank(n: usize) -> usize {
    ((2.0 * n as f64).sqrt().ceil() as usize).max(2)
}

/// Unit vectors for every vertex and the relaxed objective they reach.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorEmbedding {
    pub rank: usize,
    pub vectors: Vec<Vec<f64>>,
    pub objective: f64,
    pub iterations: usize,
    /// Objective after initialization and after every accepted step.
    pub trace: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Relaxed objective `Σ w (1 − ⟨v_u, v_v⟩) / 2`.
pub fn relaxation_objective(g: &Graph, vectors: &[Vec<f64>]) -> f64 {
    g.edges()
        .iter()
        .map(|e| e.w as f64 * (1.0 - dot(&vectors[e.u], &vectors[e.v])) / 2.0)
        .sum()
}

pub fn solve_relaxation(g: &Graph, rank: usize, max_iters: usize, tol: f64, seed: u64) -> Result<VectorEmbedding> {
    if rank < 2 {
        return Err(Error::invalid(format!("rank {rank} < 2")));
    }
    let mut rng = rng::seeded(seed);
    let mut vectors: Vec<Vec<f64>> = (0..g.num_vertices())
        .map(|_| {
            let mut v: Vec<f64> = (0..rank).map(|_| rng.sample(StandardNormal)).collect();
            normalize(&mut v);
            v
        })
        .collect();
    let adj = g.adjacency();
    let mut objective = relaxation_objective(g, &vectors);
    let mut trace = vec![objective];
    let mut step = INITIAL_STEP;
    let mut iterations = 0;

    'ascent: while iterations < max_iters {
        // Riemannian gradient: Euclidean gradient -½ Σ w v_j with its radial
        // component removed.
        let tangents: Vec<Vec<f64>> = vectors
            .iter()
            .enumerate()
            .map(|(i, vi)| {
                let mut grad = vec![0.0; rank];
                for &(j, w) in &adj[i] {
                    for (gk, vk) in grad.iter_mut().zip(&vectors[j]) {
                        *gk -= 0.5 * w as f64 * vk;
                    }
                }
                let radial = dot(&grad, vi);
                grad.iter().zip(vi).map(|(gk, vk)| gk - radial * vk).collect()
            })
            .collect();
        let candidate = loop {
            let cand: Vec<Vec<f64>> = vectors
                .iter()
                .zip(&tangents)
                .map(|(v, t)| {
                    let mut next: Vec<f64> = v.iter().zip(t).map(|(a, b)| a + step * b).collect();
                    normalize(&mut next);
                    next
                })
                .collect();
            let value = relaxation_objective(g, &cand);
            if value >= objective {
                break (cand, value);
            }
            step /= 2.0;
            if step < MIN_STEP {
                break 'ascent;
            }
        };
        iterations += 1;
        let (next, value) = candidate;
        let change = (value - objective) / objective.abs().max(1e-12);
        vectors = next;
        objective = value;
        trace.push(objective);
        if change < tol {
            break;
        }
    }
    Ok(VectorEmbedding { rank, vectors, objective, iterations, trace })
}

/// Cut from the hyperplane with normal `normal`: bit `i` is `⟨v_i, normal⟩ > 0`.
fn round_with(e: &VectorEmbedding, normal: &[f64]) -> CutAssignment {
    CutAssignment::new(e.vectors.iter().map(|v| dot(v, normal) > 0.0).collect())
}

/// Cut values of `trials` independent roundings. Trial `t` draws its normal
/// from ChaCha stream `t` of `seed`, so trials can be evaluated in any order.
pub fn rounding_values(e: &VectorEmbedding, g: &Graph, trials: usize, seed: u64) -> Result<Vec<(CutAssignment, u64)>> {
    if e.vectors.len() != g.num_vertices() {
        return Err(Error::invalid("embedding does not match graph"));
    }
    (0..trials as u64)
        .map(|t| {
            let mut rng = rng::stream(seed, t);
            let normal: Vec<f64> = (0..e.rank).map(|_| rng.sample(StandardNormal)).collect();
            let a = round_with(e, &normal);
            let v = cut_value(g, &a)?;
            Ok((a, v))
        })
        .collect()
}

/// Best of `trials` hyperplane roundings; the first of equal values wins.
pub fn hyperplane_round(e: &VectorEmbedding, g: &Graph, trials: usize, seed: u64) -> Result<(CutAssignment, u64)> {
    if trials == 0 {
        return Err(Error::invalid("rounding needs at least one trial"));
    }
    let mut best: Option<(CutAssignment, u64)> = None;
    for (a, v) in rounding_values(e, g, trials, seed)? {
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((a, v));
        }
    }
    Ok(best.expect("trials >= 1"))
}

pub fn gw_maxcut(g: &Graph, cfg: &GwConfig) -> Result<RunReport> {
    let start = Instant::now();
    let rank = cfg.rank.unwrap_or_else(|| recommended_rank(g.num_vertices()));
    let e = solve_relaxation(g, rank, cfg.max_iters, cfg.tol, cfg.seed)?;
    let (a, _) = hyperplane_round(&e, g, cfg.trials, rng::derive_seed(cfg.seed, 1))?;
    let mut report = RunReport::new(Method::Gw, g, a, cfg.seed)?;
    report.measurements = cfg.trials as u64;
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_maxcut, generate_complete, generate_erdos_renyi};

    #[test]
    fn relaxation_examples() {
        let edge = Graph::new(2, [(0, 1, 1)]).unwrap();
        let e = solve_relaxation(&edge, 2, 2000, 1e-7, 1).unwrap();
        assert!((e.objective - 1.0).abs() < 1e-6, "{}", e.objective);

        let k3 = generate_complete(3, 1).unwrap();
        let e = solve_relaxation(&k3, recommended_rank(3), 2000, 1e-7, 1).unwrap();
        assert!((e.objective - 2.25).abs() < 1e-4, "{}", e.objective);

        let empty = Graph::new(4, []).unwrap();
        assert_eq!(solve_relaxation(&empty, 3, 2000, 1e-7, 1).unwrap().objective, 0.0);

        assert!(solve_relaxation(&k3, 1, 10, 1e-7, 1).is_err());
    }

    #[test]
    fn unit_norm_and_monotone() {
        let g = generate_erdos_renyi(14, 0.4, 2).unwrap();
        let e = solve_relaxation(&g, recommended_rank(14), 2000, 1e-7, 3).unwrap();
        for v in &e.vectors {
            assert!((dot(v, v).sqrt() - 1.0).abs() < 1e-9);
        }
        assert!(e.trace.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        assert!(e.objective >= g.total_weight() as f64 / 2.0 - 1e-6);
    }

    fn embedding(vectors: Vec<Vec<f64>>) -> VectorEmbedding {
        VectorEmbedding { rank: vectors[0].len(), vectors, objective: 0.0, iterations: 0, trace: vec![] }
    }

    #[test]
    fn rounding_examples() {
        let edge = Graph::new(2, [(0, 1, 1)]).unwrap();
        let anti = embedding(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        assert_eq!(hyperplane_round(&anti, &edge, 1, 4).unwrap().1, 1);

        let k3 = generate_complete(3, 1).unwrap();
        let s = 3f64.sqrt() / 2.0;
        let tri = embedding(vec![vec![1.0, 0.0], vec![-0.5, s], vec![-0.5, -s]]);
        assert_eq!(hyperplane_round(&tri, &k3, 64, 4).unwrap().1, 2);

        let same = embedding(vec![vec![0.0, 1.0]; 3]);
        assert_eq!(hyperplane_round(&same, &k3, 64, 4).unwrap().1, 0);
        assert!(hyperplane_round(&same, &k3, 0, 4).is_err());
    }

    #[test]
    fn rounding_mean_does_not_exceed_relaxation() {
        for seed in 0..4 {
            let g = generate_erdos_renyi(12, 0.5, seed).unwrap();
            let e = solve_relaxation(&g, recommended_rank(12), 2000, 1e-7, seed).unwrap();
            let vals = rounding_values(&e, &g, 200, seed).unwrap();
            let mean = vals.iter().map(|(_, v)| *v as f64).sum::<f64>() / vals.len() as f64;
            assert!(mean <= e.objective + 1e-6 * g.total_weight() as f64);
        }
    }

    #[test]
    fn gw_reports() {
        let k8 = generate_complete(8, 1).unwrap();
        let r = gw_maxcut(&k8, &GwConfig::default()).unwrap();
        assert!((15..=16).contains(&r.best_value));
        r.verify(&k8).unwrap();

        for seed in 0..5 {
            let g = generate_erdos_renyi(10, 0.5, seed).unwrap();
            let r = gw_maxcut(&g, &GwConfig { seed, ..Default::default() }).unwrap();
            assert!(r.best_value <= brute_force_maxcut(&g).unwrap().1);
        }
    }

    #[test]
    fn loose_floor_over_seeds() {
        let g = generate_erdos_renyi(16, 0.3, 9).unwrap();
        for seed in 0..20 {
            let r = gw_maxcut(&g, &GwConfig { seed, ..Default::default() }).unwrap();
            assert!(r.best_value as f64 >= 0.4 * g.total_weight() as f64);
        }
    }
}
