//! Fault-tolerant +2 and +4 emulators for unweighted graphs.
//!
//! Light vertices (degree at most `d`) keep all their edges, dense vertices
//! keep edges to `ceil(d)` neighbors, and every vertex pair becomes an
//! emulator edge independently with probability `p`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::emulator::EmulatorGraph;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::rng::{stream_rng, Stream};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdditiveParams {
    pub f: usize,
    /// Density threshold.
    pub d: f64,
    /// Pair sampling probability, already capped at 1.
    pub p: f64,
    pub seed: u64,
}

impl AdditiveParams {
    /// `d = (fn)^(1/3)` when `f <= sqrt(n)`, else `2f`; `p = 12 d ln(n) / n`.
    pub fn plus4(n: usize, f: usize, seed: u64) -> Self {
        let (nf, ff) = (n as f64, f as f64);
        let d = if ff <= nf.sqrt() { (ff * nf).cbrt() } else { 2.0 * ff };
        AdditiveParams {
            f,
            d,
            p: pair_probability(12.0, d, n),
            seed,
        }
    }

    /// `d = (fn)^(1/2)`; `p = 6 d ln(n) / n`.
    pub fn plus2(n: usize, f: usize, seed: u64) -> Self {
        let d = (f as f64 * n as f64).sqrt();
        AdditiveParams {
            f,
            d,
            p: pair_probability(6.0, d, n),
            seed,
        }
    }

    /// Number of neighbors a dense vertex keeps.
    pub fn kept_per_dense(&self) -> usize {
        self.d.ceil() as usize
    }
}

fn pair_probability(constant: f64, d: f64, n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let n = n as f64;
    (constant * d * n.ln() / n).min(1.0)
}

/// Vertices whose degree exceeds `d`.
pub fn dense_vertices(g: &WeightedGraph, d: f64) -> Vec<Vertex> {
    (0..g.n()).filter(|&v| g.degree(v) as f64 > d).collect()
}

pub fn build_additive_with(g: &Arc<WeightedGraph>, params: &AdditiveParams) -> Result<EmulatorGraph> {
    if !g.is_unweighted() {
        return Err(Error::InvalidParameter(
            "additive emulators require an unweighted graph".into(),
        ));
    }
    let mut kept = BTreeSet::new();
    let keep = params.kept_per_dense();
    for v in 0..g.n() {
        if g.degree(v) as f64 <= params.d {
            kept.extend(g.neighbors(v).iter().map(|&(_, e)| e));
        } else {
            let mut nbrs: Vec<(Vertex, usize)> = g.neighbors(v).to_vec();
            nbrs.sort_unstable();
            kept.extend(nbrs.iter().take(keep).map(|&(_, e)| e));
        }
    }
    let mut h = EmulatorGraph::new(g.clone());
    for e in kept {
        h.add_spanner_edge(e, None)?;
    }
    let mut rng = stream_rng(params.seed, Stream::Additive);
    let n = g.n();
    for s in 0..n {
        for t in s + 1..n {
            if params.p >= 1.0 || rng.gen::<f64>() < params.p {
                h.add_emulator_edge(s, t)?;
            }
        }
    }
    Ok(h)
}

/// Fault-tolerant +4 emulator.
pub fn build_additive4(g: &Arc<WeightedGraph>, f: usize, seed: u64) -> Result<EmulatorGraph> {
    build_additive_with(g, &AdditiveParams::plus4(g.n(), f, seed))
}

/// Fault-tolerant +2 emulator.
pub fn build_additive2(g: &Arc<WeightedGraph>, f: usize, seed: u64) -> Result<EmulatorGraph> {
    build_additive_with(g, &AdditiveParams::plus2(g.n(), f, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_formulas() {
        let p = AdditiveParams::plus4(1_000_000, 8, 0);
        assert!((p.d - 200.0).abs() < 1e-9);
        assert!((p.p - (12.0 * 200.0 * 1e6f64.ln() / 1e6)).abs() < 1e-12);
        // f > sqrt(n) switches to d = 2f
        let p = AdditiveParams::plus4(100, 11, 0);
        assert_eq!(p.d, 22.0);
        assert_eq!(p.p, 1.0);
        let p = AdditiveParams::plus2(1_000_000, 4, 0);
        assert!((p.d - 2000.0).abs() < 1e-9);
        assert!((p.p - 6.0 * 2000.0 * 1e6f64.ln() / 1e6).abs() < 1e-12);
        assert_eq!(AdditiveParams::plus2(10_000, 4, 0).p, 1.0);
    }

    #[test]
    fn light_graph_is_copied() {
        let g = Arc::new(WeightedGraph::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap());
        let params = AdditiveParams {
            f: 1,
            d: 2.0,
            p: 0.0,
            seed: 1,
        };
        let h = build_additive_with(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 4);
        assert!(h.emulator_edges().is_empty());
    }

    #[test]
    fn dense_vertex_keeps_smallest_neighbors() {
        // star with center 0 and 6 leaves; leaves are light so every edge stays,
        // unless d < 1, where leaves are dense and keep their only edge anyway
        let g = Arc::new(WeightedGraph::unweighted(7, (1..7).map(|i| (0, i))).unwrap());
        let params = AdditiveParams {
            f: 1,
            d: 2.0,
            p: 0.0,
            seed: 0,
        };
        assert_eq!(dense_vertices(&g, params.d), vec![0]);
        let h = build_additive_with(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 6);

        // K5 with d = 2: every vertex is dense and keeps its 2 smallest neighbors,
        // so 3 and 4 both attach to 0 and 1
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        let g = Arc::new(WeightedGraph::unweighted(5, edges).unwrap());
        let h = build_additive_with(&g, &params).unwrap();
        let kept: Vec<(usize, usize)> = h.spanner_edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(kept, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn saturated_probability_adds_all_pairs() {
        let g = Arc::new(WeightedGraph::unweighted(6, [(0, 1), (2, 3)]).unwrap());
        let h = build_additive4(&g, 1, 9).unwrap();
        assert_eq!(h.emulator_edges().len(), 15);
    }

    #[test]
    fn weighted_input_rejected() {
        let g = Arc::new(WeightedGraph::new(2, [(0, 1, 2.0)]).unwrap());
        assert!(build_additive2(&g, 1, 0).is_err());
    }
}
