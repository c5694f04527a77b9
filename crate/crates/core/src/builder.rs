//! Greedy constructions of fault-tolerant spanners and multiplicative
//! emulators.
//!
//! All three builders share one loop: scan base edges by nondecreasing
//! `(weight, index)`, ask the witness oracle whether some fault set forces the
//! edge, and if so keep it as a spanner edge. The emulator variants then
//! sample shortcut edges over the short spanner paths the new edge completes.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::emulator::{EmulatorGraph, Metric};
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::oracle::{exhaustive_witness_with, find_fault_set, ExhaustiveConfig, DEFAULT_SUBSET_CAP};
use crate::rng::{stream_rng, Stream};

pub const DEFAULT_PATH_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckMode {
    /// Enumerate every fault set of size at most `f`.
    Exhaustive,
    /// Polynomial-time greedy cut; witnesses may hold up to `(2k-2)f` vertices.
    Approx,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildParams {
    pub f: usize,
    /// Stretch parameter; the target stretch is `2k - 1`.
    pub k: usize,
    /// Sampling scale: a local path with `j` edges is sampled with probability `d^-(j-1)`.
    pub d: f64,
    /// Bucket size for locality.
    pub b: usize,
    pub check_mode: CheckMode,
    pub seed: u64,
    pub polylog_constant: f64,
    pub c_b: f64,
    pub subset_cap: u128,
    pub path_cap: u128,
    /// Enumerate only vertex-simple local paths.
    pub simple_paths_only: bool,
}

impl BuildParams {
    /// Hand-set `d` and `b`; everything else takes its default.
    pub fn new(f: usize, k: usize, d: f64, b: usize) -> Self {
        BuildParams {
            f,
            k,
            d,
            b,
            check_mode: CheckMode::Exhaustive,
            seed: 0,
            polylog_constant: 1.0,
            c_b: 1.0,
            subset_cap: DEFAULT_SUBSET_CAP,
            path_cap: DEFAULT_PATH_CAP,
            simple_paths_only: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: CheckMode) -> Self {
        self.check_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !(self.d >= 1.0 && self.d.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "d must be a finite value >= 1, got {}",
                self.d
            )));
        }
        if self.b < 1 {
            return Err(Error::InvalidParameter("bucket size b must be at least 1".into()));
        }
        Ok(())
    }

    /// Largest witness size the configured check can report.
    pub fn witness_bound(&self) -> usize {
        match self.check_mode {
            CheckMode::Exhaustive => self.f,
            CheckMode::Approx => (2 * self.k).saturating_sub(2) * self.f,
        }
    }
}

/// Constants feeding [`choose_params_with`].
#[derive(Clone, Copy, Debug)]
pub struct ParamRecipe {
    /// Multiplier on the polylog factor.
    pub polylog_constant: f64,
    /// Power of `ln n` in the polylog factor; 0 drops it.
    pub log_power: f64,
    /// Constant in the `c * f` floor.
    pub c: f64,
    /// Constant in `b = c_b * k * d`.
    pub c_b: f64,
    pub check_mode: CheckMode,
}

impl Default for ParamRecipe {
    fn default() -> Self {
        ParamRecipe {
            polylog_constant: 1.0,
            log_power: 1.0,
            c: 1.0,
            c_b: 1.0,
            check_mode: CheckMode::Exhaustive,
        }
    }
}

/// Parameters for `n` vertices with the default recipe (one power of `ln n`,
/// `c_b = 1`, exhaustive checking).
pub fn choose_params(n: usize, f: usize, k: usize, polylog_constant: f64, c: f64) -> BuildParams {
    choose_params_with(
        n,
        f,
        k,
        &ParamRecipe {
            polylog_constant,
            c,
            ..ParamRecipe::default()
        },
    )
}

/// Sampling scale
/// `d = max(polylog * f^e * n^(1/k), c * f)` with `e = 1/2 - 1/(2k)` for odd
/// `k` and `e = 1/2` for even `k`; multiplied by `2k - 2` under approximate
/// checking. `b = ceil(c_b * k * d)`.
pub fn choose_params_with(n: usize, f: usize, k: usize, recipe: &ParamRecipe) -> BuildParams {
    let k = k.max(1);
    let nf = n as f64;
    let ff = f as f64;
    let exponent = if k % 2 == 1 { 0.5 - 1.0 / (2.0 * k as f64) } else { 0.5 };
    let polylog = recipe.polylog_constant * nf.ln().max(0.0).powf(recipe.log_power);
    let density = polylog * ff.powf(exponent) * nf.powf(1.0 / k as f64);
    let mut d = density.max(recipe.c * ff);
    if recipe.check_mode == CheckMode::Approx && k >= 2 {
        d *= (2 * k - 2) as f64;
    }
    let d = d.max(1.0);
    let b = ((recipe.c_b * k as f64 * d).ceil() as usize).max(1);
    BuildParams {
        f,
        k,
        d,
        b,
        check_mode: recipe.check_mode,
        seed: 0,
        polylog_constant: recipe.polylog_constant,
        c_b: recipe.c_b,
        subset_cap: DEFAULT_SUBSET_CAP,
        path_cap: DEFAULT_PATH_CAP,
        simple_paths_only: true,
    }
}

/// A path of spanner edges, stored with its smaller endpoint first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalPath {
    pub vertices: Vec<Vertex>,
    /// Spanner edge indices, `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<usize>,
}

impl LocalPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().expect("paths are nonempty"))
    }

    /// Build from a vertex sequence, looking up the spanner edges.
    pub fn from_vertices(h: &EmulatorGraph, vertices: Vec<Vertex>) -> Result<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| {
                h.spanner_edge_index(w[0], w[1])
                    .ok_or_else(|| Error::InvalidParameter(format!("({}, {}) is not a spanner edge", w[0], w[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalPath { vertices, edges })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PathEnumeration {
    pub cap: u128,
    pub simple_only: bool,
}

impl Default for PathEnumeration {
    fn default() -> Self {
        PathEnumeration {
            cap: DEFAULT_PATH_CAP,
            simple_only: true,
        }
    }
}

/// Every local path of at most `k` spanner edges that uses spanner edge `e`.
pub fn enumerate_local_paths_through(h: &EmulatorGraph, e: usize, k: usize) -> Result<Vec<LocalPath>> {
    enumerate_local_paths_through_with(h, e, k, &PathEnumeration::default())
}

struct Extension {
    vertices: Vec<Vertex>,
    edges: Vec<usize>,
}

/// Walks away from `start` whose first edge shares `start`'s bucket with
/// `first`, each later step staying in the bucket of the edge used to arrive.
fn extensions(
    h: &EmulatorGraph,
    start: Vertex,
    first: usize,
    max_len: usize,
    forbidden: [Vertex; 2],
    config: &PathEnumeration,
    out: &mut Vec<Extension>,
) -> Result<()> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        h: &EmulatorGraph,
        at: Vertex,
        incoming: usize,
        max_len: usize,
        forbidden: [Vertex; 2],
        config: &PathEnumeration,
        cur: &mut Extension,
        out: &mut Vec<Extension>,
    ) -> Result<()> {
        out.push(Extension {
            vertices: cur.vertices.clone(),
            edges: cur.edges.clone(),
        });
        if out.len() as u128 > config.cap {
            return Err(Error::Budget {
                what: "local path enumeration",
                needed: out.len() as u128,
                limit: config.cap,
            });
        }
        if cur.edges.len() == max_len {
            return Ok(());
        }
        let bucket = h.bucket_of(incoming, at);
        for &(y, e) in h.bucket_members(at, bucket) {
            if e == incoming {
                continue;
            }
            if config.simple_only && (forbidden.contains(&y) || cur.vertices.contains(&y)) {
                continue;
            }
            cur.vertices.push(y);
            cur.edges.push(e);
            dfs(h, y, e, max_len, forbidden, config, cur, out)?;
            cur.vertices.pop();
            cur.edges.pop();
        }
        Ok(())
    }
    let mut cur = Extension {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    dfs(h, start, first, max_len, forbidden, config, &mut cur, out)
}

pub fn enumerate_local_paths_through_with(
    h: &EmulatorGraph,
    e: usize,
    k: usize,
    config: &PathEnumeration,
) -> Result<Vec<LocalPath>> {
    if e >= h.spanner_edges().len() {
        return Err(Error::InvalidParameter(format!("spanner edge {e} does not exist")));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let edge = h.spanner_edges()[e];
    let (u, v) = (edge.u, edge.v);
    let mut left = Vec::new();
    let mut right = Vec::new();
    extensions(h, u, e, k - 1, [u, v], config, &mut left)?;
    extensions(h, v, e, k - 1, [u, v], config, &mut right)?;

    let mut paths = Vec::new();
    for l in &left {
        for r in &right {
            if l.edges.len() + r.edges.len() + 1 > k {
                continue;
            }
            if config.simple_only && l.vertices.iter().any(|x| r.vertices.contains(x)) {
                continue;
            }
            let mut vertices: Vec<Vertex> = l.vertices.iter().rev().copied().collect();
            vertices.push(u);
            vertices.push(v);
            vertices.extend(&r.vertices);
            let mut edges: Vec<usize> = l.edges.iter().rev().copied().collect();
            edges.push(e);
            edges.extend(&r.edges);
            if vertices[0] > *vertices.last().unwrap() {
                vertices.reverse();
                edges.reverse();
            }
            paths.push(LocalPath { vertices, edges });
            if paths.len() as u128 > config.cap {
                return Err(Error::Budget {
                    what: "local path enumeration",
                    needed: paths.len() as u128,
                    limit: config.cap,
                });
            }
        }
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.vertices.cmp(&b.vertices)));
    Ok(paths)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sampling {
    None,
    Neighborhoods,
    LocalPaths,
}

fn greedy(g: &Arc<WeightedGraph>, params: &BuildParams, k: usize, sampling: Sampling) -> Result<EmulatorGraph> {
    params.validate()?;
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut h = match sampling {
        Sampling::LocalPaths => EmulatorGraph::with_buckets(g.clone(), params.b)?,
        _ => EmulatorGraph::new(g.clone()),
    };
    let stretch = (2 * k - 1) as f64;
    let f = params.f;
    let exhaustive = ExhaustiveConfig {
        metric: Metric::Weighted,
        subset_cap: params.subset_cap,
    };
    let enumeration = PathEnumeration {
        cap: params.path_cap,
        simple_only: params.simple_paths_only,
    };
    let mut rng = stream_rng(params.seed, Stream::Builder);

    for idx in g.greedy_order() {
        let edge = g.edges()[idx];
        let (u, v) = (edge.u, edge.v);
        let verdict = match params.check_mode {
            CheckMode::Exhaustive => exhaustive_witness_with(&h, u, v, f, stretch * edge.w, &exhaustive)?,
            CheckMode::Approx => find_fault_set(&h, u, v, k, f)?,
        };
        let Some(faults) = verdict.fault_set else {
            continue;
        };
        let sidx = h.add_spanner_edge(idx, Some(faults.clone()))?;
        match sampling {
            Sampling::None => {}
            Sampling::Neighborhoods => {
                let p = params.d.powi(-2);
                let left: Vec<Vertex> = h
                    .spanner_neighbors(u)
                    .iter()
                    .map(|&(s, _)| s)
                    .filter(|&s| s != v && !faults.contains(s))
                    .collect();
                let right: Vec<Vertex> = h
                    .spanner_neighbors(v)
                    .iter()
                    .map(|&(t, _)| t)
                    .filter(|&t| t != u && !faults.contains(t))
                    .collect();
                for &s in &left {
                    for &t in &right {
                        if s != t && rng.gen::<f64>() < p {
                            h.add_emulator_edge(s, t)?;
                        }
                    }
                }
            }
            Sampling::LocalPaths => {
                let paths = enumerate_local_paths_through_with(&h, sidx, k, &enumeration)?;
                for path in paths {
                    let j = path.len();
                    // a single edge would only duplicate itself
                    if j < 2 {
                        continue;
                    }
                    let (s, t) = path.endpoints();
                    if s == t {
                        continue;
                    }
                    let p = params.d.powi(-((j - 1) as i32));
                    if rng.gen::<f64>() < p {
                        h.add_emulator_edge(s, t)?;
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Fault-tolerant 5-emulator: greedy at stretch 5, sampling each middle-heavy
/// 3-path `(s, u, v, t)` that avoids the witness fault set with probability
/// `d^-2`. `params.k` is ignored; the construction is fixed at `k = 3`.
pub fn build_vft_5_emulator(g: &Arc<WeightedGraph>, params: &BuildParams) -> Result<EmulatorGraph> {
    greedy(g, params, 3, Sampling::Neighborhoods)
}

/// Fault-tolerant `(2k-1)`-emulator with locality buckets of size `params.b`.
pub fn build_vft_emulator(g: &Arc<WeightedGraph>, params: &BuildParams) -> Result<EmulatorGraph> {
    if params.k < 2 {
        return Err(Error::InvalidParameter(format!(
            "emulator construction needs k >= 2, got {}",
            params.k
        )));
    }
    greedy(g, params, params.k, Sampling::LocalPaths)
}

/// The fault-tolerant greedy `(2k-1)`-spanner; no emulator edges.
pub fn build_vft_spanner_greedy(g: &Arc<WeightedGraph>, params: &BuildParams) -> Result<EmulatorGraph> {
    greedy(g, params, params.k, Sampling::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exhaustive_witness;

    fn unit(n: usize, edges: &[(usize, usize)]) -> Arc<WeightedGraph> {
        Arc::new(WeightedGraph::unweighted(n, edges.iter().copied()).unwrap())
    }

    #[test]
    fn choose_params_odd_k_without_log() {
        let recipe = ParamRecipe {
            log_power: 0.0,
            c: 1.0,
            ..Default::default()
        };
        let p = choose_params_with(64, 1, 3, &recipe);
        assert!((p.d - 4.0).abs() < 1e-9, "d = {}", p.d);
        assert_eq!(p.b, 12);
        let p = choose_params_with(64, 1, 3, &ParamRecipe { c: 7.0, ..recipe });
        assert_eq!(p.d, 7.0);
    }

    #[test]
    fn choose_params_cf_branch_dominates_for_large_f() {
        let n = 1_000_000;
        let p = choose_params_with(
            n,
            n,
            3,
            &ParamRecipe {
                log_power: 0.0,
                c: 1.0,
                ..Default::default()
            },
        );
        // density term: 10^6^(1/3) * 10^(6/3) = 10^4 << 10^6
        assert_eq!(p.d, n as f64);
    }

    #[test]
    fn choose_params_even_k() {
        let recipe = ParamRecipe {
            log_power: 0.0,
            c: 1.0,
            ..Default::default()
        };
        // 4^(1/2) * 81^(1/2) = 18
        let p = choose_params_with(81, 4, 2, &recipe);
        assert!((p.d - 18.0).abs() < 1e-9, "d = {}", p.d);
        let approx = choose_params_with(
            81,
            4,
            2,
            &ParamRecipe {
                check_mode: CheckMode::Approx,
                ..recipe
            },
        );
        assert!((approx.d - 36.0).abs() < 1e-9);
    }

    #[test]
    fn choose_params_includes_log_by_default() {
        let p = choose_params(64, 1, 3, 1.0, 1.0);
        assert!((p.d - 4.0 * 64f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn lone_edge_is_its_own_local_path() {
        let g = unit(2, &[(0, 1)]);
        let mut h = EmulatorGraph::with_buckets(g, 2).unwrap();
        h.add_spanner_pair(0, 1, None).unwrap();
        let paths = enumerate_local_paths_through(&h, 0, 3).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices, vec![0, 1]);
    }

    #[test]
    fn path_graph_local_paths() {
        // a-b-c-d = 0-1-2-3, inserted (a,b), (b,c), (c,d)
        let g = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut h = EmulatorGraph::with_buckets(g, 2).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 3)] {
            h.add_spanner_pair(a, b, None).unwrap();
        }
        let paths: Vec<Vec<usize>> = enumerate_local_paths_through(&h, 2, 3)
            .unwrap()
            .into_iter()
            .map(|p| p.vertices)
            .collect();
        assert_eq!(paths, vec![vec![2, 3], vec![1, 2, 3], vec![0, 1, 2, 3]]);
        let short: Vec<usize> = enumerate_local_paths_through(&h, 2, 2)
            .unwrap()
            .iter()
            .map(|p| p.len())
            .collect();
        assert_eq!(short, vec![1, 2]);
    }

    #[test]
    fn bucket_boundary_blocks_pairing() {
        // star center 0 with edges to 1, 2, 3 (b = 2), then (3, 4)
        let g = unit(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]);
        let mut h = EmulatorGraph::with_buckets(g, 2).unwrap();
        for (a, b) in [(0, 1), (0, 2), (0, 3)] {
            h.add_spanner_pair(a, b, None).unwrap();
        }
        let through_third: Vec<Vec<usize>> = enumerate_local_paths_through(&h, 2, 2)
            .unwrap()
            .into_iter()
            .map(|p| p.vertices)
            .collect();
        // edge #3 at vertex 0 is alone in bucket 2: no 2-path via 0
        assert_eq!(through_third, vec![vec![0, 3]]);
        let through_second: Vec<Vec<usize>> = enumerate_local_paths_through(&h, 1, 2)
            .unwrap()
            .into_iter()
            .map(|p| p.vertices)
            .collect();
        assert_eq!(through_second, vec![vec![0, 2], vec![1, 0, 2]]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let g = unit(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let mut h = EmulatorGraph::with_buckets(g, 10).unwrap();
        for v in 1..6 {
            h.add_spanner_pair(0, v, None).unwrap();
        }
        let cfg = PathEnumeration {
            cap: 2,
            simple_only: true,
        };
        assert!(enumerate_local_paths_through_with(&h, 4, 2, &cfg)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn single_edge_graph() {
        let g = unit(2, &[(0, 1)]);
        let params = BuildParams::new(1, 3, 2.0, 6);
        let h = build_vft_5_emulator(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 1);
        assert!(h.emulator_edges().is_empty());
    }

    #[test]
    fn star_keeps_every_edge() {
        let edges: Vec<(usize, usize)> = (1..7).map(|i| (0, i)).collect();
        let g = unit(7, &edges);
        let params = BuildParams::new(0, 3, 1.0, 3);
        let h = build_vft_5_emulator(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 6);
        for i in 0..h.spanner_edges().len() {
            assert_eq!(h.witness(i).map(|f| f.len()), Some(0));
        }
    }

    #[test]
    fn six_cycle_drops_one_edge_at_stretch_five() {
        let g = unit(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let params = BuildParams::new(0, 3, 1e9, 1000);
        let h = build_vft_spanner_greedy(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 5);
        assert!(!h.has_spanner_edge(5, 0));
        let h = build_vft_emulator(&g, &params).unwrap();
        assert_eq!(h.spanner_edges().len(), 5);
    }

    #[test]
    fn k4_greedy_spanner() {
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b));
            }
        }
        let g = unit(4, &edges);
        let h0 = build_vft_spanner_greedy(&g, &BuildParams::new(0, 2, 1.0, 1)).unwrap();
        assert_eq!(h0.spanner_edges().len(), 3);
        let h3 = build_vft_spanner_greedy(&g, &BuildParams::new(3, 2, 1.0, 1)).unwrap();
        assert_eq!(h3.spanner_edges().len(), 6);
    }

    #[test]
    fn tree_input_is_kept() {
        let g = unit(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]);
        let h = build_vft_spanner_greedy(&g, &BuildParams::new(1, 2, 1.0, 1)).unwrap();
        assert_eq!(h.spanner_edges().len(), 5);
        assert!(h.emulator_edges().is_empty());
    }

    #[test]
    fn witnesses_force_their_edges() {
        let g = Arc::new(
            WeightedGraph::new(
                6,
                [
                    (0, 1, 1.0),
                    (1, 2, 2.0),
                    (2, 3, 3.0),
                    (3, 4, 4.0),
                    (4, 5, 5.0),
                    (5, 0, 6.0),
                    (0, 3, 7.0),
                    (1, 4, 8.0),
                ],
            )
            .unwrap(),
        );
        let params = BuildParams::new(1, 2, 1.5, 2).with_seed(3);
        let h = build_vft_emulator(&g, &params).unwrap();
        for (i, e) in h.spanner_edges().iter().enumerate() {
            let prefix = h.prefix_before(i);
            let f = h.witness(i).unwrap();
            let d = crate::emulator::emulator_dist(&prefix, f, e.u, e.v).unwrap();
            assert!(d.value() > 3.0 * e.w);
            let first = exhaustive_witness(&prefix, e.u, e.v, 1, 3.0 * e.w).unwrap();
            assert_eq!(first.fault_set.as_ref(), Some(f));
        }
    }

    #[test]
    fn emulator_builder_rejects_k1() {
        let g = unit(2, &[(0, 1)]);
        assert!(build_vft_emulator(&g, &BuildParams::new(1, 1, 1.0, 1)).is_err());
        assert!(build_vft_emulator(&g, &BuildParams::new(1, 2, 0.5, 1)).is_err());
    }
}
