//! Input families: lower-bound blow-ups, projective-plane incidence graphs,
//! girth, and seeded random graphs.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::rng::{stream_rng, Stream};

/// Replace each vertex by `t` copies and each edge by a complete bipartite
/// graph between the copy sets. Copy `i` of vertex `u` gets id `u * t + i`.
pub fn blow_up(g: &WeightedGraph, t: usize) -> Result<WeightedGraph> {
    if t == 0 {
        return Err(Error::InvalidParameter("blow-up needs t >= 1".into()));
    }
    if !g.is_unweighted() {
        return Err(Error::InvalidParameter("blow-up expects an unweighted graph".into()));
    }
    let n = g
        .n()
        .checked_mul(t)
        .ok_or_else(|| Error::InvalidParameter(format!("{} * {t} vertices overflows", g.n())))?;
    t.checked_mul(t)
        .and_then(|tt| tt.checked_mul(g.m()))
        .ok_or_else(|| Error::InvalidParameter("blow-up edge count overflows".into()))?;
    let mut edges = Vec::with_capacity(t * t * g.m());
    for e in g.edges() {
        for i in 0..t {
            for j in 0..t {
                edges.push((e.u * t + i, e.v * t + j));
            }
        }
    }
    WeightedGraph::unweighted(n, edges)
}

/// Shortest cycle length, or `None` for a forest.
pub fn girth(g: &WeightedGraph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] >= b) {
                break;
            }
            for &(y, e) in g.neighbors(x) {
                if e == parent_edge[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    queue.push_back(y);
                } else {
                    let cycle = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
        parent_edge.iter_mut().for_each(|p| *p = usize::MAX);
    }
    best
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Point-line incidence graph of the projective plane over the prime field
/// `Z_q`. Points get ids `0..N` and lines `N..2N` with `N = q^2 + q + 1`.
pub fn projective_plane_incidence(q: usize) -> Result<WeightedGraph> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!(
            "projective plane order must be prime, got {q}"
        )));
    }
    // normalized representatives: first nonzero coordinate is 1
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            reps.push([1, a, b]);
        }
    }
    for b in 0..q {
        reps.push([0, 1, b]);
    }
    reps.push([0, 0, 1]);
    let count = reps.len();
    let mut edges = Vec::with_capacity((q + 1) * count);
    for (i, p) in reps.iter().enumerate() {
        for (j, l) in reps.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                edges.push((i, count + j));
            }
        }
    }
    WeightedGraph::unweighted(2 * count, edges)
}

/// The Heawood graph (incidence graph of the Fano plane).
pub fn heawood() -> WeightedGraph {
    projective_plane_incidence(2).expect("2 is prime")
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    WeightedGraph::unweighted(10, edges).expect("valid Petersen graph")
}

fn require_girth(base: &WeightedGraph, at_least: usize) -> Result<()> {
    match girth(base) {
        Some(gv) if gv < at_least => Err(Error::InvalidGraph(format!(
            "base graph has girth {gv}, need at least {at_least}"
        ))),
        _ => Ok(()),
    }
}

/// Blow-up of a girth-6 base with `floor(f / 4)` copies per vertex.
pub fn lb_instance_stretch3(f: usize, base: &WeightedGraph) -> Result<WeightedGraph> {
    if f < 4 {
        return Err(Error::InvalidParameter(format!(
            "stretch-3 instance needs f >= 4 (got {f}, t = floor(f/4) = 0)"
        )));
    }
    require_girth(base, 6)?;
    blow_up(base, f / 4)
}

/// Blow-up of a base with girth at least `2k + 2` using `ceil(sqrt(f))` copies.
pub fn lb_instance_stretch2k1(f: usize, base: &WeightedGraph, k: usize) -> Result<WeightedGraph> {
    if f == 0 {
        return Err(Error::InvalidParameter("f must be at least 1".into()));
    }
    require_girth(base, 2 * k + 2)?;
    blow_up(base, ceil_sqrt(f))
}

fn ceil_sqrt(f: usize) -> usize {
    let mut t = (f as f64).sqrt() as usize;
    while t * t < f {
        t += 1;
    }
    while t > 0 && (t - 1) * (t - 1) >= f {
        t -= 1;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeModel {
    /// Each pair independently with probability `p`.
    Gnp(f64),
    /// Exactly `m` distinct pairs chosen uniformly.
    Gnm(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Uniform integers in `lo..=hi`.
    UniformInt {
        lo: u32,
        hi: u32,
    },
    /// A random permutation of `1..=m`, so all weights differ.
    DistinctInt,
}

/// Seeded random graph. Pairs are indexed `(0,1), (0,2), ..., (n-2,n-1)`
/// and edges keep that order.
pub fn random_graph(n: usize, model: EdgeModel, weights: WeightMode, seed: u64) -> Result<WeightedGraph> {
    let mut rng = stream_rng(seed, Stream::Generator);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut chosen: Vec<usize> = match model {
        EdgeModel::Gnp(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
            }
            (0..pairs).filter(|_| p >= 1.0 || rng.gen::<f64>() < p).collect()
        }
        EdgeModel::Gnm(m) => {
            if m > pairs {
                return Err(Error::InvalidParameter(format!(
                    "{m} edges requested but only {pairs} pairs exist"
                )));
            }
            sample(&mut rng, pairs, m).into_vec()
        }
    };
    chosen.sort_unstable();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(chosen.len());
    let mut it = chosen.into_iter().peekable();
    'outer: for u in 0..n {
        for v in u + 1..n {
            // index of (u, v) in row-major upper-triangular order
            let idx = u * n - u * (u + 1) / 2 + (v - u - 1);
            match it.peek() {
                None => break 'outer,
                Some(&next) if next == idx => {
                    edges.push((u, v));
                    it.next();
                }
                _ => {}
            }
        }
    }
    let m = edges.len();
    let ws: Vec<f64> = match weights {
        WeightMode::Unit => vec![1.0; m],
        WeightMode::UniformInt { lo, hi } => {
            if lo == 0 || lo > hi {
                return Err(Error::InvalidParameter(format!("bad weight range {lo}..={hi}")));
            }
            (0..m).map(|_| rng.gen_range(lo..=hi) as f64).collect()
        }
        WeightMode::DistinctInt => {
            let mut w: Vec<f64> = (1..=m).map(|x| x as f64).collect();
            w.shuffle(&mut rng);
            w
        }
    };
    WeightedGraph::new(n, edges.into_iter().zip(ws).map(|((u, v), w)| (u, v, w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_basics() {
        let tri = WeightedGraph::unweighted(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(girth(&tri), Some(3));
        let tree = WeightedGraph::unweighted(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&petersen()), Some(5));
        let c7 = WeightedGraph::unweighted(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        assert_eq!(girth(&c7), Some(7));
    }

    #[test]
    fn heawood_shape() {
        let g = heawood();
        assert_eq!((g.n(), g.m()), (14, 21));
        assert_eq!(girth(&g), Some(6));
        assert!((0..14).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn pg3_shape() {
        let g = projective_plane_incidence(3).unwrap();
        assert_eq!((g.n(), g.m()), (26, 52));
        assert_eq!(girth(&g), Some(6));
        assert!(projective_plane_incidence(4).is_err());
        assert!(projective_plane_incidence(1).is_err());
    }

    #[test]
    fn blow_up_counts() {
        let e = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        let k33 = blow_up(&e, 3).unwrap();
        assert_eq!((k33.n(), k33.m()), (6, 9));
        let p2 = blow_up(&petersen(), 2).unwrap();
        assert_eq!((p2.n(), p2.m()), (20, 60));
        assert_eq!(girth(&p2), Some(4));
        let same = blow_up(&petersen(), 1).unwrap();
        assert_eq!(same.edges(), petersen().edges());
        assert!(blow_up(&e, 0).is_err());
    }

    #[test]
    fn lower_bound_instances() {
        let h = heawood();
        assert_eq!(lb_instance_stretch3(4, &h).unwrap().m(), 21);
        let g = lb_instance_stretch3(8, &h).unwrap();
        assert_eq!((g.n(), g.m()), (28, 84));
        assert!(lb_instance_stretch3(3, &h).is_err());
        let g = lb_instance_stretch2k1(9, &h, 2).unwrap();
        assert_eq!((g.n(), g.m()), (42, 189));
        assert_eq!(lb_instance_stretch2k1(1, &h, 2).unwrap().n(), 14);
        assert!(lb_instance_stretch2k1(4, &petersen(), 2).is_err());
        assert!(lb_instance_stretch3(4, &petersen()).is_err());
    }

    #[test]
    fn ceil_sqrt_values() {
        let got: Vec<usize> = [1, 2, 4, 5, 9, 10, 16, 17].iter().map(|&f| ceil_sqrt(f)).collect();
        assert_eq!(got, vec![1, 2, 2, 3, 3, 4, 4, 5]);
    }

    #[test]
    fn random_graph_models() {
        let empty = random_graph(10, EdgeModel::Gnp(0.0), WeightMode::Unit, 1).unwrap();
        assert_eq!(empty.m(), 0);
        let full = random_graph(10, EdgeModel::Gnp(1.0), WeightMode::Unit, 1).unwrap();
        assert_eq!(full.m(), 45);
        let g = random_graph(20, EdgeModel::Gnm(37), WeightMode::DistinctInt, 5).unwrap();
        assert_eq!(g.m(), 37);
        let mut ws: Vec<u64> = g.edges().iter().map(|e| e.w as u64).collect();
        ws.sort_unstable();
        assert_eq!(ws, (1..=37).collect::<Vec<_>>());
        let again = random_graph(20, EdgeModel::Gnm(37), WeightMode::DistinctInt, 5).unwrap();
        assert_eq!(g.to_edge_list(), again.to_edge_list());
        assert!(random_graph(4, EdgeModel::Gnm(7), WeightMode::Unit, 0).is_err());
        let r = random_graph(30, EdgeModel::Gnp(0.3), WeightMode::UniformInt { lo: 2, hi: 4 }, 3).unwrap();
        assert!(r.edges().iter().all(|e| (2.0..=4.0).contains(&e.w)));
    }
}
