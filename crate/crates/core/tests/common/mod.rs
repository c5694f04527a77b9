//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's distance or counting code.

#![allow(dead_code)]

use std::sync::Arc;

use ftem::{EmulatorGraph, WeightedGraph};

pub const INF: f64 = f64::INFINITY;

/// All-pairs distances by Floyd-Warshall over `n` vertices with `faulted` removed.
pub fn floyd(n: usize, edges: &[(usize, usize, f64)], faulted: &[usize]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        if !faulted.contains(&v) {
            row[v] = 0.0;
        }
    }
    for &(a, b, w) in edges {
        if faulted.contains(&a) || faulted.contains(&b) {
            continue;
        }
        if w < d[a][b] {
            d[a][b] = w;
            d[b][a] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            if d[i][m] == INF {
                continue;
            }
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn base_edges(g: &WeightedGraph, unit: bool) -> Vec<(usize, usize, f64)> {
    g.edges()
        .iter()
        .map(|e| (e.u, e.v, if unit { 1.0 } else { e.w }))
        .collect()
}

/// Distances in `G \ F`.
pub fn graph_apsp(g: &WeightedGraph, faulted: &[usize]) -> Vec<Vec<f64>> {
    floyd(g.n(), &base_edges(g, false), faulted)
}

/// Distances in `H \ F` where emulator edges take their `G \ F` distance.
/// With `hops`, every base edge and spanner edge counts 1.
pub fn emulator_apsp(h: &EmulatorGraph, faulted: &[usize], hops: bool) -> Vec<Vec<f64>> {
    let g = h.base();
    let inner = floyd(g.n(), &base_edges(g, hops), faulted);
    let mut edges: Vec<(usize, usize, f64)> = h
        .spanner_edges()
        .iter()
        .map(|e| (e.u, e.v, if hops { 1.0 } else { e.w }))
        .collect();
    for &(s, t) in h.emulator_edges() {
        edges.push((s, t, inner[s][t]));
    }
    floyd(g.n(), &edges, faulted)
}

/// Every subset of `pool` with at most `max` elements.
pub fn subsets(pool: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &x in pool {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(grown);
    }
    out
}

/// Rank of each edge under (weight, index) order.
pub fn ranks(g: &WeightedGraph) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.m()).collect();
    idx.sort_by(|&a, &b| g.edges()[a].w.partial_cmp(&g.edges()[b].w).unwrap().then(a.cmp(&b)));
    let mut rank = vec![0; g.m()];
    for (r, e) in idx.into_iter().enumerate() {
        rank[e] = r;
    }
    rank
}

fn alternates(seq: &[usize], rank: &[usize]) -> bool {
    (1..seq.len()).all(|i| {
        if i % 2 == 1 {
            rank[seq[i]] > rank[seq[i - 1]]
        } else {
            rank[seq[i - 1]] > rank[seq[i]]
        }
    })
}

/// Alternating `k`-edge paths by listing every vertex sequence.
/// Undirected paths count once: a sequence counts unless its reversal also
/// alternates and is lexicographically smaller.
pub fn brute_alternating(g: &WeightedGraph, k: usize, edge_simple: bool) -> u64 {
    let n = g.n();
    let rank = ranks(g);
    let mut count = 0;
    let mut seq = vec![0usize; k + 1];
    let total = n.pow(k as u32 + 1);
    for code in 0..total {
        let mut c = code;
        for slot in seq.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        let edges: Option<Vec<usize>> = seq.windows(2).map(|w| g.edge_index(w[0], w[1])).collect();
        let Some(edges) = edges else { continue };
        if edge_simple {
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != edges.len() {
                continue;
            }
        }
        if !alternates(&edges, &rank) {
            continue;
        }
        let rev_seq: Vec<usize> = seq.iter().rev().copied().collect();
        let rev_edges: Vec<usize> = edges.iter().rev().copied().collect();
        if alternates(&rev_edges, &rank) && rev_seq < seq {
            continue;
        }
        count += 1;
    }
    count
}

/// Middle-heavy 3-paths over spanner edges by scanning vertex quadruples.
pub fn brute_middle_heavy(h: &EmulatorGraph) -> u64 {
    let n = h.n();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                    if !distinct || a > d {
                        continue;
                    }
                    let (Some(x), Some(y), Some(z)) = (
                        h.spanner_edge_index(a, b),
                        h.spanner_edge_index(b, c),
                        h.spanner_edge_index(c, d),
                    ) else {
                        continue;
                    };
                    if y > x && y > z {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Largest ratio and count of upper/lower violations over every
/// `|F| <= f`, computed with [`floyd`].
pub struct Check {
    pub upper: usize,
    pub lower: usize,
}

pub fn brute_check(h: &EmulatorGraph, f: usize, allowed: impl Fn(f64) -> f64) -> Check {
    let g = h.base();
    let pool: Vec<usize> = (0..g.n()).collect();
    let mut check = Check { upper: 0, lower: 0 };
    for faults in subsets(&pool, f) {
        let dg = graph_apsp(g, &faults);
        let dh = emulator_apsp(h, &faults, false);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if faults.contains(&u) || faults.contains(&v) {
                    continue;
                }
                if dh[u][v] < dg[u][v] {
                    check.lower += 1;
                }
                if dg[u][v].is_finite() && dh[u][v] > allowed(dg[u][v]) {
                    check.upper += 1;
                }
            }
        }
    }
    check
}

pub fn arc(g: WeightedGraph) -> Arc<WeightedGraph> {
    Arc::new(g)
}
