//! Exhaustive stretch verification and path-census counters.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::builder::LocalPath;
use crate::emulator::{EmulatorGraph, FaultedView, Metric};
use crate::error::{Error, Result};
use crate::graph::{sssp_masked, FaultSet, Vertex, WeightedGraph};
use crate::oracle::{count_subsets, fault_sets_up_to};

pub const DEFAULT_VERIFY_BUDGET: u128 = 1_000_000_000;
pub const MAX_REPORTED_VIOLATIONS: usize = 100;

/// Stretch allowance checked against `dist_{G\F}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum StretchBound {
    /// `dist_H <= t * dist_G`
    Multiplicative(f64),
    /// `dist_H <= dist_G + c`
    Additive(f64),
}

impl StretchBound {
    fn allowed(self, graph_dist: f64) -> f64 {
        match self {
            StretchBound::Multiplicative(t) => t * graph_dist,
            StretchBound::Additive(c) => graph_dist + c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// The emulator is farther than the allowance.
    Upper,
    /// The emulator is closer than the real graph.
    Lower,
}

fn ser_dist<S: Serializer>(d: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if d.is_finite() {
        s.serialize_f64(*d)
    } else {
        s.serialize_str("inf")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub faults: FaultSetList,
    pub u: Vertex,
    pub v: Vertex,
    #[serde(serialize_with = "ser_dist")]
    pub graph_dist: f64,
    #[serde(serialize_with = "ser_dist")]
    pub got: f64,
    #[serde(serialize_with = "ser_dist")]
    pub allowed: f64,
    pub kind: ViolationKind,
}

pub type FaultSetList = Vec<Vertex>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub bound: StretchBound,
    pub f: usize,
    pub fault_sets: u64,
    pub checked_pairs: u64,
    /// Largest `dist_H / dist_G` over pairs with finite positive `dist_G`.
    #[serde(serialize_with = "ser_dist")]
    pub worst_stretch: f64,
    /// Largest `dist_H - dist_G` over pairs with finite `dist_G`.
    #[serde(serialize_with = "ser_dist")]
    pub worst_excess: f64,
    pub violation_count: u64,
    /// The first violations in `(F, u, v)` enumeration order.
    pub violations: Vec<Violation>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Cap on `C(n, <= f) * n^2` elementary checks.
    pub budget: u128,
    pub max_reported: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            budget: DEFAULT_VERIFY_BUDGET,
            max_reported: MAX_REPORTED_VIOLATIONS,
        }
    }
}

/// Elementary checks an exhaustive verification of `n` vertices at fault budget `f` needs.
pub fn verification_cost(n: usize, f: usize) -> u128 {
    count_subsets(n, f).saturating_mul((n as u128) * (n as u128))
}

pub fn verify_multiplicative(g: &WeightedGraph, h: &EmulatorGraph, f: usize, t: f64) -> Result<VerificationReport> {
    verify(g, h, f, StretchBound::Multiplicative(t), &VerifyConfig::default())
}

pub fn verify_additive(g: &WeightedGraph, h: &EmulatorGraph, f: usize, c: f64) -> Result<VerificationReport> {
    verify(g, h, f, StretchBound::Additive(c), &VerifyConfig::default())
}

struct FaultOutcome {
    checked: u64,
    worst_stretch: f64,
    worst_excess: f64,
    violation_count: u64,
    violations: Vec<Violation>,
}

fn check_fault_set(
    g: &WeightedGraph,
    h: &EmulatorGraph,
    faults: &FaultSet,
    bound: StretchBound,
    max_reported: usize,
) -> FaultOutcome {
    let n = g.n();
    let blocked = faults.mask(n);
    let mut view = FaultedView::new(h, faults, Metric::Weighted);
    let mut out = FaultOutcome {
        checked: 0,
        worst_stretch: 0.0,
        worst_excess: 0.0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for u in (0..n).filter(|&u| !blocked[u]) {
        let gd = sssp_masked(g, &blocked, u);
        let hd = view.emulator_from(u, None);
        for v in (u + 1..n).filter(|&v| !blocked[v]) {
            out.checked += 1;
            let (real, got) = (gd[v], hd[v]);
            let tol = 1e-9 * real.max(1.0);
            let record = |allowed: f64, kind: ViolationKind, out: &mut FaultOutcome| {
                out.violation_count += 1;
                if out.violations.len() < max_reported {
                    out.violations.push(Violation {
                        faults: faults.as_slice().to_vec(),
                        u,
                        v,
                        graph_dist: real,
                        got,
                        allowed,
                        kind,
                    });
                }
            };
            if got < real - tol {
                record(real, ViolationKind::Lower, &mut out);
                continue;
            }
            if real.is_infinite() {
                continue;
            }
            let allowed = bound.allowed(real);
            if got > allowed + tol {
                record(allowed, ViolationKind::Upper, &mut out);
            }
            if real > 0.0 {
                out.worst_stretch = out.worst_stretch.max(got / real);
            }
            out.worst_excess = out.worst_excess.max(got - real);
        }
    }
    out
}

/// Check `dist_{G\F} <= dist_{H\F} <= allowance` for every `|F| <= f` and
/// every surviving pair.
pub fn verify(
    g: &WeightedGraph,
    h: &EmulatorGraph,
    f: usize,
    bound: StretchBound,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    if h.n() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "emulator has {} vertices but graph has {}",
            h.n(),
            g.n()
        )));
    }
    let needed = verification_cost(g.n(), f);
    if needed > config.budget {
        return Err(Error::Budget {
            what: "exhaustive verification",
            needed,
            limit: config.budget,
        });
    }
    let pool: Vec<Vertex> = (0..g.n()).collect();
    let mut report = VerificationReport {
        bound,
        f,
        fault_sets: 0,
        checked_pairs: 0,
        worst_stretch: 0.0,
        worst_excess: 0.0,
        violation_count: 0,
        violations: Vec::new(),
        passed: true,
    };
    let mut sets = fault_sets_up_to(&pool, f).peekable();
    const CHUNK: usize = 1024;
    while sets.peek().is_some() {
        let chunk: Vec<FaultSet> = sets.by_ref().take(CHUNK).collect();
        let outcomes: Vec<FaultOutcome> = chunk
            .par_iter()
            .map(|faults| check_fault_set(g, h, faults, bound, config.max_reported))
            .collect();
        for o in outcomes {
            report.fault_sets += 1;
            report.checked_pairs += o.checked;
            report.worst_stretch = report.worst_stretch.max(o.worst_stretch);
            report.worst_excess = report.worst_excess.max(o.worst_excess);
            report.violation_count += o.violation_count;
            let room = config.max_reported.saturating_sub(report.violations.len());
            report.violations.extend(o.violations.into_iter().take(room));
        }
    }
    report.passed = report.violation_count == 0;
    Ok(report)
}

/// Number of 3-edge spanner paths `(s, u, v, t)` whose middle edge outranks
/// both outer edges in insertion order. Each undirected path counts once.
pub fn count_middle_heavy_3paths(h: &EmulatorGraph) -> u64 {
    let mut count = 0;
    for (mid, e) in h.spanner_edges().iter().enumerate() {
        let lighter = |x: Vertex, skip: Vertex| -> Vec<Vertex> {
            h.spanner_neighbors(x)
                .iter()
                .filter(|&&(y, idx)| y != skip && idx < mid)
                .map(|&(y, _)| y)
                .collect()
        };
        let left = lighter(e.u, e.v);
        let right = lighter(e.v, e.u);
        for &s in &left {
            count += right.iter().filter(|&&t| t != s).count() as u64;
        }
    }
    count
}

pub const DEFAULT_COUNT_CAP: u128 = 100_000_000;

/// Number of `k`-edge alternating paths in `g` under the tie-broken weight
/// order: every even-numbered edge outranks its neighbors on the path (the
/// last edge, when `k` is even, only its predecessor). With `edge_simple`
/// no edge repeats; otherwise vertices and edges may repeat. Each undirected
/// path counts once.
pub fn count_alternating_kpaths(g: &WeightedGraph, k: usize, edge_simple: bool) -> Result<u64> {
    count_alternating_kpaths_capped(g, k, edge_simple, DEFAULT_COUNT_CAP)
}

pub fn count_alternating_kpaths_capped(g: &WeightedGraph, k: usize, edge_simple: bool, cap: u128) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut rank = vec![0usize; g.m()];
    for (r, e) in g.greedy_order().into_iter().enumerate() {
        rank[e] = r;
    }

    struct Walk<'a> {
        g: &'a WeightedGraph,
        rank: &'a [usize],
        k: usize,
        edge_simple: bool,
        used: Vec<usize>,
        visited: u128,
        cap: u128,
        found: u64,
    }

    impl Walk<'_> {
        fn extend(&mut self, at: Vertex) -> Result<()> {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::Budget {
                    what: "alternating path enumeration",
                    needed: self.visited,
                    limit: self.cap,
                });
            }
            let pos = self.used.len() + 1; // 1-based position of the next edge
            if pos > self.k {
                self.found += 1;
                return Ok(());
            }
            for &(y, e) in self.g.neighbors(at) {
                if let Some(&prev) = self.used.last() {
                    let ok = if pos.is_multiple_of(2) {
                        self.rank[e] > self.rank[prev]
                    } else {
                        self.rank[prev] > self.rank[e]
                    };
                    if !ok {
                        continue;
                    }
                }
                if self.edge_simple && self.used.contains(&e) {
                    continue;
                }
                self.used.push(e);
                self.extend(y)?;
                self.used.pop();
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        g,
        rank: &rank,
        k,
        edge_simple,
        used: Vec::with_capacity(k),
        visited: 0,
        cap,
        found: 0,
    };
    for start in 0..g.n() {
        walk.extend(start)?;
    }
    // odd k: both orientations alternate and are distinct; even k: at most one does
    Ok(if k % 2 == 1 { walk.found / 2 } else { walk.found })
}

fn path_edges_valid(path: &LocalPath, h: &EmulatorGraph) -> bool {
    path.vertices.len() == path.edges.len() + 1
        && path.edges.iter().zip(path.vertices.windows(2)).all(|(&e, w)| {
            h.spanner_edges()
                .get(e)
                .is_some_and(|se| (se.u, se.v) == crate::graph::ordered_pair(w[0], w[1]))
        })
}

pub fn is_simple(path: &LocalPath) -> bool {
    let mut seen = path.vertices.clone();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Alternation under spanner insertion rank.
pub fn is_alternating(path: &LocalPath) -> bool {
    let e = &path.edges;
    (1..e.len()).all(|i| {
        // i is the 0-based index of the later edge in the pair, so its
        // 1-based position is i + 1
        if (i + 1) % 2 == 0 {
            e[i] > e[i - 1]
        } else {
            e[i - 1] > e[i]
        }
    })
}

/// Consecutive path edges share their common vertex's bucket.
pub fn is_local(path: &LocalPath, h: &EmulatorGraph) -> bool {
    path_edges_valid(path, h)
        && path
            .edges
            .windows(2)
            .zip(&path.vertices[1..])
            .all(|(pair, &y)| h.bucket_of(pair[0], y) == h.bucket_of(pair[1], y))
}

/// No path vertex lies in the witness fault set of any path edge.
pub fn avoids_faults(path: &LocalPath, h: &EmulatorGraph) -> bool {
    path_edges_valid(path, h)
        && path.edges.iter().all(|&e| {
            h.witness(e)
                .is_none_or(|f| path.vertices.iter().all(|&x| !f.contains(x)))
        })
}

/// Simple, alternating, local and fault-avoiding.
pub fn is_sala(path: &LocalPath, h: &EmulatorGraph) -> bool {
    is_simple(path) && is_alternating(path) && is_local(path, h) && avoids_faults(path, h)
}
