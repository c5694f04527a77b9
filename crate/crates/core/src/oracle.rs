//! Forced-edge oracles: does some fault set push `dist_{H\F}(u, v)` past a bound?
//!
//! [`exhaustive_witness`] enumerates every fault set up to size `f`.
//! [`find_fault_set`] is the polynomial-time greedy length-bounded cut: it
//! answers YES whenever a cut of size `f` exists and NO whenever no cut of
//! size `(2k-2)f` exists.

use itertools::Itertools;
use serde::Serialize;

use crate::emulator::{EmulatorGraph, FaultedView, Metric};
use crate::error::{Error, Result};
use crate::graph::{FaultSet, Vertex};

pub const DEFAULT_SUBSET_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Exhaustive,
    Approx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessResult {
    pub verdict: Verdict,
    /// Present iff the verdict is YES.
    pub fault_set: Option<FaultSet>,
    pub method: Method,
}

impl WitnessResult {
    fn yes(fault_set: FaultSet, method: Method) -> Self {
        WitnessResult {
            verdict: Verdict::Yes,
            fault_set: Some(fault_set),
            method,
        }
    }

    fn no(method: Method) -> Self {
        WitnessResult {
            verdict: Verdict::No,
            fault_set: None,
            method,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Number of subsets of a `pool`-element set with at most `max_size` elements.
pub fn count_subsets(pool: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for s in 0..=max_size.min(pool) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((pool - s) as u128) / (s as u128 + 1);
    }
    total
}

/// All subsets of `pool` of size `0..=max_size`, smallest size first and
/// lexicographic within a size.
pub fn fault_sets_up_to(pool: &[usize], max_size: usize) -> impl Iterator<Item = FaultSet> + '_ {
    (0..=max_size.min(pool.len())).flat_map(move |s| pool.iter().copied().combinations(s).map(FaultSet::new))
}

#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveConfig {
    pub metric: Metric,
    pub subset_cap: u128,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        ExhaustiveConfig {
            metric: Metric::Weighted,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

fn check_pair(h: &EmulatorGraph, u: Vertex, v: Vertex) -> Result<()> {
    h.base().check_vertex(u)?;
    h.base().check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidParameter(format!(
            "witness query needs u != v, got {u} twice"
        )));
    }
    Ok(())
}

/// First fault set `F` (by size, then lexicographically) with `|F| <= f`
/// and `dist_{H\F}(u, v) > bound` under the weighted metric.
pub fn exhaustive_witness(h: &EmulatorGraph, u: Vertex, v: Vertex, f: usize, bound: f64) -> Result<WitnessResult> {
    exhaustive_witness_with(h, u, v, f, bound, &ExhaustiveConfig::default())
}

pub fn exhaustive_witness_with(
    h: &EmulatorGraph,
    u: Vertex,
    v: Vertex,
    f: usize,
    bound: f64,
    config: &ExhaustiveConfig,
) -> Result<WitnessResult> {
    check_pair(h, u, v)?;
    let pool: Vec<Vertex> = (0..h.n()).filter(|&x| x != u && x != v).collect();
    let needed = count_subsets(pool.len(), f);
    if needed > config.subset_cap {
        return Err(Error::Budget {
            what: "exhaustive fault-set enumeration",
            needed,
            limit: config.subset_cap,
        });
    }
    // A direct spanner edge survives every fault set.
    if let Some(e) = h.spanner_edge_index(u, v) {
        let w = match config.metric {
            Metric::Weighted => h.spanner_edges()[e].w,
            Metric::Hops => 1.0,
        };
        if w <= bound {
            return Ok(WitnessResult::no(Method::Exhaustive));
        }
    }
    for faults in fault_sets_up_to(&pool, f) {
        let d = FaultedView::new(h, &faults, config.metric).emulator_dist(u, v);
        if d.value() > bound {
            return Ok(WitnessResult::yes(faults, Method::Exhaustive));
        }
    }
    Ok(WitnessResult::no(Method::Exhaustive))
}

/// [`find_fault_set`] output together with the paths it cut.
#[derive(Clone, Debug)]
pub struct FindTrace {
    pub result: WitnessResult,
    /// The accumulated fault set, also when the verdict is NO.
    pub fault_set: FaultSet,
    /// Expanded base-graph path removed in each iteration.
    pub cut_paths: Vec<Vec<Vertex>>,
}

impl FindTrace {
    pub fn iterations(&self) -> usize {
        self.cut_paths.len()
    }
}

/// Greedy length-bounded vertex cut on the unweighted view of `H`.
///
/// Returns NO immediately if `(u, v)` is an edge of `H`. Otherwise removes
/// shortest `u`-`v` paths (emulator hops expanded into base paths) until the
/// hop distance exceeds `2k - 1`, and answers YES iff the removed vertex set
/// has at most `(2k - 2) f` elements.
pub fn find_fault_set(h: &EmulatorGraph, u: Vertex, v: Vertex, k: usize, f: usize) -> Result<WitnessResult> {
    Ok(find_fault_set_traced(h, u, v, k, f)?.result)
}

pub fn find_fault_set_traced(h: &EmulatorGraph, u: Vertex, v: Vertex, k: usize, f: usize) -> Result<FindTrace> {
    check_pair(h, u, v)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if h.has_edge(u, v) {
        return Ok(FindTrace {
            result: WitnessResult::no(Method::Approx),
            fault_set: FaultSet::empty(),
            cut_paths: Vec::new(),
        });
    }
    let limit = (2 * k - 1) as f64;
    let mut faults = FaultSet::empty();
    let mut cut_paths = Vec::new();
    loop {
        let mut view = FaultedView::new(h, &faults, Metric::Hops);
        let to_v = view.emulator_from(v, None);
        if to_v[u] > limit {
            break;
        }
        let path = expanded_shortest_path(h, &mut view, &to_v, u, v);
        let mut grew = false;
        for &x in &path {
            if x != u && x != v {
                grew |= faults.insert(x);
            }
        }
        if !grew || faults.len() > h.n().saturating_sub(2) {
            return Err(Error::InvalidGraph(format!(
                "fault-set search between {u} and {v} stalled at |F| = {}",
                faults.len()
            )));
        }
        cut_paths.push(path);
    }
    let result = if faults.len() <= (2 * k - 2) * f {
        WitnessResult::yes(faults.clone(), Method::Approx)
    } else {
        WitnessResult::no(Method::Approx)
    };
    Ok(FindTrace {
        result,
        fault_set: faults,
        cut_paths,
    })
}

/// Lexicographically smallest shortest `u`-`v` path in `H \ F` under hop
/// weights, with every emulator hop replaced by the lexicographically
/// smallest shortest path in `G \ F`. `to_v` holds hop distances to `v`.
fn expanded_shortest_path(
    h: &EmulatorGraph,
    view: &mut FaultedView<'_>,
    to_v: &[f64],
    u: Vertex,
    v: Vertex,
) -> Vec<Vertex> {
    let mut hops: Vec<(Vertex, bool)> = Vec::new(); // (next vertex, via emulator edge)
    let mut cur = u;
    while cur != v {
        let mut best: Option<(Vertex, bool)> = None;
        for &(y, _) in h.spanner_neighbors(cur) {
            if !view.is_blocked(y) && 1.0 + to_v[y] == to_v[cur] && best.is_none_or(|(b, _)| y < b) {
                best = Some((y, false));
            }
        }
        let em: Vec<Vertex> = h
            .emulator_neighbors(cur)
            .iter()
            .copied()
            .filter(|&y| !view.is_blocked(y))
            .collect();
        if !em.is_empty() {
            let from_cur = view.base_from(cur).to_vec();
            for y in em {
                if from_cur[y] + to_v[y] == to_v[cur] && best.is_none_or(|(b, _)| y < b) {
                    best = Some((y, true));
                }
            }
        }
        let (next, via_emulator) = best.expect("a shortest path continues from every vertex on it");
        hops.push((next, via_emulator));
        cur = next;
    }

    let mut path = vec![u];
    let mut cur = u;
    for (next, via_emulator) in hops {
        if via_emulator {
            let to_next = view.base_from(next).to_vec();
            let g = h.base();
            let mut x = cur;
            while x != next {
                let y = g
                    .neighbors(x)
                    .iter()
                    .map(|&(y, _)| y)
                    .filter(|&y| !view.is_blocked(y) && 1.0 + to_next[y] == to_next[x])
                    .min()
                    .expect("base shortest path continues");
                path.push(y);
                x = y;
            }
        } else {
            path.push(next);
        }
        cur = next;
    }
    path
}
