//! Emulator graphs: spanner edges borrowed from the base graph plus weightless
//! emulator edges whose weight is the surviving base distance under each
//! fault set.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, ordered_pair, validate_query, Distance, FaultSet, Vertex, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpannerEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: f64,
    /// Index of the edge in the base graph.
    pub base_index: usize,
}

impl SpannerEdge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A construction result over a fixed base graph.
///
/// Spanner edges are stored in insertion order, which must be nondecreasing
/// in weight; the position of an edge in that list is its rank in the
/// tie-broken weight order. Incident spanner edges of each vertex are kept in
/// arrival order, and the `i`-th of them (0-based) lies in bucket `i / b`.
#[derive(Clone, Debug)]
pub struct EmulatorGraph {
    base: Arc<WeightedGraph>,
    spanner: Vec<SpannerEdge>,
    spanner_index: HashMap<(Vertex, Vertex), usize>,
    sp_adj: Vec<Vec<(Vertex, usize)>>,
    /// Slot of each spanner edge in `sp_adj` of its `u` and `v` endpoint.
    slots: Vec<(usize, usize)>,
    witness: Vec<Option<FaultSet>>,
    /// Number of emulator edges present when each spanner edge was inserted.
    em_before: Vec<usize>,
    emulator: Vec<(Vertex, Vertex)>,
    emulator_index: HashSet<(Vertex, Vertex)>,
    em_adj: Vec<Vec<Vertex>>,
    bucket_size: Option<usize>,
}

impl EmulatorGraph {
    pub fn new(base: Arc<WeightedGraph>) -> Self {
        let n = base.n();
        EmulatorGraph {
            base,
            spanner: Vec::new(),
            spanner_index: HashMap::new(),
            sp_adj: vec![Vec::new(); n],
            slots: Vec::new(),
            witness: Vec::new(),
            em_before: Vec::new(),
            emulator: Vec::new(),
            emulator_index: HashSet::new(),
            em_adj: vec![Vec::new(); n],
            bucket_size: None,
        }
    }

    /// Empty emulator whose spanner edges are grouped into buckets of `b`.
    pub fn with_buckets(base: Arc<WeightedGraph>, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidParameter("bucket size must be at least 1".into()));
        }
        let mut h = Self::new(base);
        h.bucket_size = Some(b);
        Ok(h)
    }

    /// The identity emulator: every base edge as a spanner edge.
    pub fn from_base(base: Arc<WeightedGraph>) -> Self {
        let mut h = Self::new(base.clone());
        for idx in base.greedy_order() {
            h.add_spanner_edge(idx, None).expect("greedy order is nondecreasing");
        }
        h
    }

    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<WeightedGraph> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn spanner_edges(&self) -> &[SpannerEdge] {
        &self.spanner
    }

    pub fn emulator_edges(&self) -> &[(Vertex, Vertex)] {
        &self.emulator
    }

    pub fn total_edges(&self) -> usize {
        self.spanner.len() + self.emulator.len()
    }

    pub fn bucket_size(&self) -> Option<usize> {
        self.bucket_size
    }

    pub fn witness(&self, spanner_idx: usize) -> Option<&FaultSet> {
        self.witness[spanner_idx].as_ref()
    }

    pub fn spanner_edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.spanner_index.get(&ordered_pair(u, v)).copied()
    }

    pub fn has_spanner_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.spanner_edge_index(u, v).is_some()
    }

    pub fn has_emulator_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.emulator_index.contains(&ordered_pair(u, v))
    }

    /// Whether `(u, v)` is present as either kind of edge.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.has_spanner_edge(u, v) || self.has_emulator_edge(u, v)
    }

    /// Incident spanner edges of `v` in arrival order, as `(neighbor, spanner index)`.
    pub fn spanner_neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.sp_adj[v]
    }

    pub fn emulator_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.em_adj[v]
    }

    /// 0-based arrival slot of spanner edge `e` at its endpoint `v`.
    pub fn slot_at(&self, e: usize, v: Vertex) -> usize {
        let edge = &self.spanner[e];
        if v == edge.u {
            self.slots[e].0
        } else {
            assert_eq!(v, edge.v, "vertex {v} is not an endpoint of spanner edge {e}");
            self.slots[e].1
        }
    }

    /// 0-based bucket of spanner edge `e` at endpoint `v` (0 when unbucketed).
    pub fn bucket_of(&self, e: usize, v: Vertex) -> usize {
        match self.bucket_size {
            Some(b) => self.slot_at(e, v) / b,
            None => 0,
        }
    }

    /// Incident spanner edges of `v` that share bucket `bucket`.
    pub fn bucket_members(&self, v: Vertex, bucket: usize) -> &[(Vertex, usize)] {
        let adj = &self.sp_adj[v];
        match self.bucket_size {
            Some(b) => {
                let lo = (bucket * b).min(adj.len());
                let hi = (lo + b).min(adj.len());
                &adj[lo..hi]
            }
            None => adj,
        }
    }

    /// Append base edge `base_index` as the next spanner edge.
    pub fn add_spanner_edge(&mut self, base_index: usize, witness: Option<FaultSet>) -> Result<usize> {
        if base_index >= self.base.m() {
            return Err(Error::InvalidParameter(format!(
                "base edge index {base_index} out of range"
            )));
        }
        let e = self.base.edges()[base_index];
        let key = (e.u, e.v);
        if self.spanner_index.contains_key(&key) {
            return Err(Error::InvalidParameter(format!(
                "spanner edge ({}, {}) already present",
                e.u, e.v
            )));
        }
        if let Some(last) = self.spanner.last() {
            if e.w < last.w {
                return Err(Error::InvalidParameter(format!(
                    "spanner edge ({}, {}) of weight {} inserted after weight {}",
                    e.u, e.v, e.w, last.w
                )));
            }
        }
        let idx = self.spanner.len();
        self.spanner.push(SpannerEdge {
            u: e.u,
            v: e.v,
            w: e.w,
            base_index,
        });
        self.spanner_index.insert(key, idx);
        self.slots.push((self.sp_adj[e.u].len(), self.sp_adj[e.v].len()));
        self.sp_adj[e.u].push((e.v, idx));
        self.sp_adj[e.v].push((e.u, idx));
        self.witness.push(witness);
        self.em_before.push(self.emulator.len());
        Ok(idx)
    }

    /// Append the base edge between `u` and `v` as a spanner edge.
    pub fn add_spanner_pair(&mut self, u: Vertex, v: Vertex, witness: Option<FaultSet>) -> Result<usize> {
        let idx = self
            .base
            .edge_index(u, v)
            .ok_or_else(|| Error::InvalidParameter(format!("({u}, {v}) is not an edge of the base graph")))?;
        self.add_spanner_edge(idx, witness)
    }

    /// Add emulator edge `{s, t}`; returns false if it was already present.
    pub fn add_emulator_edge(&mut self, s: Vertex, t: Vertex) -> Result<bool> {
        self.base.check_vertex(s)?;
        self.base.check_vertex(t)?;
        if s == t {
            return Err(Error::InvalidParameter(format!("emulator self-loop at {s}")));
        }
        let key = ordered_pair(s, t);
        if !self.emulator_index.insert(key) {
            return Ok(false);
        }
        self.emulator.push(key);
        self.em_adj[s].push(t);
        self.em_adj[t].push(s);
        Ok(true)
    }

    /// The graph as it stood just before spanner edge `i` was inserted: the
    /// first `i` spanner edges and the emulator edges added before them.
    /// Passing `i = spanner_edges().len()` gives a full copy.
    pub fn prefix_before(&self, i: usize) -> EmulatorGraph {
        let mut h = EmulatorGraph::new(self.base.clone());
        h.bucket_size = self.bucket_size;
        let em_len = self.em_before.get(i).copied().unwrap_or(self.emulator.len());
        let mut em = 0;
        for (idx, e) in self.spanner.iter().take(i).enumerate() {
            while em < self.em_before[idx] && em < em_len {
                let (s, t) = self.emulator[em];
                h.add_emulator_edge(s, t).expect("valid emulator edge");
                em += 1;
            }
            h.add_spanner_edge(e.base_index, self.witness[idx].clone())
                .expect("prefix of a valid spanner");
        }
        while em < em_len {
            let (s, t) = self.emulator[em];
            h.add_emulator_edge(s, t).expect("valid emulator edge");
            em += 1;
        }
        h
    }

    /// Text serialization with sections `SPANNER`, `EMULATOR`, `WITNESS` and
    /// (when bucketed) `BUCKETS`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        out.push_str("SPANNER\n");
        for e in &self.spanner {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out.push_str("EMULATOR\n");
        for &(s, t) in &self.emulator {
            let _ = writeln!(out, "{s} {t}");
        }
        out.push_str("WITNESS\n");
        for (e, w) in self.spanner.iter().zip(&self.witness) {
            if let Some(f) = w {
                let _ = write!(out, "{} {} :", e.u, e.v);
                for x in f.iter() {
                    let _ = write!(out, " {x}");
                }
                out.push('\n');
            }
        }
        if let Some(b) = self.bucket_size {
            out.push_str("BUCKETS\n");
            let _ = writeln!(out, "b {b}");
        }
        out
    }

    /// Parse [`EmulatorGraph::to_text`] output against its base graph.
    pub fn parse(text: &str, base: Arc<WeightedGraph>) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            Header,
            Spanner,
            Emulator,
            Witness,
            Buckets,
        }
        let mut section = Section::Header;
        let mut spanner = Vec::new();
        let mut emulator = Vec::new();
        let mut witness: HashMap<(Vertex, Vertex), FaultSet> = HashMap::new();
        let mut bucket_size = None;
        let mut seen_n = false;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "SPANNER" => {
                    section = Section::Spanner;
                    continue;
                }
                "EMULATOR" => {
                    section = Section::Emulator;
                    continue;
                }
                "WITNESS" => {
                    section = Section::Witness;
                    continue;
                }
                "BUCKETS" => {
                    section = Section::Buckets;
                    continue;
                }
                _ => {}
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("invalid integer {s:?}")))
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match section {
                Section::Header => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(Error::parse(lineno, "expected \"n <count>\" header"));
                    }
                    let n = num(fields[1])?;
                    if n != base.n() {
                        return Err(Error::parse(
                            lineno,
                            format!("emulator has n = {n} but base graph has n = {}", base.n()),
                        ));
                    }
                    seen_n = true;
                }
                Section::Spanner => {
                    if fields.len() != 3 {
                        return Err(Error::parse(lineno, "expected \"u v w\""));
                    }
                    let w: f64 = fields[2]
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("invalid weight {:?}", fields[2])))?;
                    spanner.push((lineno, num(fields[0])?, num(fields[1])?, w));
                }
                Section::Emulator => {
                    if fields.len() != 2 {
                        return Err(Error::parse(lineno, "expected \"s t\""));
                    }
                    emulator.push((lineno, num(fields[0])?, num(fields[1])?));
                }
                Section::Witness => {
                    if fields.len() < 3 || fields[2] != ":" {
                        return Err(Error::parse(lineno, "expected \"u v : f1 f2 ...\""));
                    }
                    let key = ordered_pair(num(fields[0])?, num(fields[1])?);
                    let set = fields[3..].iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?;
                    witness.insert(key, FaultSet::new(set));
                }
                Section::Buckets => {
                    if fields.len() != 2 || fields[0] != "b" {
                        return Err(Error::parse(lineno, "expected \"b <size>\""));
                    }
                    bucket_size = Some(num(fields[1])?);
                }
            }
        }
        if !seen_n {
            return Err(Error::parse(1, "missing \"n <count>\" header"));
        }
        let mut h = match bucket_size {
            Some(b) => EmulatorGraph::with_buckets(base.clone(), b)?,
            None => EmulatorGraph::new(base.clone()),
        };
        for (lineno, u, v, w) in spanner {
            let idx = base
                .edge_index(u, v)
                .ok_or_else(|| Error::parse(lineno, format!("spanner edge ({u}, {v}) is not in the base graph")))?;
            if base.edges()[idx].w != w {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "spanner edge ({u}, {v}) has weight {w}, base has {}",
                        base.edges()[idx].w
                    ),
                ));
            }
            let f = witness.remove(&ordered_pair(u, v));
            h.add_spanner_edge(idx, f)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        for (lineno, s, t) in emulator {
            h.add_emulator_edge(s, t)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        if let Some((&(u, v), _)) = witness.iter().next() {
            return Err(Error::InvalidGraph(format!(
                "witness listed for ({u}, {v}) which is not a spanner edge"
            )));
        }
        Ok(h)
    }
}

/// How edge lengths are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Spanner edges keep their weight; emulator edges weigh `dist_{G\F}`.
    Weighted,
    /// Every graph edge weighs 1; emulator edges weigh the hop distance in `G\F`.
    Hops,
}

/// Distances in `H \ F` and `G \ F` for one fixed fault set.
///
/// Base-graph single-source distances from emulator endpoints are computed
/// on demand and cached for the lifetime of the view.
pub struct FaultedView<'a> {
    h: &'a EmulatorGraph,
    metric: Metric,
    blocked: Vec<bool>,
    base_cache: HashMap<Vertex, Vec<f64>>,
}

fn base_sssp(g: &WeightedGraph, metric: Metric, blocked: &[bool], src: Vertex) -> Vec<f64> {
    dijkstra(g.n(), src, None, |x, out| {
        for &(y, e) in g.neighbors(x) {
            if !blocked[y] {
                let w = match metric {
                    Metric::Weighted => g.weight(e),
                    Metric::Hops => 1.0,
                };
                out.push((y, w));
            }
        }
    })
}

impl<'a> FaultedView<'a> {
    pub fn new(h: &'a EmulatorGraph, faults: &FaultSet, metric: Metric) -> Self {
        FaultedView {
            h,
            metric,
            blocked: faults.mask(h.n()),
            base_cache: HashMap::new(),
        }
    }

    pub fn is_blocked(&self, v: Vertex) -> bool {
        self.blocked[v]
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Distances from `src` in `G \ F`.
    pub fn base_from(&mut self, src: Vertex) -> &[f64] {
        let FaultedView {
            h,
            metric,
            blocked,
            base_cache,
        } = self;
        base_cache
            .entry(src)
            .or_insert_with(|| base_sssp(h.base(), *metric, blocked, src))
    }

    /// Distances from `src` in `H \ F`, stopping early at `target`.
    pub fn emulator_from(&mut self, src: Vertex, target: Option<Vertex>) -> Vec<f64> {
        let FaultedView {
            h,
            metric,
            blocked,
            base_cache,
        } = self;
        let h: &EmulatorGraph = h;
        let metric = *metric;
        dijkstra(h.n(), src, target, |x, out| {
            for &(y, e) in h.spanner_neighbors(x) {
                if !blocked[y] {
                    let w = match metric {
                        Metric::Weighted => h.spanner[e].w,
                        Metric::Hops => 1.0,
                    };
                    out.push((y, w));
                }
            }
            let em = h.emulator_neighbors(x);
            if em.is_empty() {
                return;
            }
            let from_x = base_cache
                .entry(x)
                .or_insert_with(|| base_sssp(h.base(), metric, blocked, x));
            for &y in em {
                if !blocked[y] && from_x[y].is_finite() {
                    out.push((y, from_x[y]));
                }
            }
        })
    }

    pub fn emulator_dist(&mut self, u: Vertex, v: Vertex) -> Distance {
        Distance::new(self.emulator_from(u, Some(v))[v])
    }

    pub fn graph_dist(&mut self, u: Vertex, v: Vertex) -> Distance {
        Distance::new(self.base_from(u)[v])
    }
}

/// Shortest `u`-`v` distance in `H \ F` with emulator edges reweighted to
/// their surviving base distance.
pub fn emulator_dist(h: &EmulatorGraph, faults: &FaultSet, u: Vertex, v: Vertex) -> Result<Distance> {
    validate_query(h.base(), faults, u, v)?;
    Ok(FaultedView::new(h, faults, Metric::Weighted).emulator_dist(u, v))
}

/// [`emulator_dist`] on the unweighted view: graph edges weigh 1 and
/// emulator edges weigh the hop distance in `G \ F`.
pub fn hop_dist(h: &EmulatorGraph, faults: &FaultSet, u: Vertex, v: Vertex) -> Result<Distance> {
    validate_query(h.base(), faults, u, v)?;
    Ok(FaultedView::new(h, faults, Metric::Hops).emulator_dist(u, v))
}
