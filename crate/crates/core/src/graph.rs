//! Undirected weighted graphs, fault sets and fault-masked shortest paths.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::ops::Add;
use std::path::Path;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A nonnegative path length, or +infinity when no path exists.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Distance(f64);

impl Distance {
    pub const ZERO: Distance = Distance(0.0);
    pub const INFINITY: Distance = Distance(f64::INFINITY);

    pub fn new(value: f64) -> Self {
        assert!(value >= 0.0, "distance must be nonnegative, got {value}");
        Distance(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn scaled(self, factor: f64) -> Distance {
        if self.is_infinite() {
            Distance::INFINITY
        } else {
            Distance(self.0 * factor)
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        Distance(self.0 + rhs.0)
    }
}

impl From<f64> for Distance {
    fn from(value: f64) -> Self {
        Distance::new(value)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: f64,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

pub(crate) fn ordered_pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Immutable undirected graph with positive edge weights on vertices `0..n`.
///
/// Edge indices follow insertion order, which is also the tie-break order
/// for equal weights.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, usize)>>,
    index: HashMap<(Vertex, Vertex), usize>,
}

impl WeightedGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let mut g = WeightedGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        };
        for (u, v, w) in edges {
            g.push_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Graph where every edge has weight 1.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    fn push_edge(&mut self, u: Vertex, v: Vertex, w: f64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has nonpositive or non-finite weight {w}"
            )));
        }
        let key = ordered_pair(u, v);
        if self.index.contains_key(&key) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        let idx = self.edges.len();
        self.edges.push(Edge { u: key.0, v: key.1, w });
        self.index.insert(key, idx);
        self.adj[u].push((v, idx));
        self.adj[v].push((u, idx));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn weight(&self, idx: usize) -> f64 {
        self.edges[idx].w
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.index.get(&ordered_pair(u, v)).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// `(neighbor, edge index)` pairs in insertion order.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// True when every edge weighs exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    /// Copy with every weight set to 1; edge indices are unchanged.
    pub fn unweighted_view(&self) -> WeightedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.w = 1.0;
        }
        g
    }

    /// Edge indices sorted by nondecreasing weight, ties by index.
    pub fn greedy_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.m()).collect();
        order.sort_by(|&a, &b| self.weight(a).total_cmp(&self.weight(b)).then(a.cmp(&b)));
        order
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Parse the edge-list format: a vertex count line, then `u v [w]` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut raw = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(Error::parse(lineno, "expected vertex count"));
                    }
                    n = Some(
                        fields[0]
                            .parse()
                            .map_err(|_| Error::parse(lineno, format!("invalid vertex count {:?}", fields[0])))?,
                    );
                }
                Some(_) => {
                    if fields.len() != 2 && fields.len() != 3 {
                        return Err(Error::parse(lineno, "expected \"u v\" or \"u v w\""));
                    }
                    let vertex = |s: &str| {
                        s.parse::<Vertex>()
                            .map_err(|_| Error::parse(lineno, format!("invalid vertex id {s:?}")))
                    };
                    let u = vertex(fields[0])?;
                    let v = vertex(fields[1])?;
                    let w = match fields.get(2) {
                        Some(s) => s
                            .parse::<f64>()
                            .map_err(|_| Error::parse(lineno, format!("invalid weight {s:?}")))?,
                        None => 1.0,
                    };
                    raw.push((lineno, u, v, w));
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse(1, "missing vertex count"))?;
        let mut g = WeightedGraph::new(n, std::iter::empty())?;
        for (lineno, u, v, w) in raw {
            g.push_edge(u, v, w).map_err(|e| match e {
                Error::InvalidGraph(msg) => Error::InvalidGraph(format!("line {lineno}: {msg}")),
                other => other,
            })?;
        }
        Ok(g)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
        }
        out
    }
}

/// Entry point mirroring [`WeightedGraph::parse`].
pub fn load_graph(text: &str) -> Result<WeightedGraph> {
    WeightedGraph::parse(text)
}

/// A set of failed vertices, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaultSet {
    vertices: Vec<Vertex>,
}

impl FaultSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        FaultSet { vertices }
    }

    /// Like [`FaultSet::new`] but rejects sets larger than `bound`.
    pub fn bounded<I: IntoIterator<Item = Vertex>>(vertices: I, bound: usize) -> Result<Self> {
        let set = Self::new(vertices);
        if set.len() > bound {
            return Err(Error::FaultSetTooLarge { size: set.len(), bound });
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.vertices.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.vertices.insert(pos, v);
                true
            }
        }
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    /// Boolean mask of length `n`; vertices `>= n` are ignored.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.vertices {
            if v < n {
                mask[v] = true;
            }
        }
        mask
    }
}

impl fmt::Display for FaultSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Vertex> for FaultSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        FaultSet::new(iter)
    }
}

#[derive(PartialEq)]
struct HeapItem(f64, Vertex);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (distance, vertex)
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over an implicit graph. `expand` pushes `(neighbor, weight)`
/// for each usable edge out of the given vertex. Stops early once `target`
/// is settled.
pub(crate) fn dijkstra<F>(n: usize, src: Vertex, target: Option<Vertex>, mut expand: F) -> Vec<f64>
where
    F: FnMut(Vertex, &mut Vec<(Vertex, f64)>),
{
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut buf = Vec::new();
    dist[src] = 0.0;
    heap.push(HeapItem(0.0, src));
    while let Some(HeapItem(d, x)) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        if Some(x) == target {
            break;
        }
        buf.clear();
        expand(x, &mut buf);
        for &(y, w) in &buf {
            let nd = d + w;
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(HeapItem(nd, y));
            }
        }
    }
    dist
}

/// Single-source distances in `g` with the masked vertices removed.
pub(crate) fn sssp_masked(g: &WeightedGraph, blocked: &[bool], src: Vertex) -> Vec<f64> {
    dijkstra(g.n(), src, None, |x, out| {
        for &(y, e) in g.neighbors(x) {
            if !blocked[y] {
                out.push((y, g.weight(e)));
            }
        }
    })
}

pub(crate) fn validate_query(g: &WeightedGraph, faults: &FaultSet, u: Vertex, v: Vertex) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if let Some(bad) = faults.iter().find(|&x| x >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: g.n() });
    }
    for x in [u, v] {
        if faults.contains(x) {
            return Err(Error::FaultedEndpoint(x));
        }
    }
    Ok(())
}

/// Exact shortest-path distance from `u` to `v` in `G \ F`.
pub fn graph_dist(g: &WeightedGraph, faults: &FaultSet, u: Vertex, v: Vertex) -> Result<Distance> {
    validate_query(g, faults, u, v)?;
    let blocked = faults.mask(g.n());
    let dist = dijkstra(g.n(), u, Some(v), |x, out| {
        for &(y, e) in g.neighbors(x) {
            if !blocked[y] {
                out.push((y, g.weight(e)));
            }
        }
    });
    Ok(Distance::new(dist[v]))
}
