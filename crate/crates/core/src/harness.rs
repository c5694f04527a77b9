//! Experiment plumbing behind the `ftem` binary: generator specs, single
//! builds, parameter sweeps with CSV output, and file-based verification.
//!
//! Every command the binary offers is a function here; the binary only parses
//! flags and prints.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::additive::{build_additive_with, AdditiveParams};
use crate::builder::{
    build_vft_5_emulator, build_vft_emulator, build_vft_spanner_greedy, choose_params_with, CheckMode, ParamRecipe,
};
use crate::constructions::{
    blow_up, heawood, lb_instance_stretch2k1, lb_instance_stretch3, petersen, projective_plane_incidence, random_graph,
    EdgeModel, WeightMode,
};
use crate::emulator::EmulatorGraph;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::oracle::DEFAULT_SUBSET_CAP;
use crate::verify::{verify, StretchBound, VerificationReport, VerifyConfig, DEFAULT_VERIFY_BUDGET};

pub const BUDGET_ENV: &str = "FTEM_BUDGET";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit code for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

/// Budget from `FTEM_BUDGET`, if set and numeric.
pub fn budget_from_env() -> Option<u128> {
    std::env::var(BUDGET_ENV).ok()?.trim().parse().ok()
}

/// Explicit flag, then `FTEM_BUDGET`, then the per-check default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget(pub Option<u128>);

impl Budget {
    pub fn resolve(flag: Option<u128>) -> Self {
        Budget(flag.or_else(budget_from_env))
    }

    pub fn verify_budget(self) -> u128 {
        self.0.unwrap_or(DEFAULT_VERIFY_BUDGET)
    }

    pub fn subset_cap(self) -> u128 {
        self.0.unwrap_or(DEFAULT_SUBSET_CAP)
    }
}

/// A graph source written as `kind:key=value:...`.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// `pg2:q` or `pg2:q=Q`
    ProjectivePlane {
        q: usize,
    },
    Heawood,
    Petersen,
    /// `blowup:f=F:k=K[:q=Q]` (lower-bound instance over PG(2, q)) or
    /// `blowup:t=T[:q=Q]` (plain blow-up).
    BlowUp {
        f: Option<usize>,
        k: usize,
        t: Option<usize>,
        q: usize,
    },
    /// `gnp:n=N:p=P[:seed=S][:w=W]`
    Gnp {
        n: usize,
        p: f64,
        seed: Option<u64>,
        weights: WeightMode,
    },
    /// `gnm:n=N:m=M[:seed=S][:w=W]`
    Gnm {
        n: usize,
        m: usize,
        seed: Option<u64>,
        weights: WeightMode,
    },
    /// `file:PATH`
    File(String),
}

fn parse_weights(s: &str) -> Result<WeightMode> {
    match s {
        "unit" => Ok(WeightMode::Unit),
        "distinct" => Ok(WeightMode::DistinctInt),
        _ => {
            let range = s
                .strip_prefix("int")
                .map(|r| r.trim_start_matches(['=', '-']))
                .ok_or_else(|| bad_spec(format!("unknown weight mode {s:?}")))?;
            let (lo, hi) = range
                .split_once('-')
                .ok_or_else(|| bad_spec(format!("weight range {s:?} must look like int=LO-HI")))?;
            Ok(WeightMode::UniformInt {
                lo: lo.parse().map_err(|_| bad_spec(format!("bad weight bound {lo:?}")))?,
                hi: hi.parse().map_err(|_| bad_spec(format!("bad weight bound {hi:?}")))?,
            })
        }
    }
}

fn bad_spec(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GeneratorSpec::File(path.to_string()));
        }
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let mut bare = Vec::new();
        let mut kv = std::collections::BTreeMap::new();
        for part in parts {
            match part.split_once('=') {
                Some((k, v)) => {
                    kv.insert(k.to_string(), v.to_string());
                }
                None => bare.push(part.to_string()),
            }
        }
        let num = |key: &str| -> Result<Option<usize>> {
            kv.get(key)
                .map(|v| {
                    v.parse()
                        .map_err(|_| bad_spec(format!("{key}={v:?} is not an integer")))
                })
                .transpose()
        };
        let seed = kv
            .get("seed")
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| bad_spec(format!("seed={v:?} is not an integer")))
            })
            .transpose()?;
        let weights = kv
            .get("w")
            .map(|w| parse_weights(w))
            .transpose()?
            .unwrap_or(WeightMode::Unit);
        let required = |key: &str| -> Result<usize> {
            num(key)?.ok_or_else(|| bad_spec(format!("generator {kind:?} needs {key}=")))
        };
        match kind {
            "pg2" => {
                let q = match bare.first() {
                    Some(q) => q.parse().map_err(|_| bad_spec(format!("bad order {q:?}")))?,
                    None => required("q")?,
                };
                Ok(GeneratorSpec::ProjectivePlane { q })
            }
            "heawood" => Ok(GeneratorSpec::Heawood),
            "petersen" => Ok(GeneratorSpec::Petersen),
            "blowup" => {
                let t = num("t")?;
                let f = num("f")?;
                if t.is_none() && f.is_none() {
                    return Err(bad_spec("blowup needs f= (with k=) or t="));
                }
                Ok(GeneratorSpec::BlowUp {
                    f,
                    k: num("k")?.unwrap_or(2),
                    t,
                    q: num("q")?.unwrap_or(2),
                })
            }
            "gnp" => {
                let p = kv
                    .get("p")
                    .ok_or_else(|| bad_spec("gnp needs p="))?
                    .parse()
                    .map_err(|_| bad_spec("p= is not a number"))?;
                Ok(GeneratorSpec::Gnp {
                    n: required("n")?,
                    p,
                    seed,
                    weights,
                })
            }
            "gnm" => Ok(GeneratorSpec::Gnm {
                n: required("n")?,
                m: required("m")?,
                seed,
                weights,
            }),
            _ => Err(bad_spec(format!("unknown generator {s:?}"))),
        }
    }
}

impl GeneratorSpec {
    /// Build the graph; random generators without an explicit seed use `default_seed`.
    pub fn generate(&self, default_seed: u64) -> Result<WeightedGraph> {
        match self {
            GeneratorSpec::ProjectivePlane { q } => projective_plane_incidence(*q),
            GeneratorSpec::Heawood => Ok(heawood()),
            GeneratorSpec::Petersen => Ok(petersen()),
            GeneratorSpec::BlowUp { f, k, t, q } => {
                let base = projective_plane_incidence(*q)?;
                match (t, f) {
                    (Some(t), _) => blow_up(&base, *t),
                    (None, Some(f)) if *k <= 2 => lb_instance_stretch3(*f, &base),
                    (None, Some(f)) => lb_instance_stretch2k1(*f, &base, *k),
                    (None, None) => Err(bad_spec("blowup needs f= or t=")),
                }
            }
            GeneratorSpec::Gnp { n, p, seed, weights } => {
                random_graph(*n, EdgeModel::Gnp(*p), *weights, seed.unwrap_or(default_seed))
            }
            GeneratorSpec::Gnm { n, m, seed, weights } => {
                random_graph(*n, EdgeModel::Gnm(*m), *weights, seed.unwrap_or(default_seed))
            }
            GeneratorSpec::File(path) => WeightedGraph::load(path),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    Spanner,
    Em5,
    Emk,
    Add2,
    Add4,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Spanner => "spanner",
            Algorithm::Em5 => "em5",
            Algorithm::Emk => "emk",
            Algorithm::Add2 => "add2",
            Algorithm::Add4 => "add4",
        }
    }

    /// Stretch bound the construction promises.
    pub fn stretch_bound(self, k: usize) -> StretchBound {
        match self {
            Algorithm::Spanner | Algorithm::Emk => StretchBound::Multiplicative((2 * k - 1) as f64),
            Algorithm::Em5 => StretchBound::Multiplicative(5.0),
            Algorithm::Add2 => StretchBound::Additive(2.0),
            Algorithm::Add4 => StretchBound::Additive(4.0),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spanner" => Ok(Algorithm::Spanner),
            "em5" => Ok(Algorithm::Em5),
            "emk" => Ok(Algorithm::Emk),
            "add2" => Ok(Algorithm::Add2),
            "add4" => Ok(Algorithm::Add4),
            _ => Err(bad_spec(format!(
                "unknown algorithm {s:?} (expected spanner, em5, emk, add2 or add4)"
            ))),
        }
    }
}

/// One construction run.
#[derive(Clone, Debug)]
pub struct BuildRequest {
    pub algorithm: Algorithm,
    pub f: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: CheckMode,
    pub polylog_constant: f64,
    pub c_b: f64,
    pub verify: bool,
    pub budget: Budget,
}

impl BuildRequest {
    pub fn new(algorithm: Algorithm, f: usize, k: usize, seed: u64) -> Self {
        BuildRequest {
            algorithm,
            f,
            k,
            seed,
            mode: CheckMode::Exhaustive,
            polylog_constant: 1.0,
            c_b: 1.0,
            verify: false,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub graph: Arc<WeightedGraph>,
    pub emulator: EmulatorGraph,
    /// Sampling scale or density threshold used.
    pub d: f64,
    pub millis: u128,
    pub report: Option<VerificationReport>,
}

impl BuildOutcome {
    pub fn passed(&self) -> Option<bool> {
        self.report.as_ref().map(|r| r.passed)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "n={} m={} spanner={} emulator={} total={} d={:.4} ms={}",
            self.graph.n(),
            self.graph.m(),
            self.emulator.spanner_edges().len(),
            self.emulator.emulator_edges().len(),
            self.emulator.total_edges(),
            self.d,
            self.millis
        )
    }

    pub fn verdict_line(&self) -> Option<String> {
        self.report.as_ref().map(|r| {
            if r.passed {
                format!("PASS worst_stretch={} pairs={}", r.worst_stretch, r.checked_pairs)
            } else {
                format!("FAIL violations={} pairs={}", r.violation_count, r.checked_pairs)
            }
        })
    }

    /// Serialized emulator followed by `#`-comment summary lines.
    pub fn render(&self) -> String {
        let mut out = self.emulator.to_text();
        out.push_str(&format!("# {}\n", self.summary_line()));
        if let Some(v) = self.verdict_line() {
            out.push_str(&format!("# {v}\n"));
        }
        out
    }
}

/// Run one construction (and optionally its exhaustive verification) on `graph`.
pub fn run_build(graph: Arc<WeightedGraph>, req: &BuildRequest) -> Result<BuildOutcome> {
    let n = graph.n();
    if req.verify {
        let needed = crate::verify::verification_cost(n, req.f);
        let limit = req.budget.verify_budget();
        if needed > limit {
            return Err(Error::Budget {
                what: "exhaustive verification",
                needed,
                limit,
            });
        }
    }
    let start = Instant::now();
    let (emulator, d) = match req.algorithm {
        Algorithm::Add2 | Algorithm::Add4 => {
            let params = if req.algorithm == Algorithm::Add2 {
                AdditiveParams::plus2(n, req.f, req.seed)
            } else {
                AdditiveParams::plus4(n, req.f, req.seed)
            };
            (build_additive_with(&graph, &params)?, params.d)
        }
        alg => {
            let k = if alg == Algorithm::Em5 { 3 } else { req.k };
            let recipe = ParamRecipe {
                polylog_constant: req.polylog_constant,
                c_b: req.c_b,
                check_mode: req.mode,
                ..ParamRecipe::default()
            };
            let mut params = choose_params_with(n, req.f, k, &recipe).with_seed(req.seed);
            params.subset_cap = req.budget.subset_cap();
            let h = match alg {
                Algorithm::Spanner => build_vft_spanner_greedy(&graph, &params)?,
                Algorithm::Em5 => build_vft_5_emulator(&graph, &params)?,
                _ => build_vft_emulator(&graph, &params)?,
            };
            (h, params.d)
        }
    };
    let millis = start.elapsed().as_millis();
    let report = if req.verify {
        let config = VerifyConfig {
            budget: req.budget.verify_budget(),
            ..VerifyConfig::default()
        };
        Some(verify(
            &graph,
            &emulator,
            req.f,
            req.algorithm.stretch_bound(req.k),
            &config,
        )?)
    } else {
        None
    };
    Ok(BuildOutcome {
        graph,
        emulator,
        d,
        millis,
        report,
    })
}

/// Cartesian sweep over `f`, `k`, seeds and algorithms.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub generator: String,
    pub algorithms: Vec<Algorithm>,
    pub fs: Vec<usize>,
    pub ks: Vec<usize>,
    pub seeds: Vec<u64>,
    pub mode: CheckMode,
    pub polylog_constant: f64,
    pub c_b: f64,
    pub verify: bool,
    pub jobs: usize,
    pub budget: Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub generator: String,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub k: usize,
    pub d: f64,
    pub spanner_edges: usize,
    pub emulator_edges: usize,
    pub total_edges: usize,
    /// `pass`, `fail` or `skip`.
    pub verified: String,
    pub seed: u64,
    pub ms: u128,
}

/// Run every cell; rows come back in `f`, `k`, seed, algorithm order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let generator: GeneratorSpec = spec.generator.parse()?;
    let mut cells = Vec::new();
    for &f in &spec.fs {
        for &k in &spec.ks {
            for &seed in &spec.seeds {
                for &alg in &spec.algorithms {
                    cells.push((f, k, seed, alg));
                }
            }
        }
    }
    let run_cell = |&(f, k, seed, alg): &(usize, usize, u64, Algorithm)| -> Result<SweepRow> {
        let graph = Arc::new(generator.generate(seed)?);
        let req = BuildRequest {
            algorithm: alg,
            f,
            k,
            seed,
            mode: spec.mode,
            polylog_constant: spec.polylog_constant,
            c_b: spec.c_b,
            verify: spec.verify,
            budget: spec.budget,
        };
        let out = run_build(graph, &req)?;
        Ok(SweepRow {
            generator: spec.generator.clone(),
            algorithm: alg.name().to_string(),
            n: out.graph.n(),
            m: out.graph.m(),
            f,
            k: if alg == Algorithm::Em5 { 3 } else { k },
            d: out.d,
            spanner_edges: out.emulator.spanner_edges().len(),
            emulator_edges: out.emulator.emulator_edges().len(),
            total_edges: out.emulator.total_edges(),
            verified: match out.passed() {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skip",
            }
            .to_string(),
            seed,
            ms: out.millis,
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| cells.par_iter().map(run_cell).collect())
}

/// CSV with header `generator,algorithm,n,m,f,k,d,spanner_edges,emulator_edges,total_edges,verified,seed,ms`.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "generator",
            "algorithm",
            "n",
            "m",
            "f",
            "k",
            "d",
            "spanner_edges",
            "emulator_edges",
            "total_edges",
            "verified",
            "seed",
            "ms",
        ])
        .map_err(csv_err)?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Multiplicative,
    Additive,
}

impl FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mult" | "multiplicative" => Ok(VerifyMode::Multiplicative),
            "add" | "additive" => Ok(VerifyMode::Additive),
            _ => Err(bad_spec(format!("unknown verify mode {s:?} (expected mult or add)"))),
        }
    }
}

/// Load a graph and an emulator over it from text and verify exhaustively.
pub fn run_verify(
    graph_text: &str,
    emulator_text: &str,
    f: usize,
    mode: VerifyMode,
    bound: f64,
    budget: Budget,
) -> Result<VerificationReport> {
    let graph = Arc::new(WeightedGraph::parse(graph_text)?);
    let emulator = EmulatorGraph::parse(emulator_text, graph.clone())?;
    let bound = match mode {
        VerifyMode::Multiplicative => StretchBound::Multiplicative(bound),
        VerifyMode::Additive => StretchBound::Additive(bound),
    };
    let config = VerifyConfig {
        budget: budget.verify_budget(),
        ..VerifyConfig::default()
    };
    verify(&graph, &emulator, f, bound, &config)
}
