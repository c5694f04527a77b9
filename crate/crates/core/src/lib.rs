//! Vertex fault-tolerant emulators and spanners.
//!
//! An emulator here is a set of real graph edges (the spanner part) plus
//! logical shortcut edges whose weight after a fault set `F` is the distance
//! between their endpoints in `G \ F`. The builders in [`builder`] and
//! [`additive`] produce such graphs, and [`verify`] checks stretch against
//! every fault set of bounded size.
//!
//! ```
//! use std::sync::Arc;
//! use ftem::{build_vft_emulator, choose_params, verify_multiplicative, WeightedGraph};
//!
//! let g = Arc::new(WeightedGraph::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap());
//! let params = choose_params(g.n(), 1, 2, 0.0, 1.0);
//! let h = build_vft_emulator(&g, &params).unwrap();
//! assert!(verify_multiplicative(&g, &h, 1, 3.0).unwrap().passed);
//! ```

pub mod additive;
pub mod builder;
pub mod constructions;
pub mod emulator;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod verify;

pub use additive::{build_additive2, build_additive4, AdditiveParams};
pub use builder::{
    build_vft_5_emulator, build_vft_emulator, build_vft_spanner_greedy, choose_params, choose_params_with,
    enumerate_local_paths_through, BuildParams, CheckMode, LocalPath, ParamRecipe,
};
pub use constructions::{
    blow_up, girth, heawood, lb_instance_stretch2k1, lb_instance_stretch3, petersen, projective_plane_incidence,
    random_graph, EdgeModel, WeightMode,
};
pub use emulator::{emulator_dist, hop_dist, EmulatorGraph, FaultedView, Metric, SpannerEdge};
pub use error::{Error, Result};
pub use graph::{graph_dist, load_graph, Distance, Edge, FaultSet, Vertex, WeightedGraph};
pub use oracle::{exhaustive_witness, find_fault_set, Verdict, WitnessResult};
pub use verify::{
    count_alternating_kpaths, count_middle_heavy_3paths, verify, verify_additive, verify_multiplicative, StretchBound,
    VerificationReport, VerifyConfig,
};
