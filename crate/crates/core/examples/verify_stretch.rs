//! Exhaustive verification, including a failing instance and its JSON report.

use std::sync::Arc;

use ftem::{verify_multiplicative, EmulatorGraph, WeightedGraph};

fn main() -> ftem::Result<()> {
    let g = Arc::new(WeightedGraph::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?);

    let full = EmulatorGraph::from_base(g.clone());
    println!("identity: passed={}", verify_multiplicative(&g, &full, 2, 1.0)?.passed);

    // a spanning path survives no fault in its interior
    let mut path = EmulatorGraph::new(g.clone());
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4)] {
        path.add_spanner_pair(a, b, None)?;
    }
    let report = verify_multiplicative(&g, &path, 1, 4.0)?;
    println!("path, f=1, stretch 4:");
    println!("{}", report.to_json());
    Ok(())
}
