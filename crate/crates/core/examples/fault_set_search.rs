//! Exact and approximate search for a fault set that stretches a pair.

use std::sync::Arc;

use ftem::oracle::find_fault_set_traced;
use ftem::{exhaustive_witness, EmulatorGraph, WeightedGraph};

fn main() -> ftem::Result<()> {
    // 6-cycle; H holds the path 0-1-2-3-4-5 and a shortcut 0-3
    let g = Arc::new(WeightedGraph::unweighted(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
    )?);
    let mut h = EmulatorGraph::new(g.clone());
    for e in 0..5 {
        h.add_spanner_edge(e, None)?;
    }
    h.add_emulator_edge(0, 3)?;

    for bound in [3.0, 5.0] {
        for f in [0, 1] {
            let res = exhaustive_witness(&h, 0, 5, f, bound)?;
            let found = res.fault_set.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
            println!("exhaustive f={f} bound={bound}: {:?} F={found}", res.verdict);
        }
    }

    for (k, f) in [(2, 1), (3, 1), (3, 2)] {
        let trace = find_fault_set_traced(&h, 0, 5, k, f)?;
        println!(
            "greedy cut k={k} f={f}: {:?} F={} after {} paths {:?}",
            trace.result.verdict,
            trace.fault_set,
            trace.iterations(),
            trace.cut_paths
        );
    }
    Ok(())
}
