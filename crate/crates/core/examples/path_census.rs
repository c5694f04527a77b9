//! Counting alternating and middle-heavy paths.

use std::sync::Arc;

use ftem::{
    build_vft_spanner_greedy, count_alternating_kpaths, count_middle_heavy_3paths, random_graph, BuildParams,
    EdgeModel, WeightMode,
};

fn main() -> ftem::Result<()> {
    let n = 10;
    let g = Arc::new(random_graph(n, EdgeModel::Gnm(36), WeightMode::DistinctInt, 5)?);
    for k in 1..=4 {
        let simple = count_alternating_kpaths(&g, k, true)?;
        let walks = count_alternating_kpaths(&g, k, false)?;
        println!(
            "k={k}: {simple:>5} edge-simple alternating paths, {walks:>5} walks, floor m - kn = {}",
            g.m() as i64 - (k * n) as i64
        );
    }
    let h = build_vft_spanner_greedy(&g, &BuildParams::new(1, 2, 2.0, 4))?;
    println!(
        "greedy 3-spanner: {} edges, {} middle-heavy 3-paths",
        h.spanner_edges().len(),
        count_middle_heavy_3paths(&h)
    );
    Ok(())
}
