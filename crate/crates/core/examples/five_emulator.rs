//! The stretch-5 emulator next to the greedy stretch-5 spanner on the same graph.

use std::sync::Arc;

use ftem::{
    build_vft_5_emulator, build_vft_spanner_greedy, choose_params, random_graph, verify_multiplicative, EdgeModel,
    WeightMode,
};

fn main() -> ftem::Result<()> {
    let n = 40;
    let f = 1;
    let g = Arc::new(random_graph(n, EdgeModel::Gnp(0.3), WeightMode::Unit, 3)?);
    // a small polylog constant keeps d low enough for shortcuts to be sampled
    let params = choose_params(n, f, 3, 0.2, 1.0).with_seed(3);

    let spanner = build_vft_spanner_greedy(&g, &params)?;
    let emulator = build_vft_5_emulator(&g, &params)?;
    for (name, h) in [("spanner", &spanner), ("emulator", &emulator)] {
        let report = verify_multiplicative(&g, h, f, 5.0)?;
        println!(
            "{name:<9} {:>3} graph edges + {:>2} shortcuts = {:>3} of m={}  worst stretch {:.2}  {}",
            h.spanner_edges().len(),
            h.emulator_edges().len(),
            h.total_edges(),
            g.m(),
            report.worst_stretch,
            if report.passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}
