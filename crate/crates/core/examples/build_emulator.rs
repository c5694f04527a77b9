//! Build an f-VFT (2k-1)-emulator on a random weighted graph and check it
//! against every fault set of size at most f.
//!
//! cargo run --example build_emulator -- [n] [f] [k] [seed]

use std::sync::Arc;

use ftem::{build_vft_emulator, choose_params, random_graph, verify_multiplicative, EdgeModel, WeightMode};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ftem::Result<()> {
    let (n, f, k, seed) = (arg(1, 14) as usize, arg(2, 1) as usize, arg(3, 2) as usize, arg(4, 7));
    let g = Arc::new(random_graph(n, EdgeModel::Gnp(0.5), WeightMode::DistinctInt, seed)?);
    let params = choose_params(n, f, k, 1.0, 1.0).with_seed(seed);
    println!("n={n} m={} f={f} k={k} d={:.2} b={}", g.m(), params.d, params.b);

    let h = build_vft_emulator(&g, &params)?;
    println!(
        "spanner edges {}, emulator edges {}, total {}",
        h.spanner_edges().len(),
        h.emulator_edges().len(),
        h.total_edges()
    );
    for (i, e) in h.spanner_edges().iter().enumerate().take(5) {
        let witness = h.witness(i).map(|w| w.to_string()).unwrap_or_default();
        println!("  kept ({}, {}) w={} forced by F={witness}", e.u, e.v, e.w);
    }

    let report = verify_multiplicative(&g, &h, f, (2 * k - 1) as f64)?;
    println!(
        "checked {} fault sets, {} pairs: worst stretch {:.3}, {}",
        report.fault_sets,
        report.checked_pairs,
        report.worst_stretch,
        if report.passed { "PASS" } else { "FAIL" }
    );
    Ok(())
}
