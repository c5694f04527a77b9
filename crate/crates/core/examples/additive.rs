//! Fault-tolerant +2 and +4 emulators on an unweighted graph.
//!
//! At this size the pair sampling probability is capped at 1, so every pair
//! becomes a shortcut; a hand-set probability shows the sparse regime.

use std::sync::Arc;

use ftem::additive::{build_additive_with, dense_vertices, AdditiveParams};
use ftem::{build_additive2, build_additive4, random_graph, verify_additive, EdgeModel, WeightMode};

fn main() -> ftem::Result<()> {
    let f = 1;
    let g = Arc::new(random_graph(14, EdgeModel::Gnp(0.5), WeightMode::Unit, 11)?);
    for (name, h, c, params) in [
        (
            "+2",
            build_additive2(&g, f, 1)?,
            2.0,
            AdditiveParams::plus2(g.n(), f, 1),
        ),
        (
            "+4",
            build_additive4(&g, f, 1)?,
            4.0,
            AdditiveParams::plus4(g.n(), f, 1),
        ),
    ] {
        let report = verify_additive(&g, &h, f, c)?;
        println!(
            "{name}: d={:.2} p={:.2} dense={:?} spanner {} shortcuts {} worst excess {} {}",
            params.d,
            params.p,
            dense_vertices(&g, params.d).len(),
            h.spanner_edges().len(),
            h.emulator_edges().len(),
            report.worst_excess,
            if report.passed { "PASS" } else { "FAIL" }
        );
    }

    let sparse = AdditiveParams {
        f,
        d: 3.0,
        p: 0.1,
        seed: 1,
    };
    let h = build_additive_with(&g, &sparse)?;
    let report = verify_additive(&g, &h, f, 4.0)?;
    println!(
        "p=0.1: shortcuts {} of {} pairs, {} violations of +4",
        h.emulator_edges().len(),
        g.n() * (g.n() - 1) / 2,
        report.violation_count
    );
    Ok(())
}
