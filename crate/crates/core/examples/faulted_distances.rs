//! Distances after vertex faults: the base graph, an emulator whose shortcut
//! reweights itself, and the hop metric.

use std::sync::Arc;

use ftem::{emulator_dist, graph_dist, hop_dist, EmulatorGraph, FaultSet, WeightedGraph};

fn main() -> ftem::Result<()> {
    // 0 - 1 - 2 with a detour 0 - 3 - 4 - 2
    let g = Arc::new(WeightedGraph::new(
        5,
        [(0, 1, 1.0), (1, 2, 1.0), (0, 3, 2.0), (3, 4, 2.0), (4, 2, 2.0)],
    )?);
    let mut h = EmulatorGraph::new(g.clone());
    h.add_emulator_edge(0, 2)?;

    for faults in [FaultSet::empty(), FaultSet::new([1]), FaultSet::new([1, 3])] {
        println!(
            "F = {faults:<7} dist_G = {:<4} dist_H = {:<4} hops_H = {}",
            graph_dist(&g, &faults, 0, 2)?,
            emulator_dist(&h, &faults, 0, 2)?,
            hop_dist(&h, &faults, 0, 2)?,
        );
    }
    Ok(())
}
