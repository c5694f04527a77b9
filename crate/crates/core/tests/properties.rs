mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{emulator_apsp, floyd, graph_apsp, subsets};
use ftem::{
    build_additive2, build_additive4, build_vft_5_emulator, build_vft_emulator, build_vft_spanner_greedy,
    emulator_dist, graph_dist, hop_dist, BuildParams, CheckMode, EmulatorGraph, FaultSet, WeightedGraph,
};

/// Small weighted graph: `n` vertices, pairs kept by a bit mask, integer weights.
fn small_graph() -> impl Strategy<Value = Arc<WeightedGraph>> {
    (3usize..=8).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(1u32..=6, pairs),
        )
            .prop_map(|(n, keep, ws)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if keep[i] {
                            edges.push((u, v, ws[i] as f64));
                        }
                        i += 1;
                    }
                }
                Arc::new(WeightedGraph::new(n, edges).unwrap())
            })
    })
}

/// A graph plus an arbitrary emulator: a subset of its edges and a few shortcut pairs.
fn graph_and_emulator() -> impl Strategy<Value = EmulatorGraph> {
    (small_graph(), any::<u64>()).prop_map(|(g, bits)| {
        let mut h = EmulatorGraph::new(g.clone());
        for e in g.greedy_order() {
            if bits >> (e % 64) & 1 == 1 {
                h.add_spanner_edge(e, None).unwrap();
            }
        }
        let n = g.n();
        for i in 0..3u64 {
            let s = ((bits >> (8 * i + 3)) as usize) % n;
            let t = ((bits >> (8 * i + 7)) as usize) % n;
            if s != t {
                h.add_emulator_edge(s, t).unwrap();
            }
        }
        h
    })
}

fn fault_sets(n: usize, f: usize) -> Vec<FaultSet> {
    subsets(&(0..n).collect::<Vec<_>>(), f)
        .into_iter()
        .map(FaultSet::new)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_match_floyd(h in graph_and_emulator()) {
        let g = h.base();
        for faults in fault_sets(g.n(), 2) {
            let dg = graph_apsp(g, faults.as_slice());
            let dh = emulator_apsp(&h, faults.as_slice(), false);
            let hops = emulator_apsp(&h, faults.as_slice(), true);
            for u in (0..g.n()).filter(|&x| !faults.contains(x)) {
                for v in (0..g.n()).filter(|&x| !faults.contains(x)) {
                    prop_assert_eq!(graph_dist(g, &faults, u, v).unwrap().value(), dg[u][v]);
                    prop_assert_eq!(emulator_dist(&h, &faults, u, v).unwrap().value(), dh[u][v]);
                    prop_assert_eq!(hop_dist(&h, &faults, u, v).unwrap().value(), hops[u][v]);
                }
            }
        }
    }

    #[test]
    fn emulator_never_shortcuts(h in graph_and_emulator()) {
        let g = h.base();
        for faults in fault_sets(g.n(), 2) {
            for u in (0..g.n()).filter(|&x| !faults.contains(x)) {
                for v in (u + 1..g.n()).filter(|&x| !faults.contains(x)) {
                    let dh = emulator_dist(&h, &faults, u, v).unwrap();
                    let dg = graph_dist(g, &faults, u, v).unwrap();
                    prop_assert!(dh.value() >= dg.value());
                }
            }
        }
    }

    #[test]
    fn more_faults_never_shorten(g in small_graph(), a in 0usize..8, b in 0usize..8) {
        let n = g.n();
        let small = FaultSet::new([a % n]);
        let large = FaultSet::new([a % n, b % n]);
        for u in (0..n).filter(|&x| !large.contains(x)) {
            for v in (0..n).filter(|&x| !large.contains(x)) {
                let before = graph_dist(&g, &small, u, v).unwrap();
                let after = graph_dist(&g, &large, u, v).unwrap();
                prop_assert!(after.value() >= before.value());
            }
        }
    }

    #[test]
    fn fault_free_matches_static_emulator(h in graph_and_emulator()) {
        // with no faults every shortcut weighs the plain graph distance
        let g = h.base();
        let dg = graph_apsp(g, &[]);
        let mut edges: Vec<(usize, usize, f64)> = h.spanner_edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        edges.extend(h.emulator_edges().iter().map(|&(s, t)| (s, t, dg[s][t])));
        let fixed = floyd(g.n(), &edges, &[]);
        for (u, row) in fixed.iter().enumerate() {
            for (v, &want) in row.iter().enumerate() {
                prop_assert_eq!(emulator_dist(&h, &FaultSet::empty(), u, v).unwrap().value(), want);
            }
        }
    }

    #[test]
    fn builders_meet_their_stretch(g in small_graph(), seed in any::<u64>(), f in 0usize..=2) {
        let unit = Arc::new(g.unweighted_view());
        let cases = [
            (build_vft_spanner_greedy(&g, &BuildParams::new(f, 2, 2.0, 4).with_seed(seed)).unwrap(), 3.0),
            (build_vft_emulator(&g, &BuildParams::new(f, 2, 1.5, 3).with_seed(seed)).unwrap(), 3.0),
            (build_vft_emulator(&g, &BuildParams::new(f, 3, 1.5, 3).with_seed(seed)).unwrap(), 5.0),
            (build_vft_5_emulator(&g, &BuildParams::new(f, 3, 2.0, 6).with_seed(seed)).unwrap(), 5.0),
            (
                build_vft_emulator(&g, &BuildParams::new(f, 3, 2.0, 6).with_seed(seed).with_mode(CheckMode::Approx)).unwrap(),
                5.0,
            ),
        ];
        for (h, t) in cases {
            let check = common::brute_check(&h, f, |d| t * d);
            prop_assert_eq!((check.upper, check.lower), (0, 0));
        }
        if f >= 1 {
            for (h, c) in [(build_additive2(&unit, f, seed).unwrap(), 2.0), (build_additive4(&unit, f, seed).unwrap(), 4.0)] {
                let check = common::brute_check(&h, f, |d| d + c);
                prop_assert_eq!((check.upper, check.lower), (0, 0));
            }
        }
    }

    #[test]
    fn text_round_trip(h in graph_and_emulator()) {
        let text = h.to_text();
        let back = EmulatorGraph::parse(&text, h.base_arc().clone()).unwrap();
        prop_assert_eq!(back.to_text(), text);
        let g = WeightedGraph::parse(&h.base().to_edge_list()).unwrap();
        prop_assert_eq!(g.edges(), h.base().edges());
    }
}
