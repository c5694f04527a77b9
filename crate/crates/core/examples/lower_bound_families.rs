//! High-girth bases and the blown-up lower-bound instances built from them.

use ftem::{
    blow_up, girth, heawood, lb_instance_stretch2k1, lb_instance_stretch3, petersen, projective_plane_incidence,
    WeightedGraph,
};

fn show(name: &str, g: &WeightedGraph) {
    let g_len = girth(g).map_or("none".to_string(), |x| x.to_string());
    println!("{name:<28} n={:<4} m={:<5} girth {g_len}", g.n(), g.m());
}

fn main() -> ftem::Result<()> {
    show("Petersen", &petersen());
    show("Heawood", &heawood());
    for q in [2, 3, 5, 7] {
        show(&format!("PG(2,{q}) incidence"), &projective_plane_incidence(q)?);
    }
    show("Petersen blown up x3", &blow_up(&petersen(), 3)?);
    for f in [4, 8, 16] {
        show(
            &format!("stretch-3 instance f={f}"),
            &lb_instance_stretch3(f, &heawood())?,
        );
    }
    // PG(2, q) has girth 6, enough for k = 2 only
    show(
        "stretch-(2k-1) k=2 f=9",
        &lb_instance_stretch2k1(9, &projective_plane_incidence(3)?, 2)?,
    );
    Ok(())
}
