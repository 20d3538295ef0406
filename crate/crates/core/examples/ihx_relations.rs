//! Contracts each edge of K4 and prints the three IHX expansions of the
//! resulting 4-valent graph together with their canonical classes.

use trivalent::graph::{contract_edge, ihx_expansions, LabelledTrivalentGraph, IHX_COEFFICIENTS};

fn main() {
    println!("coefficients {IHX_COEFFICIENTS:?}");
    let g = LabelledTrivalentGraph::k4();
    for e in 0..g.edges().len() {
        let c = contract_edge(&g, e).expect("K4 has no loops");
        println!("contract edge {e}: {}", c.key());
        for (coef, h) in ihx_expansions(&c, e) {
            let r = h.reduce();
            println!("  {coef:+} · {:<36} {:?}", r.key, r.status);
        }
    }
}
