//! Canonical class, automorphisms and arrow orientations of the k = 2 graphs.

use trivalent::graph::{all_arrow_orientations, ClassStatus, LabelledTrivalentGraph};
use trivalent::space::enumerate_classes;

fn main() {
    for c in enumerate_classes(2) {
        let g = LabelledTrivalentGraph::from_key(&c.key).expect("enumerated keys parse");
        let a = g.automorphism_counts();
        let status = match c.status {
            ClassStatus::Zero => "zero".to_string(),
            ClassStatus::Signed(s) => format!("{s:+}"),
        };
        println!(
            "{:<36} {:>5}  |Aut| = {:>2} (edges {}, vertices {:>2})  arrow orientations: {}",
            c.key,
            status,
            a.aut,
            a.aut_e,
            a.aut_v,
            all_arrow_orientations(&g).len()
        );
    }
    let relabelled = LabelledTrivalentGraph::k4().relabel(&[1, 0, 2, 3], &[1, 0, 2, 3, 4, 5]);
    println!("K4 with two vertices and two edges swapped reduces to {:?}", relabelled.reduce());
}
