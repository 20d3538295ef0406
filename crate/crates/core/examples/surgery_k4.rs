//! Evaluates the surgery invariant of K4 by orbit counting and by the literal
//! sum over all labelled edge-oriented representatives.

use std::time::Instant;

use trivalent::graph::{find_arrow_orientation, LabelledTrivalentGraph};
use trivalent::space::{GraphSpace, SpaceConfig};
use trivalent::surgery::{evaluate_full, evaluate_orbit, TypeConvention};

fn main() {
    let space = GraphSpace::build(2, &SpaceConfig::default()).expect("k = 2 space");
    let arrow = find_arrow_orientation(&LabelledTrivalentGraph::k4());
    for (name, eval) in [("orbit", evaluate_orbit as fn(_, _, _) -> _), ("full", evaluate_full)] {
        let t = Instant::now();
        let r = eval(&arrow, &space, TypeConvention::Default).expect("evaluation succeeds");
        println!("{name:>5}: {}  ({:.2}s)", serde_json::to_string(&r.to_json()["result"]).unwrap(), t.elapsed().as_secs_f64());
        println!("       diagnostics {}", r.to_json()["diagnostics"]);
    }
}
