//! Splits two edges of the theta graph, decorates them with critical points
//! and evaluates the propagator trace.

use std::collections::BTreeMap;

use trivalent::graph::LabelledTrivalentGraph;
use trivalent::morse::{close, compute_propagator, split_edges, trace_tr_g, CritPoint, Decoration, GradedComplex};

fn main() {
    // ∂(p) = 2q, so g(q) = p/2
    let c = GradedComplex::new(&[1, 1, 0, 0, 0], BTreeMap::from([(1, vec![vec![2]])])).unwrap();
    let g = compute_propagator(&c).unwrap();
    let theta = LabelledTrivalentGraph::theta();
    let deco = Decoration {
        p: CritPoint { index: 1, id: 0 },
        q: CritPoint { index: 0, id: 0 },
    };
    let cg = split_edges(&theta, &[0, 2], &BTreeMap::from([(0, deco), (2, deco)])).unwrap();
    println!("black {}  white {}  components {:?}", cg.num_black(), cg.num_white(), cg.components());
    let gs = vec![g; theta.edges().len()];
    let (coef, h) = trace_tr_g(&gs, &cg).unwrap();
    println!("coefficient {coef}  closed graph equals theta: {}", h == theta && close(&cg) == theta);

    let wrong = Decoration { p: CritPoint { index: 2, id: 0 }, q: deco.q };
    let cg = split_edges(&theta, &[1], &BTreeMap::from([(1, wrong)])).unwrap();
    println!("mismatched degrees: {}", trace_tr_g(&gs, &cg).unwrap_err());
}
