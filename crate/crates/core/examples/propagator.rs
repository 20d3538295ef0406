//! Computes the combinatorial propagator of a small acyclic complex and of
//! its dual, and checks the contraction identity.

use std::collections::BTreeMap;

use trivalent::morse::{compute_propagator, dual_propagator, is_contraction, GradedComplex};

fn main() {
    // 1 → 2 → 1 in degrees 2, 1, 0: ∂_2 = (1, 1)^T, ∂_1 = (1, −1)
    let c = GradedComplex::new(
        &[1, 2, 1, 0, 0],
        BTreeMap::from([(1, vec![vec![1, -1]]), (2, vec![vec![1], vec![1]])]),
    )
    .expect("valid complex");
    let g = compute_propagator(&c).expect("complex is acyclic");
    println!("complex    {}", serde_json::to_string(&c.to_json()).unwrap());
    println!("propagator {}", serde_json::to_string(&g.to_json()).unwrap());
    println!("∂g + g∂ = 1: {}", is_contraction(&c, &g));
    let (dc, dg) = dual_propagator(&c, &g);
    println!("dual       {}", serde_json::to_string(&dc.to_json()).unwrap());
    println!("dual g     {}", serde_json::to_string(&dg.to_json()).unwrap());
    println!("dual is a contraction: {}", is_contraction(&dc, &dg));

    let cyclic = GradedComplex::new(&[1, 1, 1, 0, 0], BTreeMap::from([(1, vec![vec![1]])])).unwrap();
    println!("non-acyclic input: {}", compute_propagator(&cyclic).unwrap_err());
}
