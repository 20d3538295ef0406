//! Class counts and dimensions of the graph space for small k.
//!
//! Usage: cargo run --release --example dimension_table [max_k]

use std::time::Instant;

use trivalent::space::{GraphSpace, SpaceConfig};

fn main() {
    let max_k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let cfg = SpaceConfig::default();
    println!("{:>3} {:>8} {:>8} {:>9} {:>5} {:>9}", "k", "classes", "basis", "relations", "dim", "seconds");
    for k in 1..=max_k {
        let t = Instant::now();
        let s = GraphSpace::build(k, &cfg).expect("space builds");
        println!(
            "{:>3} {:>8} {:>8} {:>9} {:>5} {:>9.2}",
            k,
            s.basis.len() + s.zeros.len(),
            s.basis.len(),
            s.relations.rows.len(),
            s.dimension(),
            t.elapsed().as_secs_f64()
        );
    }
}
