//! Lists the index tuples at a trivalent vertex that survive the degree count
//! for both vertex types.

use trivalent::morse::{surviving_indices, VertexType};

fn main() {
    for t in [VertexType::I, VertexType::II] {
        let list = surviving_indices(t);
        let shown: Vec<String> = list.iter().map(ToString::to_string).collect();
        println!("type {t:?} ({}): {}", list.len(), shown.join(" "));
    }
}
