//! Builds the transport matrix of a sequence of handle slides and verifies
//! that the accumulated inverse really inverts it.

use trivalent::morse::matrix::{int_determinant, mul, to_q, is_identity};
use trivalent::morse::{transport, HandleSlideEvent};

fn main() {
    let ranks = [1, 3, 3, 1, 0];
    let events = [
        HandleSlideEvent { degree: 1, p: 0, q: 1, sign: 1 },
        HandleSlideEvent { degree: 1, p: 2, q: 0, sign: -1 },
        HandleSlideEvent { degree: 2, p: 1, q: 2, sign: 1 },
        HandleSlideEvent { degree: 1, p: 1, q: 2, sign: 1 },
    ];
    let t = transport(&events, &ranks).expect("events are valid");
    for d in 1..=2 {
        println!("Φ_{d} = {:?}  det = {}", t.phi[d], int_determinant(&t.phi[d]));
        let prod = mul(&to_q(&t.phi[d]), &to_q(&t.inverse[d]), ranks[d]);
        println!("Φ_{d}·Φ_{d}⁻¹ = I: {}", is_identity(&prod));
    }
    let bad = HandleSlideEvent { degree: 1, p: 0, q: 0, sign: 1 };
    println!("invalid event: {}", transport(&[bad], &ranks).unwrap_err());
}
