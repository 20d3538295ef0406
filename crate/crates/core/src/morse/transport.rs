//! Parallel transport along a path of gradients as a product of handle-slide
//! elementary matrices.

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::{MorseError, TOP};

/// A slide of critical point `p` over `q` in one degree: contributes the
/// elementary matrix `I + sign · E_{q,p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleSlideEvent {
    pub degree: usize,
    pub p: usize,
    pub q: usize,
    pub sign: i8,
}

/// Per-degree transport matrices Φ_d and their integer inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub phi: Vec<IntMatrix>,
    pub inverse: Vec<IntMatrix>,
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Right-multiplies by `I + s·E_{q,p}`: column p gains s·(column q).
fn right_elementary(m: &mut IntMatrix, q: usize, p: usize, s: i64) {
    for row in m.iter_mut() {
        row[p] += s * row[q];
    }
}

/// Left-multiplies by `I + s·E_{q,p}`: row q gains s·(row p).
fn left_elementary(m: &mut IntMatrix, q: usize, p: usize, s: i64) {
    let src = m[p].clone();
    for (x, y) in m[q].iter_mut().zip(src) {
        *x += s * y;
    }
}

pub fn transport(events: &[HandleSlideEvent], ranks: &[usize; TOP + 1]) -> Result<Transport, MorseError> {
    let mut phi: Vec<IntMatrix> = ranks.iter().map(|&r| identity(r)).collect();
    let mut inverse = phi.clone();
    for (i, e) in events.iter().enumerate() {
        if e.degree > TOP || e.p >= ranks[e.degree] || e.q >= ranks[e.degree] {
            return Err(MorseError::InvalidEvent(format!("event {i} refers to a missing basis element")));
        }
        if e.p == e.q {
            return Err(MorseError::InvalidEvent(format!("event {i} slides a handle over itself")));
        }
        if e.sign.abs() != 1 {
            return Err(MorseError::InvalidEvent(format!("event {i} has sign {}", e.sign)));
        }
        right_elementary(&mut phi[e.degree], e.q, e.p, e.sign as i64);
        // (A·E)⁻¹ = E⁻¹·A⁻¹ and (I + sE)⁻¹ = I − sE since E² = 0 off the diagonal
        left_elementary(&mut inverse[e.degree], e.q, e.p, -(e.sign as i64));
    }
    Ok(Transport { phi, inverse })
}
