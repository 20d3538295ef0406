//! Y-link linking data built from an arrow graph, and the homological
//! evaluation of the surgery invariant.

mod evaluate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::perm::koszul_sign;
use crate::graph::ArrowGraph;
pub use crate::morse::VertexType;
use crate::space::SpaceError;
pub use evaluate::{
    evaluate_full, evaluate_orbit, labelled_oriented_representatives, representative_count, Diagnostics,
    EvaluationReport, Mode, normalization, FULL_MAX_K,
};

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("full evaluation is limited to k ≤ {max_k}, got k = {k}")]
    ResourceLimit { k: usize, max_k: usize },
    #[error("representative count {numerator}/{aut} is not an integer")]
    NonIntegerOrbit { numerator: String, aut: u64 },
    #[error("orbit count mismatch: {0}")]
    OrbitMismatch(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Which in/out pattern is called type I.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TypeConvention {
    /// Two outgoing half-edges and one incoming make type I.
    #[default]
    Default,
    /// One outgoing and two incoming make type I.
    Flipped,
}

impl TypeConvention {
    pub fn type_of(self, outgoing: usize) -> VertexType {
        let two_out = outgoing == 2;
        match (self, two_out) {
            (TypeConvention::Default, true) | (TypeConvention::Flipped, false) => VertexType::I,
            _ => VertexType::II,
        }
    }
}

/// One handle slot: a half-edge of the arrow graph at `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Slot {
    pub vertex: usize,
    pub edge: usize,
    pub outgoing: bool,
}

impl Slot {
    /// Outgoing half-edges have degree 1, incoming ones degree 2.
    pub fn degree(&self) -> u32 {
        if self.outgoing {
            1
        } else {
            2
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YLinkData {
    pub k: usize,
    /// Slot `3v + j` is the j-th half-edge at vertex v, in edge-label order
    /// (a loop contributes its outgoing half first).
    pub slots: Vec<Slot>,
    pub vertex_types: Vec<VertexType>,
    /// Per edge, (tail-side slot, head-side slot).
    pub hopf_pairs: Vec<(usize, usize)>,
    pub convention: TypeConvention,
}

impl YLinkData {
    pub fn slots_at(&self, v: usize) -> std::ops::Range<usize> {
        3 * v..3 * v + 3
    }

    /// Type read off the direction flags of three slots.
    pub fn type_of_slots(&self, slots: &[usize]) -> VertexType {
        self.convention
            .type_of(slots.iter().filter(|&&s| self.slots[s].outgoing).count())
    }

    pub fn block_degrees(&self) -> BlockDegrees {
        BlockDegrees {
            slots: (0..self.slots.len() / 3)
                .map(|v| {
                    let r = self.slots_at(v);
                    [self.slots[r.start].degree(), self.slots[r.start + 1].degree(), self.slots[r.start + 2].degree()]
                })
                .collect(),
        }
    }
}

/// Symmetric 0/1 matrix over all slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingMatrix {
    pub entries: Vec<Vec<i8>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize) -> i8 {
        self.entries[a][b]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().map(|&x| x as i64).sum()).collect()
    }
}

/// Per vertex, the degrees of its three slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDegrees {
    pub slots: Vec<[u32; 3]>,
}

impl BlockDegrees {
    pub fn parity(&self, v: usize) -> u32 {
        self.slots[v].iter().sum::<u32>() % 2
    }
}

pub fn ylink(a: &ArrowGraph, convention: TypeConvention) -> (YLinkData, LinkingMatrix) {
    let g = a.graph();
    let n = g.num_vertices();
    let dirs = a.directions();
    let mut slots = Vec::with_capacity(3 * n);
    let mut tail_slot = vec![usize::MAX; dirs.len()];
    let mut head_slot = vec![usize::MAX; dirs.len()];
    for v in 0..n {
        for (e, &(t, h)) in dirs.iter().enumerate() {
            if t == v {
                tail_slot[e] = slots.len();
                slots.push(Slot { vertex: v, edge: e, outgoing: true });
            }
            if h == v {
                head_slot[e] = slots.len();
                slots.push(Slot { vertex: v, edge: e, outgoing: false });
            }
        }
        debug_assert_eq!(slots.len(), 3 * v + 3);
    }
    let hopf_pairs: Vec<(usize, usize)> = tail_slot.into_iter().zip(head_slot).collect();
    let mut entries = vec![vec![0i8; slots.len()]; slots.len()];
    for &(s, t) in &hopf_pairs {
        entries[s][t] = 1;
        entries[t][s] = 1;
    }
    let vertex_types = (0..n)
        .map(|v| convention.type_of((3 * v..3 * v + 3).filter(|&s| slots[s].outgoing).count()))
        .collect();
    (
        YLinkData {
            k: g.k(),
            slots,
            vertex_types,
            hopf_pairs,
            convention,
        },
        LinkingMatrix { entries },
    )
}

/// Koszul sign of `τ_{σ(0)} ∧ … ∧ τ_{σ(2k−1)} = ± τ_0 ∧ … ∧ τ_{2k−1}` where
/// block τ_v has the parity of its slot degrees.
pub fn block_sign(degrees: &BlockDegrees, sigma: &[usize]) -> i8 {
    let parities: Vec<u32> = sigma.iter().map(|&v| degrees.parity(v)).collect();
    koszul_sign(&parities, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_arrow_orientations, find_arrow_orientation, LabelledTrivalentGraph};

    #[test]
    fn k4_linking() {
        for a in all_arrow_orientations(&LabelledTrivalentGraph::k4()) {
            let (y, l) = ylink(&a, TypeConvention::Default);
            assert_eq!(l.size(), 12);
            assert_eq!(y.hopf_pairs.len(), 6);
            assert!(l.row_sums().iter().all(|&s| s == 1));
            let ones: usize = l.entries.iter().flatten().filter(|&&x| x == 1).count();
            assert_eq!(ones, 12);
            for i in 0..12 {
                for j in 0..12 {
                    assert_eq!(l.get(i, j), l.get(j, i));
                }
            }
        }
    }

    #[test]
    fn theta_linking() {
        let a = find_arrow_orientation(&LabelledTrivalentGraph::theta());
        let (y, l) = ylink(&a, TypeConvention::Default);
        assert_eq!(l.size(), 6);
        for &(s, t) in &y.hopf_pairs {
            assert_ne!(y.slots[s].vertex, y.slots[t].vertex);
        }
    }

    #[test]
    fn types_follow_convention() {
        let a = find_arrow_orientation(&LabelledTrivalentGraph::theta());
        let (d, _) = ylink(&a, TypeConvention::Default);
        let (f, _) = ylink(&a, TypeConvention::Flipped);
        for v in 0..2 {
            assert_ne!(d.vertex_types[v], f.vertex_types[v]);
        }
        let b = d.block_degrees();
        for v in 0..2 {
            assert_eq!(b.parity(v) == 0, d.vertex_types[v] == VertexType::I);
        }
    }

    #[test]
    fn block_sign_examples() {
        let b = BlockDegrees {
            slots: vec![[1, 1, 2], [1, 1, 2], [1, 2, 2], [1, 2, 2]],
        };
        assert_eq!(block_sign(&b, &[0, 1, 2, 3]), 1);
        assert_eq!(block_sign(&b, &[1, 0, 2, 3]), 1);
        assert_eq!(block_sign(&b, &[0, 1, 3, 2]), -1);
    }
}
