//! Free graded chain complexes in degrees 0..=4, their combinatorial
//! propagators (chain contractions), handle-slide transport and 𝒞-graph traces.

pub mod cgraph;
pub mod matrix;
pub mod surviving;
pub mod transport;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{parse_rational, render_rational};
pub use cgraph::{close, split_edges, trace_tr_g, CGraph, CritPoint, Decoration};
use matrix::{identity, is_identity, mul, neg, sub, to_q, transpose, zeros, IntMatrix, QMatrix};
pub use surviving::{surviving_indices, IndexTuple, VertexType};
pub use transport::{transport, HandleSlideEvent, Transport};

/// Top degree of every complex handled here.
pub const TOP: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("expected {expected} ranks (degrees 0..=4), got {got}")]
    RankCount { expected: usize, got: usize },
    #[error("boundary in degree {degree} should be {rows}×{cols}")]
    Shape { degree: usize, rows: usize, cols: usize },
    #[error("boundary degree {0} is outside 1..=4")]
    BadDegree(String),
    #[error("∂∂ ≠ 0: (∂_{} ∂_{degree})[{row}][{col}] = {value}", degree - 1)]
    NotAComplex { degree: usize, row: usize, col: usize, value: i128 },
    #[error("homology in degree {degree} has rank {defect}; no contraction exists")]
    NotAcyclic { degree: usize, defect: usize },
    #[error("separated edge {edge} joins index {p} to index {q}; a degree-one edge needs |p| = |q| + 1")]
    DegreeMismatch { edge: usize, p: u8, q: u8 },
    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),
    #[error("invalid handle slide: {0}")]
    InvalidEvent(String),
    #[error("malformed propagator: {0}")]
    BadPropagator(String),
}

/// `boundaries[d - 1]` is ∂_d: C_d → C_{d−1}, stored with row = target and
/// column = source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    ranks: [usize; TOP + 1],
    boundaries: Vec<IntMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub boundaries: BTreeMap<String, IntMatrix>,
}

impl GradedComplex {
    /// Checks shapes only; see [`check_complex`] for ∂∂ = 0.
    pub fn new(ranks: &[usize], boundaries: BTreeMap<usize, IntMatrix>) -> Result<Self, MorseError> {
        if ranks.len() != TOP + 1 {
            return Err(MorseError::RankCount {
                expected: TOP + 1,
                got: ranks.len(),
            });
        }
        let ranks: [usize; TOP + 1] = ranks.try_into().unwrap();
        let mut out = Vec::with_capacity(TOP);
        for d in 1..=TOP {
            let (rows, cols) = (ranks[d - 1], ranks[d]);
            let m = match boundaries.get(&d) {
                Some(m) => m.clone(),
                None => vec![vec![0; cols]; rows],
            };
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(MorseError::Shape { degree: d, rows, cols });
            }
            out.push(m);
        }
        if let Some(&d) = boundaries.keys().find(|&&d| d == 0 || d > TOP) {
            return Err(MorseError::BadDegree(d.to_string()));
        }
        Ok(Self { ranks, boundaries: out })
    }

    pub fn zero() -> Self {
        Self::new(&[0; TOP + 1], BTreeMap::new()).unwrap()
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, MorseError> {
        let mut b = BTreeMap::new();
        for (k, m) in &j.boundaries {
            let d: usize = k.parse().map_err(|_| MorseError::BadDegree(k.clone()))?;
            b.insert(d, m.clone());
        }
        Self::new(&j.ranks, b)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ranks: self.ranks.to_vec(),
            boundaries: (1..=TOP).map(|d| (d.to_string(), self.boundaries[d - 1].clone())).collect(),
        }
    }

    pub fn ranks(&self) -> &[usize; TOP + 1] {
        &self.ranks
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// ∂_d for d in 1..=4.
    pub fn boundary(&self, d: usize) -> &IntMatrix {
        &self.boundaries[d - 1]
    }

    fn boundary_q(&self, d: usize) -> QMatrix {
        if d == 0 || d > TOP {
            return zeros(self.rank(d.wrapping_sub(1)), self.rank(d));
        }
        to_q(self.boundary(d))
    }

    /// Rational Betti number in degree d.
    pub fn betti(&self, d: usize) -> usize {
        let r = |e: usize| {
            if e == 0 || e > TOP {
                0
            } else {
                matrix::rank(&to_q(self.boundary(e)), self.rank(e))
            }
        };
        self.rank(d) - r(d) - r(d + 1)
    }
}

pub fn check_complex(c: &GradedComplex) -> Result<(), MorseError> {
    for d in 2..=TOP {
        let (a, b) = (c.boundary(d - 1), c.boundary(d));
        for (row, ar) in a.iter().enumerate() {
            for col in 0..c.rank(d) {
                let value: i128 = ar.iter().zip(b).map(|(&x, br)| x as i128 * br[col] as i128).sum();
                if value != 0 {
                    return Err(MorseError::NotAComplex { degree: d, row, col, value });
                }
            }
        }
    }
    Ok(())
}

/// g_d: C_d → C_{d+1} for d in 0..=4 (g_4 is always zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagator {
    ranks: [usize; TOP + 1],
    g: Vec<QMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PropagatorJson {
    pub ranks: Vec<usize>,
    pub g: BTreeMap<String, Vec<Vec<String>>>,
}

impl Propagator {
    pub fn g(&self, d: usize) -> &QMatrix {
        &self.g[d]
    }

    /// Coefficient of basis element `target` (degree d+1) in g(`source`) (degree d).
    pub fn coefficient(&self, d: usize, source: usize, target: usize) -> Option<&BigRational> {
        self.g.get(d)?.get(target)?.get(source)
    }

    pub fn to_json(&self) -> PropagatorJson {
        PropagatorJson {
            ranks: self.ranks.to_vec(),
            g: (0..TOP)
                .map(|d| {
                    let m = self.g[d].iter().map(|r| r.iter().map(render_rational).collect()).collect();
                    (d.to_string(), m)
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PropagatorJson) -> Result<Self, MorseError> {
        let bad = |s: &str| MorseError::BadPropagator(s.to_string());
        let ranks: [usize; TOP + 1] = j.ranks.as_slice().try_into().map_err(|_| bad("ranks"))?;
        let mut g = Vec::with_capacity(TOP + 1);
        for d in 0..=TOP {
            let rows = if d < TOP { ranks[d + 1] } else { 0 };
            let m = match j.g.get(&d.to_string()) {
                Some(m) => m
                    .iter()
                    .map(|r| r.iter().map(|s| parse_rational(s).ok_or_else(|| bad(s))).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<QMatrix, _>>()?,
                None => zeros(rows, ranks[d]),
            };
            if m.len() != rows || m.iter().any(|r| r.len() != ranks[d]) {
                return Err(bad(&format!("g_{d} has the wrong shape")));
            }
            g.push(m);
        }
        Ok(Self { ranks, g })
    }
}

/// ∂_{d+1} g_d + g_{d−1} ∂_d in degree d.
fn homotopy(c: &GradedComplex, g: &Propagator, d: usize) -> QMatrix {
    let n = c.rank(d);
    let up = mul(&c.boundary_q(d + 1), &g.g[d], n);
    if d == 0 {
        return up;
    }
    let down = mul(&g.g[d - 1], &c.boundary_q(d), n);
    matrix::add(&up, &down)
}

/// Whether ∂g + g∂ = id in every degree.
pub fn is_contraction(c: &GradedComplex, g: &Propagator) -> bool {
    (0..=TOP).all(|d| is_identity(&homotopy(c, g, d)))
}

/// Whether ∂g and g∂ are idempotent in every degree.
pub fn has_idempotent_projections(c: &GradedComplex, g: &Propagator) -> bool {
    (0..=TOP).all(|d| {
        let n = c.rank(d);
        let dg = mul(&c.boundary_q(d + 1), &g.g[d], n);
        let gd = if d == 0 { zeros(n, n) } else { mul(&g.g[d - 1], &c.boundary_q(d), n) };
        mul(&dg, &dg, n) == dg && mul(&gd, &gd, n) == gd
    })
}

/// A rational chain contraction, solved degree by degree from ∂_{d+1} g_d =
/// id − g_{d−1} ∂_d with free variables set to zero.
pub fn compute_propagator(c: &GradedComplex) -> Result<Propagator, MorseError> {
    check_complex(c)?;
    for d in 0..=TOP {
        let defect = c.betti(d);
        if defect != 0 {
            return Err(MorseError::NotAcyclic { degree: d, defect });
        }
    }
    let ranks = c.ranks;
    let mut g: Vec<QMatrix> = (0..=TOP).map(|d| zeros(c.rank(d + 1), ranks[d])).collect();
    for d in 0..TOP {
        let n = ranks[d];
        let mut rhs = identity(n);
        if d > 0 {
            rhs = sub(&rhs, &mul(&g[d - 1], &c.boundary_q(d), n));
        }
        g[d] = matrix::solve(&c.boundary_q(d + 1), ranks[d + 1], &rhs, n)
            .expect("cycles are boundaries in an acyclic complex");
    }
    let p = Propagator { ranks, g };
    debug_assert!(is_contraction(c, &p));
    Ok(p)
}

/// The degree-reversed dual complex (degree d ↦ 4 − d) with ∂*_d = −(∂_{5−d})ᵀ
/// and g*_d = −(g_{3−d})ᵀ.
pub fn dual_propagator(c: &GradedComplex, g: &Propagator) -> (GradedComplex, Propagator) {
    let mut ranks = c.ranks;
    ranks.reverse();
    let boundaries: BTreeMap<usize, IntMatrix> = (1..=TOP)
        .map(|d| {
            let src = 5 - d;
            let t = transpose(c.boundary(src), c.rank(src));
            (d, t.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect())
        })
        .collect();
    let dual = GradedComplex::new(&ranks, boundaries).expect("transposed shapes are consistent");
    let mut gs: Vec<QMatrix> = (0..TOP).map(|d| neg(&transpose(&g.g[3 - d], c.rank(3 - d)))).collect();
    gs.push(zeros(0, ranks[TOP]));
    (dual, Propagator { ranks, g: gs })
}
