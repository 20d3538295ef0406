//! 𝒞-graphs: trivalent graphs with some edges split into two decorated arcs.
//!
//! Edge `(u, v)` is read as running from `u` to `v`. When it is split, the
//! arc leaving `u` ends at a white vertex carrying the input critical point
//! `p`, and the arc entering `v` starts at a white vertex carrying the output
//! critical point `q`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{MorseError, Propagator, TOP};
use crate::graph::LabelledTrivalentGraph;

/// A basis element of the Morse complex: its index (degree) and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CritPoint {
    pub index: u8,
    pub id: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decoration {
    pub p: CritPoint,
    pub q: CritPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeparatedEdge {
    pub tail: usize,
    pub head: usize,
    pub decoration: Decoration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGraph {
    num_vertices: usize,
    compact: BTreeMap<usize, (usize, usize)>,
    separated: BTreeMap<usize, SeparatedEdge>,
}

impl CGraph {
    pub fn num_black(&self) -> usize {
        self.num_vertices
    }

    pub fn num_white(&self) -> usize {
        2 * self.separated.len()
    }

    pub fn compact_edges(&self) -> &BTreeMap<usize, (usize, usize)> {
        &self.compact
    }

    pub fn separated_edges(&self) -> &BTreeMap<usize, SeparatedEdge> {
        &self.separated
    }

    /// |p| − |q| for a separated edge, 1 for a compact one.
    pub fn degree(&self, edge: usize) -> Option<i32> {
        if self.compact.contains_key(&edge) {
            return Some(1);
        }
        self.separated
            .get(&edge)
            .map(|s| s.decoration.p.index as i32 - s.decoration.q.index as i32)
    }

    /// Black-vertex components once every separated edge is cut: with all
    /// edges separated each component is a single Y.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(u, v) in self.compact.values() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.num_vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// Splits the edges in `subset`; `decorations` must hold exactly one entry per split edge.
pub fn split_edges(
    g: &LabelledTrivalentGraph,
    subset: &[usize],
    decorations: &BTreeMap<usize, Decoration>,
) -> Result<CGraph, MorseError> {
    let bad = |s: String| MorseError::InvalidDecoration(s);
    let m = g.edges().len();
    let mut separated = BTreeMap::new();
    for &e in subset {
        if e >= m {
            return Err(bad(format!("edge {e} does not exist")));
        }
        let d = *decorations.get(&e).ok_or_else(|| bad(format!("edge {e} has no decoration")))?;
        if d.p.index as usize > TOP || d.q.index as usize > TOP {
            return Err(bad(format!("edge {e} has an index above {TOP}")));
        }
        let (tail, head) = g.edges()[e];
        if separated.insert(e, SeparatedEdge { tail, head, decoration: d }).is_some() {
            return Err(bad(format!("edge {e} listed twice")));
        }
    }
    if let Some(e) = decorations.keys().find(|e| !separated.contains_key(e)) {
        return Err(bad(format!("edge {e} is decorated but not split")));
    }
    let compact = (0..m).filter(|e| !separated.contains_key(e)).map(|e| (e, g.edges()[e])).collect();
    Ok(CGraph {
        num_vertices: g.num_vertices(),
        compact,
        separated,
    })
}

/// Re-joins each pair of white vertices.
pub fn close(c: &CGraph) -> LabelledTrivalentGraph {
    let m = c.compact.len() + c.separated.len();
    let edges = (0..m)
        .map(|e| match c.compact.get(&e) {
            Some(&uv) => uv,
            None => {
                let s = &c.separated[&e];
                (s.tail, s.head)
            }
        })
        .collect();
    LabelledTrivalentGraph::new(c.num_vertices, edges).expect("closing restores a valid graph")
}

/// `∏ (−g⁽ⁱ⁾_{q_i p_i})` over separated edges, together with the closed graph.
/// `gs[e]` is the propagator attached to edge label `e`.
pub fn trace_tr_g(gs: &[Propagator], c: &CGraph) -> Result<(BigRational, LabelledTrivalentGraph), MorseError> {
    let mut coef = BigRational::one();
    for (&e, s) in &c.separated {
        let Decoration { p, q } = s.decoration;
        if p.index != q.index + 1 {
            return Err(MorseError::DegreeMismatch { edge: e, p: p.index, q: q.index });
        }
        let g = gs
            .get(e)
            .ok_or_else(|| MorseError::InvalidDecoration(format!("no propagator for edge {e}")))?;
        let x = g
            .coefficient(q.index as usize, q.id, p.id)
            .ok_or_else(|| MorseError::InvalidDecoration(format!("edge {e} refers to a missing critical point")))?;
        coef *= -x;
    }
    Ok((coef, close(c)))
}
