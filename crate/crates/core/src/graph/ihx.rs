//! Edge contraction to a single 4-valent vertex and the three IHX splittings.

use super::{canon, degrees, is_connected, key_of, GraphError, LabelledTrivalentGraph};

/// A half-edge: edge label plus which end (0 = first listed endpoint, 1 = second).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stub {
    pub edge: usize,
    pub end: u8,
}

/// Coefficients of the pairings `{h1,h2|h3,h4}`, `{h1,h3|h2,h4}`, `{h1,h4|h2,h3}`.
///
/// Orientations are orderings of edges, so the three splittings carry the same
/// labelling data and the relation is symmetric under re-tagging.
pub const IHX_COEFFICIENTS: [i64; 3] = [1, 1, 1];

/// A connected multigraph whose vertices are trivalent except one 4-valent
/// vertex, together with an ordering of the four stubs there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourValentGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    distinguished: usize,
    tagging: [Stub; 4],
}

impl FourValentGraph {
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        distinguished: usize,
        tagging: [Stub; 4],
    ) -> Result<Self, GraphError> {
        if distinguished >= num_vertices {
            return Err(GraphError::VertexOutOfRange {
                edge: 0,
                vertex: distinguished,
                vertices: num_vertices,
            });
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex: w,
                        vertices: num_vertices,
                    });
                }
            }
        }
        let deg = degrees(num_vertices, &edges);
        for (vertex, &d) in deg.iter().enumerate() {
            let want = if vertex == distinguished { 4 } else { 3 };
            if d != want {
                return Err(GraphError::NonTrivalent { vertex, degree: d });
            }
        }
        if !is_connected(num_vertices, &edges) {
            return Err(GraphError::Disconnected);
        }
        let mut tags = tagging.to_vec();
        tags.sort();
        tags.dedup();
        let at_vertex = |s: &Stub| {
            s.edge < edges.len() && s.end < 2 && {
                let (u, v) = edges[s.edge];
                (if s.end == 0 { u } else { v }) == distinguished
            }
        };
        if tags.len() != 4 || !tagging.iter().all(at_vertex) {
            return Err(GraphError::NonTrivalent {
                vertex: distinguished,
                degree: 4,
            });
        }
        Ok(Self {
            num_vertices,
            edges,
            distinguished,
            tagging,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn tagging(&self) -> [Stub; 4] {
        self.tagging
    }

    /// Canonical key of the underlying multigraph (the 4-valent vertex is
    /// singled out by its degree).
    pub fn key(&self) -> String {
        key_of("quad", self.num_vertices, &canon::canonical(self.num_vertices, &self.edges).encoding)
    }
}

/// Merges the endpoints of edge `e` into a 4-valent vertex.
///
/// The merged vertex keeps the lower endpoint's index, the higher endpoint is
/// removed and later vertices shift down by one; edges after `e` shift down a
/// label. The tagging lists the two stubs of the lower endpoint, then the two
/// of the higher endpoint, each pair in edge-label order.
pub fn contract_edge(g: &LabelledTrivalentGraph, e: usize) -> Result<FourValentGraph, GraphError> {
    let &(a, b) = g.edges().get(e).ok_or(GraphError::NoSuchEdge(e))?;
    if a == b {
        return Err(GraphError::LoopContraction(e));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let stubs_at = |w: usize| -> Vec<Stub> {
        let mut out = Vec::new();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if i == e {
                continue;
            }
            let label = if i > e { i - 1 } else { i };
            if u == w {
                out.push(Stub { edge: label, end: 0 });
            }
            if v == w {
                out.push(Stub { edge: label, end: 1 });
            }
        }
        out
    };
    let (s_lo, s_hi) = (stubs_at(lo), stubs_at(hi));
    debug_assert_eq!((s_lo.len(), s_hi.len()), (2, 2));
    let shift = |w: usize| {
        if w == hi {
            lo
        } else if w > hi {
            w - 1
        } else {
            w
        }
    };
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, &(u, v))| (shift(u), shift(v)))
        .collect();
    Ok(FourValentGraph {
        num_vertices: g.num_vertices() - 1,
        edges,
        distinguished: lo,
        tagging: [s_lo[0], s_lo[1], s_hi[0], s_hi[1]],
    })
}

/// The three splittings of the 4-valent vertex. The first group of each
/// pairing stays on the distinguished vertex, the second moves to a new vertex
/// appended at the end; the new edge joining them gets label `new_edge_label`
/// and later labels shift up by one.
pub fn ihx_expansions(c: &FourValentGraph, new_edge_label: usize) -> [(i64, LabelledTrivalentGraph); 3] {
    assert!(new_edge_label <= c.edges.len(), "new edge label out of range");
    let [h1, h2, h3, h4] = c.tagging;
    let pairings = [[h1, h2, h3, h4], [h1, h3, h2, h4], [h1, h4, h2, h3]];
    let d = c.distinguished;
    let fresh = c.num_vertices;
    let build = |p: [Stub; 4]| {
        let mut edges = c.edges.clone();
        for s in &p[2..] {
            let (u, v) = &mut edges[s.edge];
            if s.end == 0 {
                *u = fresh;
            } else {
                *v = fresh;
            }
        }
        edges.insert(new_edge_label, (d, fresh));
        LabelledTrivalentGraph::new_unchecked(c.num_vertices + 1, edges)
    };
    [
        (IHX_COEFFICIENTS[0], build(pairings[0])),
        (IHX_COEFFICIENTS[1], build(pairings[1])),
        (IHX_COEFFICIENTS[2], build(pairings[2])),
    ]
}
