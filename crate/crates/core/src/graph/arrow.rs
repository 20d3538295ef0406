//! Arrow orientations: every vertex has at least one incoming and one
//! outgoing half-edge.

use serde::{Deserialize, Serialize};

use super::{GraphError, LabelledTrivalentGraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowGraph {
    graph: LabelledTrivalentGraph,
    directions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub directions: Vec<[usize; 2]>,
}

impl ArrowGraph {
    /// `directions[e]` is `(tail, head)` for edge `e` and must list the same
    /// endpoints as the edge.
    pub fn new(graph: LabelledTrivalentGraph, directions: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if directions.len() != graph.edges().len() {
            return Err(GraphError::DirectionMismatch(directions.len().min(graph.edges().len())));
        }
        for (e, (&(u, v), &(t, h))) in graph.edges().iter().zip(&directions).enumerate() {
            if !((u, v) == (t, h) || (u, v) == (h, t)) {
                return Err(GraphError::DirectionMismatch(e));
            }
        }
        let (ins, outs) = in_out(graph.num_vertices(), &directions);
        if let Some(v) = (0..graph.num_vertices()).find(|&v| ins[v] == 0 || outs[v] == 0) {
            return Err(GraphError::SourceOrSink(v));
        }
        Ok(Self { graph, directions })
    }

    pub fn from_json(j: &ArrowJson) -> Result<Self, GraphError> {
        let graph = LabelledTrivalentGraph::from_json(&super::GraphJson {
            vertices: j.vertices,
            edges: j.edges.clone(),
        })?;
        Self::new(graph, j.directions.iter().map(|d| (d[0], d[1])).collect())
    }

    pub fn to_json(&self) -> ArrowJson {
        let g = self.graph.to_json();
        ArrowJson {
            vertices: g.vertices,
            edges: g.edges,
            directions: self.directions.iter().map(|&(t, h)| [t, h]).collect(),
        }
    }

    pub fn graph(&self) -> &LabelledTrivalentGraph {
        &self.graph
    }

    pub fn directions(&self) -> &[(usize, usize)] {
        &self.directions
    }

    /// Number of (incoming, outgoing) half-edges at `v`.
    pub fn in_out(&self, v: usize) -> (usize, usize) {
        let (ins, outs) = in_out(self.graph.num_vertices(), &self.directions);
        (ins[v], outs[v])
    }
}

fn in_out(n: usize, directions: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut ins = vec![0; n];
    let mut outs = vec![0; n];
    for &(t, h) in directions {
        outs[t] += 1;
        ins[h] += 1;
    }
    (ins, outs)
}

/// Backtracking over edges in label order, trying `(u, v)` before `(v, u)`.
fn search(g: &LabelledTrivalentGraph, mut visit: impl FnMut(&[(usize, usize)]) -> bool) {
    let n = g.num_vertices();
    let edges = g.edges();
    // last edge label touching each vertex, after which its pattern is final
    let mut last = vec![0usize; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        last[u] = e;
        last[v] = e;
    }
    let mut dirs = Vec::with_capacity(edges.len());
    let mut ins = vec![0usize; n];
    let mut outs = vec![0usize; n];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        e: usize,
        edges: &[(usize, usize)],
        last: &[usize],
        dirs: &mut Vec<(usize, usize)>,
        ins: &mut [usize],
        outs: &mut [usize],
        visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
    ) -> bool {
        if e == edges.len() {
            return visit(dirs);
        }
        let (u, v) = edges[e];
        let options: &[(usize, usize)] = if u == v { &[(u, v)] } else { &[(u, v), (v, u)] };
        for &(t, h) in options {
            outs[t] += 1;
            ins[h] += 1;
            dirs.push((t, h));
            let ok = [t, h]
                .iter()
                .all(|&w| last[w] != e || (ins[w] > 0 && outs[w] > 0));
            let stop = ok && rec(e + 1, edges, last, dirs, ins, outs, visit);
            dirs.pop();
            outs[t] -= 1;
            ins[h] -= 1;
            if stop {
                return true;
            }
        }
        false
    }
    rec(0, edges, &last, &mut dirs, &mut ins, &mut outs, &mut visit);
}

/// First arrow orientation in the fixed search order.
pub fn find_arrow_orientation(g: &LabelledTrivalentGraph) -> ArrowGraph {
    let mut found = None;
    search(g, |d| {
        found = Some(d.to_vec());
        true
    });
    let directions = found.expect("every connected trivalent graph admits an arrow orientation");
    ArrowGraph {
        graph: g.clone(),
        directions,
    }
}

/// Every arrow orientation, in search order.
pub fn all_arrow_orientations(g: &LabelledTrivalentGraph) -> Vec<ArrowGraph> {
    let mut out = Vec::new();
    search(g, |d| {
        out.push(ArrowGraph {
            graph: g.clone(),
            directions: d.to_vec(),
        });
        false
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_source_or_sink(a: &ArrowGraph) -> bool {
        (0..a.graph().num_vertices()).all(|v| {
            let (i, o) = a.in_out(v);
            i > 0 && o > 0
        })
    }

    #[test]
    fn k4_orientation() {
        let a = find_arrow_orientation(&LabelledTrivalentGraph::k4());
        assert!(no_source_or_sink(&a));
        let all = all_arrow_orientations(&LabelledTrivalentGraph::k4());
        assert!(all.iter().all(no_source_or_sink));
        // brute force over the 64 direction choices
        let k4 = LabelledTrivalentGraph::k4();
        let brute = (0..64u32)
            .filter(|mask| {
                let dirs: Vec<_> = k4
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(e, &(u, v))| if mask >> e & 1 == 0 { (u, v) } else { (v, u) })
                    .collect();
                ArrowGraph::new(k4.clone(), dirs).is_ok()
            })
            .count();
        assert_eq!(all.len(), brute);
    }

    #[test]
    fn theta_orientation() {
        let a = find_arrow_orientation(&LabelledTrivalentGraph::theta());
        assert_eq!(a.directions(), &[(0, 1), (0, 1), (1, 0)]);
    }

    #[test]
    fn loops_give_both_directions() {
        let a = find_arrow_orientation(&LabelledTrivalentGraph::dumbbell());
        assert!(no_source_or_sink(&a));
    }

    #[test]
    fn rejects_sources() {
        let k4 = LabelledTrivalentGraph::k4();
        let dirs = k4.edges().to_vec();
        assert_eq!(ArrowGraph::new(k4, dirs), Err(GraphError::SourceOrSink(0)));
    }
}
