//! Labelled trivalent multigraphs, their canonical classes with orientation
//! signs, automorphism groups, edge contraction / IHX expansion and arrow
//! orientations.

pub mod arrow;
pub mod canon;
pub mod ihx;
pub mod perm;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use arrow::{all_arrow_orientations, find_arrow_orientation, ArrowGraph, ArrowJson};
pub use ihx::{contract_edge, ihx_expansions, FourValentGraph, Stub, IHX_COEFFICIENTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be a positive even number, got {0}")]
    BadVertexCount(usize),
    #[error("expected {expected} edges for {vertices} vertices, got {got}")]
    WrongEdgeCount {
        vertices: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge {edge} references vertex {vertex} outside 0..{vertices}")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NonTrivalent { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("directions do not match the edge list at edge {0}")]
    DirectionMismatch(usize),
    #[error("vertex {0} is a source or a sink")]
    SourceOrSink(usize),
    #[error("malformed canonical key: {0}")]
    BadKey(String),
}

/// A connected trivalent multigraph with `2k` vertices and `3k` labelled edges.
/// Position in `edges` is the edge label; vertex indices are the vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledTrivalentGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Wire form of a graph: `{"vertices": V, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Degree of every vertex, loops counted twice.
pub(crate) fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

pub(crate) fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1
}

impl LabelledTrivalentGraph {
    /// Validates a raw vertex count and edge list.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if num_vertices == 0 || num_vertices % 2 == 1 {
            return Err(GraphError::BadVertexCount(num_vertices));
        }
        let expected = 3 * num_vertices / 2;
        if edges.len() != expected {
            return Err(GraphError::WrongEdgeCount {
                vertices: num_vertices,
                expected,
                got: edges.len(),
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
        if let Some((vertex, &degree)) = deg.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(GraphError::NonTrivalent { vertex, degree });
        }
        if !is_connected(num_vertices, &edges) {
            return Err(GraphError::Disconnected);
        }
        Ok(Self {
            num_vertices,
            edges,
        })
    }

    pub(crate) fn new_unchecked(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(Self::new(num_vertices, edges.clone()).is_ok());
        Self {
            num_vertices,
            edges,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, GraphError> {
        Self::new(j.vertices, j.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.num_vertices,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Parses a canonical key `cub:<V>:u-v,...` back into its representative.
    pub fn from_key(key: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::BadKey(key.to_string());
        let rest = key.strip_prefix("cub:").ok_or_else(bad)?;
        let (v, list) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = v.parse().map_err(|_| bad())?;
        let mut edges = Vec::new();
        for part in list.split(',').filter(|s| !s.is_empty()) {
            let (a, b) = part.split_once('-').ok_or_else(bad)?;
            edges.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
        }
        Self::new(n, edges)
    }

    /// Theta graph: two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::new_unchecked(2, vec![(0, 1), (0, 1), (0, 1)])
    }

    /// Two loops joined by a bridge.
    pub fn dumbbell() -> Self {
        Self::new_unchecked(2, vec![(0, 0), (0, 1), (1, 1)])
    }

    pub fn k4() -> Self {
        Self::new_unchecked(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Half the vertex count.
    pub fn k(&self) -> usize {
        self.num_vertices / 2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .any(|&(u, v)| u != v && !seen.insert((u.min(v), u.max(v))))
    }

    /// Applies a vertex permutation and an edge permutation: the edge with label
    /// `e` lands at label `edge_perm[e]` with endpoints mapped by `vertex_perm`.
    pub fn relabel(&self, vertex_perm: &[usize], edge_perm: &[usize]) -> Self {
        let mut edges = vec![(0, 0); self.edges.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            edges[edge_perm[e]] = (vertex_perm[u], vertex_perm[v]);
        }
        Self {
            num_vertices: self.num_vertices,
            edges,
        }
    }

    fn canon(&self) -> canon::Canon {
        canon::canonical(self.num_vertices, &self.edges)
    }

    /// Canonical class with orientation sign.
    pub fn reduce(&self) -> GraphClass {
        let c = self.canon();
        let key = key_of("cub", self.num_vertices, &c.encoding);
        if self.has_odd_automorphism(&c) {
            return GraphClass {
                key,
                status: ClassStatus::Zero,
            };
        }
        let sign = perm::parity(&self.canonical_edge_perm(&c.position));
        GraphClass {
            key,
            status: ClassStatus::Signed(sign),
        }
    }

    /// Edge permutation sending each label to its slot in the canonical
    /// (sorted) edge list; ties are broken by the original label.
    fn canonical_edge_perm(&self, position: &[usize]) -> Vec<usize> {
        let mapped: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (position[u], position[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        let mut order: Vec<usize> = (0..mapped.len()).collect();
        order.sort_by_key(|&e| (mapped[e], e));
        perm::inverse(&order)
    }

    /// Edge permutation induced by a vertex automorphism, matching parallel
    /// edges in label order.
    fn induced_edge_perm(&self, vertex_perm: &[usize]) -> Vec<usize> {
        let norm = |(u, v): (usize, usize)| (u.min(v), u.max(v));
        let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (e, &uv) in self.edges.iter().enumerate() {
            by_pair.entry(norm(uv)).or_default().push(e);
        }
        let mut out = vec![0; self.edges.len()];
        for (pair, labels) in &by_pair {
            let image = norm((vertex_perm[pair.0], vertex_perm[pair.1]));
            let targets = &by_pair[&image];
            for (i, &e) in labels.iter().enumerate() {
                out[e] = targets[i];
            }
        }
        out
    }

    /// Groups of edges with identical endpoints (parallel classes, loops included).
    fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            by_pair.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        by_pair.into_values().collect()
    }

    fn has_odd_automorphism(&self, c: &canon::Canon) -> bool {
        if self.parallel_classes().iter().any(|g| g.len() > 1) {
            return true;
        }
        c.automorphisms
            .iter()
            .any(|a| perm::parity(&self.induced_edge_perm(a)) < 0)
    }

    /// Orders of the automorphism group and of its two factors.
    pub fn automorphism_counts(&self) -> AutCounts {
        let c = self.canon();
        let aut_v = c.automorphisms.len() as u64;
        let aut_e: u64 = self
            .parallel_classes()
            .iter()
            .map(|g| (1..=g.len() as u64).product::<u64>())
            .product();
        AutCounts {
            aut: aut_v * aut_e,
            aut_e,
            aut_v,
        }
    }

    /// The full automorphism group as (vertex, edge) permutation pairs.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let c = self.canon();
        let classes = self.parallel_classes();
        // all edge permutations fixing every vertex
        let mut fixing: Vec<Vec<usize>> = vec![(0..self.edges.len()).collect()];
        for class in classes.iter().filter(|g| g.len() > 1) {
            let mut next = Vec::new();
            for base in &fixing {
                perm::for_each_permutation(class.len(), |p| {
                    let mut q = base.clone();
                    for (i, &e) in class.iter().enumerate() {
                        q[e] = base[class[p[i]]];
                    }
                    next.push(q);
                });
            }
            fixing = next;
        }
        let mut out = Vec::with_capacity(c.automorphisms.len() * fixing.len());
        for a in &c.automorphisms {
            let induced = self.induced_edge_perm(a);
            for f in &fixing {
                out.push(Automorphism {
                    vertex_perm: a.clone(),
                    edge_perm: perm::compose(&induced, f),
                });
            }
        }
        out
    }

    /// Relative orientation of two graphs.
    pub fn iso_sign(&self, other: &Self) -> IsoSign {
        let (a, b) = (self.reduce(), other.reduce());
        if a.key != b.key {
            return IsoSign::NotIsomorphic;
        }
        match (a.status, b.status) {
            (ClassStatus::Signed(x), ClassStatus::Signed(y)) => IsoSign::Signed(x * y),
            _ => IsoSign::Zero,
        }
    }
}

pub(crate) fn key_of(prefix: &str, n: usize, encoding: &[(u8, u8)]) -> String {
    format!("{prefix}:{n}:{}", canon::render_edges(encoding))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassStatus {
    Zero,
    Signed(i8),
}

/// Isomorphism class of a labelled graph together with its orientation sign
/// relative to the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphClass {
    pub key: String,
    pub status: ClassStatus,
}

impl GraphClass {
    pub fn is_zero(&self) -> bool {
        self.status == ClassStatus::Zero
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoSign {
    NotIsomorphic,
    Zero,
    Signed(i8),
}

/// An incidence-compatible pair of vertex and edge permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
}

impl Automorphism {
    pub fn edge_parity(&self) -> i8 {
        perm::parity(&self.edge_perm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutCounts {
    pub aut: u64,
    pub aut_e: u64,
    pub aut_v: u64,
}
