//! Canonical labelling of small multigraphs.
//!
//! Equitable partition refinement on the multiplicity matrix, then
//! individualisation of target cells; every leaf of the search tree gives a
//! vertex ordering and the lexicographically smallest sorted edge list wins.
//! Two leaves with equal encodings differ by an automorphism; automorphisms
//! found so far prune sibling branches in the same orbit (under the
//! automorphisms fixing the individualised vertices), and the full vertex
//! automorphism group is generated from them at the end.
//!
//! Isolated vertices are interchangeable and never individualised; they are
//! placed last in index order. Automorphisms therefore fix them pointwise.

/// Outcome of the canonical search.
#[derive(Clone, Debug)]
pub struct Canon {
    /// `position[v]` is the canonical label of vertex `v`.
    pub position: Vec<usize>,
    /// Sorted canonical edge list, every pair `(a, b)` with `a <= b`.
    pub encoding: Vec<(u8, u8)>,
    /// Vertex automorphisms (`perm[v]` = image of `v`); contains the identity.
    pub automorphisms: Vec<Vec<usize>>,
}

struct Search<'a> {
    n: usize,
    mult: Vec<u8>,
    edges: &'a [(usize, usize)],
    isolated: Vec<usize>,
    best: Option<(Vec<(u8, u8)>, Vec<usize>)>,
    first: Option<(Vec<(u8, u8)>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn m(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n + v]
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let mut cell_of = vec![0usize; self.n];
        loop {
            for (ci, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = ci;
                }
            }
            let ncells = cells.len();
            let mut next = Vec::with_capacity(ncells);
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, usize)> = c
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u8; ncells];
                        for w in 0..self.n {
                            let m = self.m(v, w);
                            if m > 0 {
                                sig[cell_of[w]] += m;
                            }
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == ncells {
                return next;
            }
            cells = next;
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let mut order: Vec<usize> = cells.iter().flatten().copied().collect();
        order.extend(self.isolated.iter().copied());
        let mut position = vec![0usize; self.n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let mut enc: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (position[u] as u8, position[v] as u8);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        enc.sort_unstable();
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == enc {
                let vertex_at = super::perm::inverse(&reference.1);
                let aut: Vec<usize> = (0..self.n).map(|v| vertex_at[position[v]]).collect();
                if aut.iter().enumerate().any(|(i, &x)| i != x) {
                    self.generators.push(aut);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((enc.clone(), position.clone()));
        }
        if self.best.as_ref().map_or(true, |b| enc < b.0) {
            self.best = Some((enc, position));
        }
    }

    /// Orbits of the found automorphisms that fix every vertex in `fixed`.
    fn orbit_roots(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &self.generators {
            if fixed.iter().any(|&v| g[v] != v) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        let target = cells.iter().position(|c| c.len() > 1);
        let Some(t) = target else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if !explored.is_empty() {
                let roots = self.orbit_roots(fixed);
                if explored.iter().any(|&w| roots[w] == roots[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut split = Vec::with_capacity(cells.len() + 1);
            split.extend(cells[..t].iter().cloned());
            split.push(vec![v]);
            split.push(cells[t].iter().copied().filter(|&w| w != v).collect());
            split.extend(cells[t + 1..].iter().cloned());
            let refined = self.refine(split);
            fixed.push(v);
            self.descend(refined, fixed);
            fixed.pop();
        }
    }
}

/// All products of the generators, identity included.
fn closure(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::from([identity.clone()]);
    let mut out = vec![identity];
    let mut i = 0;
    while i < out.len() {
        for g in generators {
            let next = super::perm::compose(g, &out[i]);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Canonical form of the multigraph on `n` vertices with the given edge list.
pub fn canonical(n: usize, edges: &[(usize, usize)]) -> Canon {
    assert!(n <= u8::MAX as usize, "canonical search supports at most 255 vertices");
    let mut mult = vec![0u8; n * n];
    let mut degree = vec![0u32; n];
    let mut loops = vec![0u32; n];
    for &(u, v) in edges {
        if u == v {
            mult[u * n + u] += 1;
            loops[u] += 1;
            degree[u] += 2;
        } else {
            mult[u * n + v] += 1;
            mult[v * n + u] += 1;
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let isolated: Vec<usize> = (0..n).filter(|&v| degree[v] == 0).collect();
    let mut active: Vec<(u32, u32, usize)> = (0..n)
        .filter(|&v| degree[v] > 0)
        .map(|v| (degree[v], loops[v], v))
        .collect();
    active.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(d, l, v)) in active.iter().enumerate() {
        if i > 0 && (active[i - 1].0, active[i - 1].1) == (d, l) {
            cells.last_mut().unwrap().push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    let mut search = Search {
        n,
        mult,
        edges,
        isolated,
        best: None,
        first: None,
        generators: Vec::new(),
    };
    if cells.is_empty() {
        search.leaf(&cells);
    } else {
        let refined = search.refine(cells);
        search.descend(refined, &mut Vec::new());
    }
    let (encoding, position) = search.best.take().unwrap();
    let automorphisms = closure(n, &search.generators);
    Canon {
        position,
        encoding,
        automorphisms,
    }
}

/// Renders an encoding as comma separated `u-v` pairs.
pub fn render_edges(encoding: &[(u8, u8)]) -> String {
    let parts: Vec<String> = encoding.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    parts.join(",")
}
