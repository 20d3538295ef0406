//! Isomorphism classes of connected trivalent multigraphs by canonical
//! augmentation.
//!
//! Graphs grow one edge at a time on a fixed vertex set, keeping the
//! non-isolated part connected. A child is kept only when the edge just added
//! lies in the automorphism orbit of its canonical deletion edge (the
//! deletable edge with the largest canonical endpoints), and children of one
//! parent are generated one per orbit of candidate pairs, so each class
//! appears once.

use rayon::prelude::*;

use crate::graph::canon::{canonical, Canon};
use crate::graph::{ClassStatus, LabelledTrivalentGraph};

type Encoding = Vec<(u8, u8)>;

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    crate::graph::degrees(n, edges)
}

/// Connected after ignoring isolated vertices.
fn active_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let deg = degrees(n, edges);
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let Some(start) = (0..n).find(|&v| deg[v] > 0) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..n).all(|v| deg[v] == 0 || seen[v])
}

fn pair_orbit_rep(auts: &[Vec<usize>], (a, b): (usize, usize)) -> (usize, usize) {
    auts.iter().map(|p| norm(p[a], p[b])).min().unwrap()
}

fn edges_of(enc: &Encoding) -> Vec<(usize, usize)> {
    enc.iter().map(|&(a, b)| (a as usize, b as usize)).collect()
}

fn canonical_deletion(n: usize, edges: &[(usize, usize)], canon: &Canon) -> (usize, usize) {
    let mut best: Option<((usize, usize), (usize, usize))> = None;
    let mut distinct: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| norm(u, v)).collect();
    distinct.sort();
    distinct.dedup();
    for pair in distinct {
        let i = edges.iter().position(|&(u, v)| norm(u, v) == pair).unwrap();
        let mut rest = edges.to_vec();
        rest.remove(i);
        if !active_connected(n, &rest) {
            continue;
        }
        let score = norm(canon.position[pair.0], canon.position[pair.1]);
        if best.map_or(true, |(s, _)| score > s) {
            best = Some((score, pair));
        }
    }
    best.expect("a connected multigraph always has a deletable edge").1
}

fn children(n: usize, parent: &Encoding) -> Vec<Encoding> {
    let edges = edges_of(parent);
    let deg = degrees(n, &edges);
    let pcanon = canonical(n, &edges);
    let active: Vec<usize> = (0..n).filter(|&v| deg[v] > 0).collect();
    let first_isolated = (0..n).find(|&v| deg[v] == 0);

    let mut candidates: Vec<(usize, usize)> = Vec::new();
    if edges.is_empty() {
        candidates.push((0, 0));
        if n > 1 {
            candidates.push((0, 1));
        }
    } else {
        for (i, &u) in active.iter().enumerate() {
            for &v in &active[i..] {
                let ok = if u == v { deg[u] + 2 <= 3 } else { deg[u] < 3 && deg[v] < 3 };
                if ok {
                    candidates.push((u, v));
                }
            }
            if let Some(w) = first_isolated {
                if deg[u] < 3 {
                    candidates.push((u, w));
                }
            }
        }
    }
    let mut reps: Vec<(usize, usize)> = candidates
        .into_iter()
        .map(|c| pair_orbit_rep(&pcanon.automorphisms, norm(c.0, c.1)))
        .collect();
    reps.sort();
    reps.dedup();

    let mut out = Vec::new();
    for (u, v) in reps {
        let mut child = edges.clone();
        child.push((u, v));
        let cdeg = degrees(n, &child);
        let has_isolated = cdeg.iter().any(|&d| d == 0);
        if has_isolated && cdeg.iter().all(|&d| d == 0 || d == 3) {
            continue;
        }
        let canon = canonical(n, &child);
        let del = canonical_deletion(n, &child, &canon);
        let added = norm(u, v);
        let accepted = canon.automorphisms.iter().any(|p| norm(p[added.0], p[added.1]) == del);
        if accepted {
            out.push(canon.encoding);
        }
    }
    out
}

/// One isomorphism class with its canonical representative.
#[derive(Clone, Debug)]
pub struct EnumeratedClass {
    pub key: String,
    pub representative: LabelledTrivalentGraph,
    pub status: ClassStatus,
}

/// All connected trivalent multigraphs on `2k` vertices up to isomorphism,
/// sorted by canonical key.
pub fn enumerate_classes(k: usize) -> Vec<EnumeratedClass> {
    assert!(k >= 1);
    let n = 2 * k;
    let mut level: Vec<Encoding> = vec![Vec::new()];
    for _ in 0..3 * k {
        let mut next: Vec<Encoding> = level.par_iter().flat_map_iter(|p| children(n, p)).collect();
        next.par_sort_unstable();
        let before = next.len();
        next.dedup();
        debug_assert_eq!(before, next.len(), "canonical augmentation produced duplicates");
        level = next;
    }
    let mut out: Vec<EnumeratedClass> = level
        .par_iter()
        .map(|enc| {
            let g = LabelledTrivalentGraph::new(n, edges_of(enc)).expect("enumerated graph is trivalent and connected");
            let c = g.reduce();
            EnumeratedClass {
                key: c.key,
                representative: g,
                status: c.status,
            }
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}
