//! Helpers shared by the integration tests: random complexes built from
//! elementary pairs under unimodular base changes, and independent oracles.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use trivalent::graph::LabelledTrivalentGraph;
use trivalent::morse::matrix::IntMatrix;
use trivalent::morse::{transport, GradedComplex, HandleSlideEvent, TOP};

fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

/// A random complex over degrees 0..=4 with total rank at most `max_total`.
/// It is a sum of pairs `∂x = a·y` (a ∈ ±{1,2,3}) plus `homology` free
/// cycles, conjugated by random products of handle slides.
pub fn random_complex(seed: u64, max_total: usize, homology: usize) -> GradedComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs = rng.gen_range(0..=(max_total - homology) / 2);
    let mut ranks = [0usize; TOP + 1];
    let mut pair_list = Vec::new();
    for _ in 0..pairs {
        let d = rng.gen_range(1..=TOP);
        let a = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        pair_list.push((d, ranks[d], ranks[d - 1], a));
        ranks[d] += 1;
        ranks[d - 1] += 1;
    }
    for _ in 0..homology {
        ranks[rng.gen_range(0..=TOP)] += 1;
    }
    let mut boundaries: BTreeMap<usize, IntMatrix> = (1..=TOP)
        .map(|d| (d, vec![vec![0i64; ranks[d]]; ranks[d - 1]]))
        .collect();
    for (d, x, y, a) in pair_list {
        boundaries.get_mut(&d).unwrap()[y][x] = a;
    }
    let mut events = Vec::new();
    for (d, &r) in ranks.iter().enumerate() {
        if r < 2 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=r + 2) {
            let p = rng.gen_range(0..r);
            let q = (p + rng.gen_range(1..r)) % r;
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            events.push(HandleSlideEvent { degree: d, p, q, sign });
        }
    }
    let t = transport(&events, &ranks).expect("valid slides");
    for d in 1..=TOP {
        let b = &boundaries[&d];
        let left = int_mul(&t.phi[d - 1], b, ranks[d - 1], ranks[d]);
        let conj = int_mul(&left, &t.inverse[d], ranks[d], ranks[d]);
        boundaries.insert(d, conj);
    }
    GradedComplex::new(&ranks, boundaries).expect("conjugated complex is valid")
}

/// Rank over ℚ read off an integer Smith normal form computation.
pub fn smith_rank(m: &IntMatrix, cols: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let (q, r) = a[i][t].div_mod_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
            }
            clean &= r.is_zero();
        }
        for j in t + 1..cols {
            let (q, r) = a[t][j].div_mod_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().take(rows).skip(t) {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
            }
            clean &= r.is_zero();
        }
        if clean {
            // off-pivot entries in the pivot row and column are now zero;
            // divisibility of the remaining block does not affect the rank
            t += 1;
        }
    }
    t
}

/// Total Betti number over ℚ computed with [`smith_rank`].
pub fn oracle_homology(c: &GradedComplex) -> usize {
    let r = |d: usize| {
        if d == 0 || d > TOP {
            0
        } else {
            smith_rank(c.boundary(d), c.rank(d))
        }
    };
    (0..=TOP).map(|d| c.rank(d) - r(d) - r(d + 1)).sum()
}

fn for_each_perm(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(p, i + 1, f);
            p.swap(i, j);
        }
    }
    rec(&mut p, 0, f);
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// |Aut Γ| by brute force: vertex permutations preserving the edge multiset,
/// times the permutations of parallel edges (and of equal loops).
pub fn brute_force_aut(g: &LabelledTrivalentGraph) -> u64 {
    let norm = |e: &mut Vec<(usize, usize)>| {
        for x in e.iter_mut() {
            *x = (x.0.min(x.1), x.0.max(x.1));
        }
        e.sort_unstable();
    };
    let mut base = g.edges().to_vec();
    norm(&mut base);
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &e in &base {
        *mult.entry(e).or_default() += 1;
    }
    let edge_factor: u64 = mult.values().map(|&m| factorial(m)).product();
    let mut count = 0u64;
    for_each_perm(g.num_vertices(), &mut |p| {
        let mut img: Vec<(usize, usize)> = base.iter().map(|&(u, v)| (p[u], p[v])).collect();
        norm(&mut img);
        if img == base {
            count += 1;
        }
    });
    count * edge_factor
}

/// Number of distinct labelled edge-oriented graphs in the orbit of `g`
/// under vertex relabelling, edge relabelling and edge reversal. A loop's
/// reversal is recorded as a formal bit.
pub fn brute_force_labelled_count(g: &LabelledTrivalentGraph) -> usize {
    let n = g.num_vertices();
    let m = g.edges().len();
    let mut seen: HashSet<Vec<(usize, usize, bool)>> = HashSet::new();
    for_each_perm(n, &mut |vp| {
        for_each_perm(m, &mut |ep| {
            for flips in 0u32..(1 << m) {
                let mut out = vec![(0, 0, false); m];
                for (e, &(u, v)) in g.edges().iter().enumerate() {
                    let f = flips >> e & 1 == 1;
                    let (a, b) = if f { (vp[v], vp[u]) } else { (vp[u], vp[v]) };
                    out[ep[e]] = (a, b, f && u == v);
                }
                seen.insert(out);
            }
        });
    });
    seen.len()
}
