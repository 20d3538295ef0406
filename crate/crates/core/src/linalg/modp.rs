//! Incremental sparse row echelon form over 𝔽_p.

use std::collections::BTreeMap;

use super::primes::inv_mod;
use super::SparseRow;

/// Echelon basis built one row at a time. Each stored row has leading
/// coefficient 1 at its pivot column.
pub struct ModpEchelon {
    p: u64,
    pivots: BTreeMap<usize, Vec<(usize, u64)>>,
    /// indices (in insertion order) of rows that increased the rank
    pub independent: Vec<usize>,
    inserted: usize,
}

fn to_modp(row: &SparseRow, p: u64) -> Vec<(usize, u64)> {
    row.iter()
        .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
        .filter(|&(_, v)| v != 0)
        .collect()
}

/// `a - f * b` for sorted sparse rows.
fn axpy(a: &[(usize, u64)], f: u64, b: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let neg = |x: u64| ((p - x % p) % p) as u128;
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = (neg(f) * b[j].1 as u128 % p as u128) as u64;
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = ((a[i].1 as u128 + neg(f) * b[j].1 as u128) % p as u128) as u64;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl ModpEchelon {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            pivots: BTreeMap::new(),
            independent: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current basis and stores the remainder if
    /// nonzero. Returns whether the rank grew.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let mut r = to_modp(row, self.p);
        while let Some(&(c, v)) = r.first() {
            match self.pivots.get(&c) {
                Some(piv) => r = axpy(&r, v, piv, self.p),
                None => {
                    let inv = inv_mod(v, self.p);
                    for e in r.iter_mut() {
                        e.1 = (e.1 as u128 * inv as u128 % self.p as u128) as u64;
                    }
                    self.pivots.insert(c, r);
                    self.independent.push(index);
                    return true;
                }
            }
        }
        false
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut r = to_modp(row, self.p);
        while let Some(&(c, v)) = r.first() {
            match self.pivots.get(&c) {
                Some(piv) => r = axpy(&r, v, piv, self.p),
                None => return false,
            }
        }
        true
    }
}

/// Rank of the given rows modulo `p`, with the indices of a maximal
/// independent subset (first-come order).
pub fn rank_mod_p(rows: &[SparseRow], p: u64) -> (usize, Vec<usize>) {
    let mut e = ModpEchelon::new(p);
    for r in rows {
        e.insert(r);
    }
    (e.rank(), e.independent)
}
