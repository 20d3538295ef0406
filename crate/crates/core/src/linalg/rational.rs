//! Exact sparse elimination over ℚ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SparseRow;

pub type QRow = Vec<(usize, BigRational)>;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `a - f * b` for sorted sparse rational rows.
fn axpy(a: &[(usize, BigRational)], f: &BigRational, b: &[(usize, BigRational)]) -> QRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a row space. Every stored row has a leading 1
/// at its pivot column and zeros at every other pivot column.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Rref {
    pivots: BTreeMap<usize, QRow>,
}

impl Rref {
    pub fn from_int_rows<'a>(rows: impl IntoIterator<Item = &'a SparseRow>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.iter().map(|&(c, v)| (c, q(v))).collect()),
        )
    }

    pub fn from_rows(rows: impl IntoIterator<Item = QRow>) -> Self {
        let mut pivots: BTreeMap<usize, QRow> = BTreeMap::new();
        for row in rows {
            let mut r: QRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            while let Some((c, v)) = r.first().cloned() {
                match pivots.get(&c) {
                    Some(p) => r = axpy(&r, &v, p),
                    None => {
                        let inv = v.recip();
                        for e in r.iter_mut() {
                            e.1 = &e.1 * &inv;
                        }
                        pivots.insert(c, r);
                        break;
                    }
                }
            }
        }
        // back substitution, largest pivot first
        let cols: Vec<usize> = pivots.keys().rev().copied().collect();
        for &c in &cols {
            let pivot_row = pivots[&c].clone();
            for (_, row) in pivots.range_mut(..c) {
                if let Ok(pos) = row.binary_search_by_key(&c, |e| e.0) {
                    let f = row[pos].1.clone();
                    *row = axpy(row, &f, &pivot_row);
                }
            }
        }
        Self { pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &QRow)> {
        self.pivots.iter().map(|(&c, r)| (c, r))
    }

    /// Rebuilds from already reduced rows (e.g. loaded from a cache).
    pub fn from_reduced(rows: Vec<QRow>) -> Self {
        Self {
            pivots: rows.into_iter().filter_map(|r| r.first().map(|e| e.0).map(|c| (c, r))).collect(),
        }
    }

    /// The unique vector in `v + rowspace` that vanishes on every pivot column.
    pub fn reduce(&self, v: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
        let mut out = v.clone();
        for (&c, row) in &self.pivots {
            let Some(f) = out.get(&c).cloned() else { continue };
            for (col, x) in row {
                let entry = out.entry(*col).or_insert_with(BigRational::zero);
                *entry -= &f * x;
                if entry.is_zero() {
                    out.remove(col);
                }
            }
        }
        out
    }

    /// Whether the stored form is fully reduced with unit pivots.
    pub fn is_reduced(&self) -> bool {
        self.pivots.iter().all(|(&c, r)| {
            r.first().map(|e| (e.0, e.1.is_one())) == Some((c, true))
                && r.iter().skip(1).all(|(col, _)| !self.pivots.contains_key(col))
        })
    }
}

/// Rank over ℚ by exact elimination.
pub fn rational_rank(rows: &[SparseRow]) -> usize {
    Rref::from_int_rows(rows).rank()
}

/// `n/d` with `d > 0`; integers are rendered as `n/1`.
pub fn render_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    let r = BigRational::new(n, d);
    debug_assert!(!r.denom().is_negative());
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_reduced_and_reduces_rows_to_zero() {
        let rows: Vec<SparseRow> = vec![
            vec![(0, 2), (1, 4), (3, 1)],
            vec![(1, 3), (2, 1)],
            vec![(0, 2), (1, 7), (2, 1), (3, 1)],
        ];
        let r = Rref::from_int_rows(&rows);
        assert_eq!(r.rank(), 2);
        assert!(r.is_reduced());
        for row in &rows {
            let v = row.iter().map(|&(c, x)| (c, q(x))).collect();
            assert!(r.reduce(&v).is_empty());
        }
    }

    #[test]
    fn rational_strings() {
        let x = BigRational::new(BigInt::from(-6), BigInt::from(4));
        assert_eq!(render_rational(&x), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(x));
        assert_eq!(parse_rational("5"), Some(q(5)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
