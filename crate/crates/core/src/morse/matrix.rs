//! Small dense integer and rational matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn to_q(m: &IntMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// `a · b` where `a` is `n × m` and `b` is `m × p`; shapes are passed
/// explicitly so that empty matrices keep their column count.
pub fn mul(a: &QMatrix, b: &QMatrix, p: usize) -> QMatrix {
    let mut out = zeros(a.len(), p);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] += x * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn sub(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect())
        .collect()
}

pub fn add(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn neg(m: &QMatrix) -> QMatrix {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns among the first `ncols`.
fn rref(m: &mut QMatrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMatrix, cols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, cols).len()
}

/// A solution `X` of `A X = B` (`A` is `n × m`, `B` is `n × p`) with every
/// free variable set to zero, or `None` if the system is inconsistent.
pub fn solve(a: &QMatrix, m: usize, b: &QMatrix, p: usize) -> Option<QMatrix> {
    let mut aug: QMatrix = a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect();
    let pivots = rref(&mut aug, m);
    for row in aug.iter().skip(pivots.len()) {
        if row[m..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut x = zeros(m, p);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][m..].to_vec();
    }
    Some(x)
}

pub fn is_identity(m: &QMatrix) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn int_determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
