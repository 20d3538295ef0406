//! Sparse exact linear algebra: row echelon forms over prime fields and over ℚ.

pub mod modp;
pub mod primes;
pub mod rational;

pub use modp::{rank_mod_p, ModpEchelon};
pub use primes::{is_prime, random_primes};
pub use rational::{parse_rational, rational_rank, render_rational, Rref};

/// A sparse row: `(column, value)` pairs sorted by column with no zero values.
pub type SparseRow = Vec<(usize, i64)>;
