//! The space of trivalent graphs modulo IHX and label-change relations:
//! class enumeration, relation matrices, dimensions and normal forms.

pub mod cache;
pub mod enumerate;
pub mod relations;

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{ClassStatus, LabelledTrivalentGraph};
use crate::linalg::{random_primes, rational_rank, render_rational, ModpEchelon, Rref, SparseRow};
pub use cache::{Cache, CacheEntry, FORMAT_VERSION};
pub use enumerate::{enumerate_classes, EnumeratedClass};
pub use relations::RelationSet;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("k = {k} exceeds the configured limit {max_k}")]
    ResourceLimit { k: usize, max_k: usize },
    #[error("modular ranks disagree across primes: {0:?}")]
    PrimeDisagreement(Vec<(u64, usize)>),
    #[error("graph has {got} vertices, expected {expected}")]
    WrongK { expected: usize, got: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("cache i/o failure: {0}")]
    Io(String),
    #[error("cache file {0} is malformed")]
    CacheFormat(String),
}

#[derive(Clone, Debug)]
pub struct SpaceConfig {
    /// Largest k accepted by `build`.
    pub max_k: usize,
    /// Number of primes whose ranks must agree (at least 3).
    pub primes: usize,
    /// Seed for drawing primes.
    pub seed: u64,
    /// Cross-check the modular rank by exact elimination up to this k.
    pub exact_max_k: usize,
    /// Rounds of fresh primes tried before giving up on agreement.
    pub retries: usize,
}

impl Default for SpaceConfig {
    fn default() -> Self {
        Self {
            max_k: 7,
            primes: 3,
            seed: 0x5eed_1e55,
            exact_max_k: 4,
            retries: 4,
        }
    }
}

/// Class basis: canonical keys of the non-vanishing classes, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub k: usize,
    keys: Vec<String>,
    index: HashMap<String, usize>,
}

impl Basis {
    pub fn new(k: usize, mut keys: Vec<String>) -> Self {
        keys.sort();
        keys.dedup();
        let index = keys.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { k, keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn position(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub(crate) fn index(&self) -> &HashMap<String, usize> {
        &self.index
    }
}

/// A rational combination of basis classes, with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AVector {
    pub k: usize,
    coeffs: BTreeMap<usize, BigRational>,
}

impl AVector {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(k: usize, position: usize, sign: i64) -> Self {
        let mut v = Self::zero(k);
        v.add_term(position, BigRational::from_integer(BigInt::from(sign)));
        v
    }

    pub fn from_map(k: usize, coeffs: BTreeMap<usize, BigRational>) -> Self {
        Self {
            k,
            coeffs: coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_row(k: usize, row: &SparseRow) -> Self {
        let mut v = Self::zero(k);
        for &(c, x) in row {
            v.add_term(c, BigRational::from_integer(BigInt::from(x)));
        }
        v
    }

    pub fn add_term(&mut self, position: usize, value: BigRational) {
        let e = self.coeffs.entry(position).or_insert_with(BigRational::zero);
        *e += value;
        if e.is_zero() {
            self.coeffs.remove(&position);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigRational> {
        &self.coeffs
    }

    pub fn get(&self, position: usize) -> BigRational {
        self.coeffs.get(&position).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        Self::from_map(self.k, self.coeffs.iter().map(|(&c, v)| (c, v * f)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&c, v) in &other.coeffs {
            out.add_term(c, v.clone());
        }
        out
    }

    /// `{canonical key: "n/d"}`.
    pub fn to_key_map(&self, basis: &Basis) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(&c, v)| (basis.keys()[c].clone(), render_rational(v)))
            .collect()
    }
}

/// Rank over ℚ from ranks modulo several random primes; they must agree.
/// Returns the rank and the rows that were independent modulo the last prime.
pub fn modular_rank(rows: &[SparseRow], cfg: &SpaceConfig) -> Result<(usize, Vec<usize>), SpaceError> {
    use rayon::prelude::*;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut last = Vec::new();
    for _ in 0..cfg.retries.max(1) {
        let primes = random_primes(&mut rng, cfg.primes.max(3));
        let results: Vec<(u64, usize, Vec<usize>)> = primes
            .par_iter()
            .map(|&p| {
                let mut e = ModpEchelon::new(p);
                for r in rows {
                    e.insert(r);
                }
                (p, e.rank(), e.independent)
            })
            .collect();
        if results.iter().all(|r| r.1 == results[0].1) {
            let (_, rank, independent) = results.into_iter().next().unwrap();
            return Ok((rank, independent));
        }
        last = results.iter().map(|r| (r.0, r.1)).collect();
    }
    Err(SpaceError::PrimeDisagreement(last))
}

/// Everything known about the trivalent graph space in one degree k.
#[derive(Debug)]
pub struct GraphSpace {
    pub k: usize,
    pub basis: Basis,
    pub zeros: Vec<String>,
    pub relations: RelationSet,
    rank: usize,
    independent: Vec<usize>,
    rref: OnceLock<Rref>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimensionReport {
    pub k: usize,
    pub dimension: usize,
}

impl GraphSpace {
    pub fn build(k: usize, cfg: &SpaceConfig) -> Result<Self, SpaceError> {
        Self::build_cached(k, cfg, None)
    }

    pub fn build_cached(k: usize, cfg: &SpaceConfig, cache: Option<&Cache>) -> Result<Self, SpaceError> {
        if k == 0 {
            return Err(SpaceError::ZeroK);
        }
        if k > cfg.max_k {
            return Err(SpaceError::ResourceLimit { k, max_k: cfg.max_k });
        }
        let loaded = match cache {
            Some(c) => c.load_space(k)?,
            None => None,
        };
        let (basis, zeros, relations, rref) = match loaded {
            Some(parts) => parts,
            None => {
                let classes = enumerate_classes(k);
                let mut basis_keys = Vec::new();
                let mut zeros = Vec::new();
                for c in &classes {
                    match c.status {
                        ClassStatus::Zero => zeros.push(c.key.clone()),
                        ClassStatus::Signed(_) => basis_keys.push(c.key.clone()),
                    }
                }
                let basis = Basis::new(k, basis_keys);
                let relations = relations::generate(k, &classes, basis.index());
                if let Some(c) = cache {
                    c.store_space(k, &basis, &zeros, &relations)?;
                }
                (basis, zeros, relations, None)
            }
        };
        let (rank, independent) = modular_rank(&relations.rows, cfg)?;
        if k <= cfg.exact_max_k {
            let exact = rational_rank(&relations.rows);
            assert_eq!(exact, rank, "exact and modular ranks differ at k = {k}");
        }
        let space = Self {
            k,
            basis,
            zeros,
            relations,
            rank,
            independent,
            rref: OnceLock::new(),
        };
        if let Some(r) = rref {
            assert_eq!(r.rank(), rank, "cached reduced form has the wrong rank");
            let _ = space.rref.set(r);
        }
        Ok(space)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dimension(&self) -> usize {
        self.basis.len() - self.rank
    }

    pub fn report(&self) -> DimensionReport {
        DimensionReport {
            k: self.k,
            dimension: self.dimension(),
        }
    }

    /// Reduced row echelon form of the relation row space, computed on first use.
    pub fn rref(&self) -> &Rref {
        self.rref.get_or_init(|| {
            let r = Rref::from_int_rows(self.independent.iter().map(|&i| &self.relations.rows[i]));
            assert_eq!(r.rank(), self.rank);
            r
        })
    }

    /// Persists the reduced form next to the other cached parts.
    pub fn store_rref(&self, cache: &Cache) -> Result<(), SpaceError> {
        cache.store_rref(self.k, self.rref())
    }

    /// Basis positions that survive in the quotient (the non-pivot columns).
    pub fn quotient_positions(&self) -> Vec<usize> {
        let pivots: std::collections::HashSet<usize> = self.rref().pivot_columns().collect();
        (0..self.basis.len()).filter(|c| !pivots.contains(c)).collect()
    }

    pub fn class_of(&self, g: &LabelledTrivalentGraph) -> Result<AVector, SpaceError> {
        if g.num_vertices() != 2 * self.k {
            return Err(SpaceError::WrongK {
                expected: 2 * self.k,
                got: g.num_vertices(),
            });
        }
        let class = g.reduce();
        Ok(match class.status {
            ClassStatus::Zero => AVector::zero(self.k),
            ClassStatus::Signed(s) => {
                let pos = self
                    .basis
                    .position(&class.key)
                    .expect("every non-vanishing class is in the basis");
                AVector::unit(self.k, pos, s as i64)
            }
        })
    }

    pub fn normal_form(&self, v: &AVector) -> AVector {
        AVector::from_map(self.k, self.rref().reduce(&v.coeffs))
    }

    pub fn is_zero(&self, v: &AVector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn one(&self) -> BigRational {
        BigRational::one()
    }
}
