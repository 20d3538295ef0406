//! IHX relation rows over the class basis.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::enumerate::EnumeratedClass;
use crate::graph::{contract_edge, ihx_expansions, ClassStatus, FourValentGraph, LabelledTrivalentGraph};
use crate::linalg::SparseRow;

/// One relation row per isomorphism class of contracted (4-valent) graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub k: usize,
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
}

/// `Σ coefficient · reduce(expansion)` expressed over the basis.
pub fn relation_row(c: &FourValentGraph, new_edge_label: usize, index: &HashMap<String, usize>) -> SparseRow {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (coef, g) in ihx_expansions(c, new_edge_label) {
        let class = g.reduce();
        if let ClassStatus::Signed(s) = class.status {
            let col = *index
                .get(&class.key)
                .unwrap_or_else(|| panic!("expansion class {} missing from basis", class.key));
            *acc.entry(col).or_default() += coef * s as i64;
        }
    }
    acc.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// Relation rows obtained by contracting every non-loop edge of `g`.
pub fn rows_from_graph(g: &LabelledTrivalentGraph, index: &HashMap<String, usize>) -> Vec<(String, SparseRow)> {
    (0..g.edges().len())
        .filter(|&e| g.edges()[e].0 != g.edges()[e].1)
        .map(|e| {
            let c = contract_edge(g, e).expect("non-loop edge");
            (c.key(), relation_row(&c, e, index))
        })
        .collect()
}

/// Contracts every non-loop edge of every class representative, keeps the
/// first row seen for each contracted class and drops rows that vanish.
pub fn generate(k: usize, classes: &[EnumeratedClass], index: &HashMap<String, usize>) -> RelationSet {
    let per_class: Vec<Vec<(String, SparseRow)>> = classes
        .par_iter()
        .map(|c| rows_from_graph(&c.representative, index))
        .collect();
    let mut seen: BTreeMap<String, SparseRow> = BTreeMap::new();
    for rows in per_class {
        for (key, row) in rows {
            seen.entry(key).or_insert(row);
        }
    }
    RelationSet {
        k,
        ncols: index.len(),
        rows: seen.into_values().filter(|r| !r.is_empty()).collect(),
    }
}
