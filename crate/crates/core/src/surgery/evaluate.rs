//! Orbit and brute-force evaluation of the surgery invariant.
//!
//! A term is indexed by a labelled edge-oriented graph H isomorphic to Γ, a
//! bijection σ from the Y-components of H to the vertices of Γ, and a binding
//! φ of the half-edges of H to handle slots such that every edge of H lands
//! on a Hopf pair. Its sign is the Koszul sign of φ with slot degrees, and its
//! value is (−1)^{3k}·sign·[H]. The total is normalised by 2^{3k}(2k)!(3k)!
//! and by the (−1)^{3k} prefactor of the ε-average, whose 2^{3k} summands are
//! all equal.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{ylink, LinkingMatrix, SurgeryError, TypeConvention, YLinkData};
use crate::graph::perm::{for_each_permutation, koszul_sign};
use crate::graph::{ArrowGraph, ClassStatus, LabelledTrivalentGraph};
use crate::space::{AVector, GraphSpace};

/// Largest k accepted by [`evaluate_full`].
pub const FULL_MAX_K: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Orbit,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub aut: u64,
    pub aut_e: u64,
    pub aut_v: u64,
    /// L(Γ): labelled edge-oriented representatives.
    pub representatives: BigInt,
    /// 2^{3k}(2k)!(3k)!.
    pub normalization: BigInt,
    /// Number of (H, σ, φ) terms summed.
    pub terms: BigInt,
}

#[derive(Clone, Debug)]
pub struct EvaluationReport {
    pub input: ArrowGraph,
    pub mode: Mode,
    pub convention: TypeConvention,
    pub diagnostics: Diagnostics,
    pub result: AVector,
    pub result_keys: BTreeMap<String, String>,
}

impl EvaluationReport {
    pub fn to_json(&self) -> Value {
        let d = &self.diagnostics;
        json!({
            "input": self.input.to_json(),
            "mode": self.mode,
            "type_convention": self.convention,
            "diagnostics": {
                "aut": d.aut.to_string(),
                "aut_e": d.aut_e.to_string(),
                "aut_v": d.aut_v.to_string(),
                "representatives": d.representatives.to_string(),
                "normalization": d.normalization.to_string(),
                "terms": d.terms.to_string(),
            },
            "applied_identities": ["epsilon average folded into the factor (-1)^{3k}"],
            "result": self.result_keys,
        })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// 2^{3k}(2k)!(3k)!.
pub fn normalization(k: usize) -> BigInt {
    (BigInt::one() << (3 * k)) * factorial(2 * k) * factorial(3 * k)
}

/// L(Γ) = 2^{3k}(2k)!(3k)!/|Aut Γ|, which must be an integer.
pub fn representative_count(g: &LabelledTrivalentGraph) -> Result<BigInt, SurgeryError> {
    let aut = g.automorphism_counts().aut;
    let n = normalization(g.k());
    let (l, r) = n.div_rem(&BigInt::from(aut));
    if !r.is_zero() {
        return Err(SurgeryError::NonIntegerOrbit {
            numerator: n.to_string(),
            aut,
        });
    }
    Ok(l)
}

/// A labelled edge-oriented graph: per edge label `(tail, head)`, plus the
/// formal orientation bit of each loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedLabelled {
    pub edges: Vec<(usize, usize)>,
    pub loop_bits: Vec<bool>,
}

/// Every distinct labelled edge-oriented graph obtained from `g` by relabelling
/// vertices and edges and reversing edges. Distinct relabellings are collected
/// first; each then yields 2^{3k} distinct orientations, since reversing a
/// non-loop edge swaps its endpoints and reversing a loop flips its bit.
pub fn labelled_oriented_representatives(g: &LabelledTrivalentGraph) -> Vec<OrientedLabelled> {
    let m = g.edges().len();
    let mut out = Vec::new();
    for edges in labelled_relabellings(g) {
        for flips in 0u32..(1 << m) {
            let mut oriented = edges.clone();
            let mut loop_bits = vec![false; m];
            for (e, (t, h)) in oriented.iter_mut().enumerate() {
                if flips >> e & 1 == 1 {
                    std::mem::swap(t, h);
                    loop_bits[e] = t == h;
                }
            }
            out.push(OrientedLabelled { edges: oriented, loop_bits });
        }
    }
    out.sort();
    out
}

/// Distinct labelled graphs `g.relabel(πv, πe)`, each edge written low end first.
fn labelled_relabellings(g: &LabelledTrivalentGraph) -> Vec<Vec<(usize, usize)>> {
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    for_each_permutation(g.num_vertices(), |pv| {
        for_each_permutation(g.edges().len(), |pe| {
            seen.insert(undirected(g.relabel(pv, pe).edges()));
        });
    });
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn undirected(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

/// Position of a slot in the edge-ordered sequence of Γ's half-edges.
fn edge_order_position(y: &YLinkData, s: usize) -> usize {
    let slot = &y.slots[s];
    2 * slot.edge + usize::from(!slot.outgoing)
}

/// Reusable buffers for the binding search.
struct Scratch {
    used: Vec<bool>,
    binding: Vec<usize>,
    outgoing: Vec<usize>,
    degrees: Vec<u32>,
    target: Vec<usize>,
}

impl Scratch {
    fn new(y: &YLinkData, edges: usize) -> Self {
        Self {
            used: vec![false; y.slots.len()],
            binding: vec![0; 2 * edges],
            outgoing: vec![0; y.slots.len() / 3],
            degrees: vec![0; 2 * edges],
            target: vec![0; 2 * edges],
        }
    }
}

/// Calls `visit` with the signed value of every binding φ of H's half-edges
/// to slots compatible with σ (0 when the type gate rejects it).
/// `binding[2e]`, `binding[2e + 1]` are the slots of the tail and head half of
/// H's edge e.
fn bindings(
    y: &YLinkData,
    l: &LinkingMatrix,
    h: &[(usize, usize)],
    sigma: &[usize],
    scratch: &mut Scratch,
    visit: &mut impl FnMut(i8),
) {
    fn rec(
        e: usize,
        y: &YLinkData,
        l: &LinkingMatrix,
        h: &[(usize, usize)],
        sigma: &[usize],
        scratch: &mut Scratch,
        visit: &mut impl FnMut(i8),
    ) {
        if e == h.len() {
            visit(term_sign(y, h, sigma, scratch));
            return;
        }
        let (a, b) = h[e];
        for s in y.slots_at(sigma[a]) {
            if scratch.used[s] || (a == b && !y.slots[s].outgoing) {
                continue;
            }
            scratch.used[s] = true;
            for t in y.slots_at(sigma[b]) {
                if scratch.used[t] || l.get(s, t) == 0 {
                    continue;
                }
                scratch.used[t] = true;
                scratch.binding[2 * e] = s;
                scratch.binding[2 * e + 1] = t;
                rec(e + 1, y, l, h, sigma, scratch, visit);
                scratch.used[t] = false;
            }
            scratch.used[s] = false;
        }
    }
    rec(0, y, l, h, sigma, scratch, visit);
}

/// Type gate and Koszul sign of one complete binding.
fn term_sign(y: &YLinkData, h: &[(usize, usize)], sigma: &[usize], scratch: &mut Scratch) -> i8 {
    scratch.outgoing.iter_mut().for_each(|x| *x = 0);
    for (i, &s) in scratch.binding.iter().enumerate() {
        let j = if i % 2 == 0 { h[i / 2].0 } else { h[i / 2].1 };
        scratch.outgoing[j] += usize::from(y.slots[s].outgoing);
        scratch.degrees[i] = y.slots[s].degree();
        scratch.target[i] = edge_order_position(y, s);
    }
    for (j, &target) in sigma.iter().enumerate() {
        if y.convention.type_of(scratch.outgoing[j]) != y.vertex_types[target] {
            return 0;
        }
    }
    koszul_sign(&scratch.degrees, &scratch.target)
}

/// Σ over σ and φ of the signed term count for one representative H:
/// `(terms, signed sum, σ admitting a binding, bindings per admitted σ)`.
fn representative_sum(y: &YLinkData, l: &LinkingMatrix, h: &[(usize, usize)]) -> (u64, i64, u64, Vec<u64>) {
    let mut terms = 0;
    let mut signed = 0i64;
    let mut admitted = 0;
    let mut per_sigma = Vec::new();
    let mut scratch = Scratch::new(y, h.len());
    for_each_permutation(y.slots.len() / 3, |sigma| {
        let mut live = 0u64;
        bindings(y, l, h, sigma, &mut scratch, &mut |s| {
            if s != 0 {
                live += 1;
                signed += s as i64;
            }
        });
        if live > 0 {
            admitted += 1;
            per_sigma.push(live);
        }
        terms += live;
    });
    (terms, signed, admitted, per_sigma)
}

fn class_vector(space: &GraphSpace, g: &LabelledTrivalentGraph) -> Result<AVector, SurgeryError> {
    Ok(space.class_of(g)?)
}

/// `total / N` times the folded ε-average factor `(−1)^{3k}`.
fn normalise(space: &GraphSpace, total: &AVector, k: usize) -> AVector {
    let sign = if (3 * k) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let factor = BigRational::new(sign, normalization(k));
    space.normal_form(&total.scale(&factor))
}

fn report(
    a: &ArrowGraph,
    mode: Mode,
    convention: TypeConvention,
    space: &GraphSpace,
    diagnostics: Diagnostics,
    result: AVector,
) -> EvaluationReport {
    EvaluationReport {
        input: a.clone(),
        mode,
        convention,
        result_keys: result.to_key_map(&space.basis),
        result,
        diagnostics,
    }
}

pub fn evaluate_orbit(
    a: &ArrowGraph,
    space: &GraphSpace,
    convention: TypeConvention,
) -> Result<EvaluationReport, SurgeryError> {
    let g = a.graph();
    let k = g.k();
    let counts = g.automorphism_counts();
    if counts.aut != counts.aut_e * counts.aut_v {
        return Err(SurgeryError::OrbitMismatch("|Aut| ≠ |Aut_e|·|Aut_v|".into()));
    }
    let l = representative_count(g)?;
    let (y, lm) = ylink(a, convention);
    let (_, _, admitted, per_sigma) = representative_sum(&y, &lm, a.directions());
    if admitted != counts.aut_v || per_sigma.iter().any(|&c| c != counts.aut_e) {
        return Err(SurgeryError::OrbitMismatch(format!(
            "{admitted} admissible vertex bijections with {per_sigma:?} bindings, expected {} with {} each",
            counts.aut_v, counts.aut_e
        )));
    }
    let class = class_vector(space, g)?;
    let sign = if (3 * k) % 2 == 0 { 1 } else { -1 };
    let weight = &l * BigInt::from(counts.aut_v) * BigInt::from(counts.aut_e) * sign;
    let total = class.scale(&BigRational::from_integer(weight));
    let result = normalise(space, &total, k);
    let diagnostics = Diagnostics {
        aut: counts.aut,
        aut_e: counts.aut_e,
        aut_v: counts.aut_v,
        representatives: l.clone(),
        normalization: normalization(k),
        terms: l * BigInt::from(counts.aut),
    };
    Ok(report(a, Mode::Orbit, convention, space, diagnostics, result))
}

pub fn evaluate_full(
    a: &ArrowGraph,
    space: &GraphSpace,
    convention: TypeConvention,
) -> Result<EvaluationReport, SurgeryError> {
    let g = a.graph();
    let k = g.k();
    if k > FULL_MAX_K {
        return Err(SurgeryError::ResourceLimit { k, max_k: FULL_MAX_K });
    }
    let counts = g.automorphism_counts();
    let reps = labelled_oriented_representatives(g);
    let (y, lm) = ylink(a, convention);
    let sign = if (3 * k) % 2 == 0 { 1 } else { -1 };
    // [H] does not see edge directions, so classes are computed once per labelling
    let classes: HashMap<Vec<(usize, usize)>, crate::graph::GraphClass> = labelled_relabellings(g)
        .into_par_iter()
        .map(|edges| {
            let class = LabelledTrivalentGraph::new(g.num_vertices(), edges.clone())
                .expect("relabelling keeps validity")
                .reduce();
            (undirected(&edges), class)
        })
        .collect();
    // per representative: (terms, Σ sign·[H] as key → integer)
    let partial: Vec<(u64, Option<(String, i64)>)> = reps
        .par_iter()
        .map(|h| {
            let (terms, signed, _, _) = representative_sum(&y, &lm, &h.edges);
            let class = classes[&undirected(&h.edges)].clone();
            let contribution = match class.status {
                ClassStatus::Zero => None,
                ClassStatus::Signed(s) => Some((class.key, sign * signed * s as i64)),
            };
            (terms, contribution)
        })
        .collect();
    let mut sums: BTreeMap<String, BigInt> = BTreeMap::new();
    let mut terms = BigInt::zero();
    for (t, c) in partial {
        terms += t;
        if let Some((key, v)) = c {
            *sums.entry(key).or_insert_with(BigInt::zero) += v;
        }
    }
    let mut total = AVector::zero(k);
    for (key, v) in sums {
        let pos = space
            .basis
            .position(&key)
            .expect("non-vanishing classes are in the basis");
        total.add_term(pos, BigRational::from_integer(v));
    }
    let result = normalise(space, &total, k);
    let diagnostics = Diagnostics {
        aut: counts.aut,
        aut_e: counts.aut_e,
        aut_v: counts.aut_v,
        representatives: BigInt::from(reps.len()),
        normalization: normalization(k),
        terms,
    };
    Ok(report(a, Mode::Full, convention, space, diagnostics, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_arrow_orientations, find_arrow_orientation};
    use crate::space::SpaceConfig;

    fn space(k: usize) -> GraphSpace {
        GraphSpace::build(k, &SpaceConfig::default()).unwrap()
    }

    #[test]
    fn brute_force_representative_counts() {
        for (g, l) in [
            (LabelledTrivalentGraph::theta(), 8u64),
            (LabelledTrivalentGraph::dumbbell(), 48),
        ] {
            assert_eq!(labelled_oriented_representatives(&g).len() as u64, l);
            assert_eq!(representative_count(&g).unwrap(), BigInt::from(l));
        }
        assert_eq!(representative_count(&LabelledTrivalentGraph::k4()).unwrap(), BigInt::from(46080));
    }

    #[test]
    fn k4_orbit_is_its_class() {
        let s = space(2);
        let k4 = LabelledTrivalentGraph::k4();
        let r = evaluate_orbit(&find_arrow_orientation(&k4), &s, TypeConvention::Default).unwrap();
        assert!(!r.result.is_zero());
        assert_eq!(r.result, s.normal_form(&s.class_of(&k4).unwrap()));
        assert_eq!(r.diagnostics.aut, 24);
    }

    #[test]
    fn theta_and_dumbbell_vanish() {
        let s = space(1);
        for g in [LabelledTrivalentGraph::theta(), LabelledTrivalentGraph::dumbbell()] {
            let a = find_arrow_orientation(&g);
            assert!(evaluate_orbit(&a, &s, TypeConvention::Default).unwrap().result.is_zero());
            let full = evaluate_full(&a, &s, TypeConvention::Default).unwrap();
            assert!(full.result.is_zero());
            assert_eq!(full.diagnostics.terms, normalization(1));
        }
    }

    #[test]
    fn orbit_is_arrow_and_convention_invariant() {
        let s = space(2);
        let k4 = LabelledTrivalentGraph::k4();
        let expected = s.normal_form(&s.class_of(&k4).unwrap());
        for a in all_arrow_orientations(&k4) {
            for c in [TypeConvention::Default, TypeConvention::Flipped] {
                assert_eq!(evaluate_orbit(&a, &s, c).unwrap().result, expected);
            }
        }
    }

    #[test]
    fn full_is_gated() {
        let s = space(3);
        let g = crate::space::enumerate_classes(3)[0].representative.clone();
        let a = find_arrow_orientation(&g);
        assert!(matches!(
            evaluate_full(&a, &s, TypeConvention::Default),
            Err(SurgeryError::ResourceLimit { .. })
        ));
    }
}
