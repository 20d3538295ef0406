//! Index profiles of Y-components whose moduli spaces are zero-dimensional.
//!
//! A Y-component has three half-edges. An input half-edge ends at a critical
//! point of index `a ∈ {1,2,3}` and costs `4 − a` dimensions; an output
//! half-edge starts at index `b ∈ {0,1,2}` and costs `b`. The component
//! survives when the costs add up to 4 at a type I vertex and 5 at a type II
//! vertex.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, serde::Deserialize, Serialize)]
pub enum VertexType {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

impl VertexType {
    pub fn budget(self) -> u32 {
        match self {
            VertexType::I => 4,
            VertexType::II => 5,
        }
    }
}

/// Sorted input indices and sorted output indices, written `(inputs|outputs)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    pub inputs: Vec<u8>,
    pub outputs: Vec<u8>,
}

impl IndexTuple {
    pub fn new(mut inputs: Vec<u8>, mut outputs: Vec<u8>) -> Self {
        inputs.sort_unstable();
        outputs.sort_unstable();
        Self { inputs, outputs }
    }

    pub fn cost(&self) -> u32 {
        self.inputs.iter().map(|&a| 4 - a as u32).sum::<u32>() + self.outputs.iter().map(|&b| b as u32).sum::<u32>()
    }

    /// Parses `(2,3,3|)`, `(1|0,1)` and the like.
    pub fn parse(s: &str) -> Option<Self> {
        let body = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (i, o) = body.split_once('|')?;
        let nums = |t: &str| -> Option<Vec<u8>> {
            t.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse().ok()).collect()
        };
        Some(Self::new(nums(i)?, nums(o)?))
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.inputs), join(&self.outputs))
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const INPUT_INDICES: [u8; 3] = [1, 2, 3];
const OUTPUT_INDICES: [u8; 3] = [0, 1, 2];

/// All surviving index tuples for a vertex type, sorted.
pub fn surviving_indices(t: VertexType) -> Vec<IndexTuple> {
    let mut out = Vec::new();
    for n_in in 0..=3usize {
        let n_out = 3 - n_in;
        for ins in multisets(&INPUT_INDICES, n_in) {
            for outs in multisets(&OUTPUT_INDICES, n_out) {
                let tuple = IndexTuple::new(ins.clone(), outs);
                if tuple.cost() == t.budget() {
                    out.push(tuple);
                }
            }
        }
    }
    out.sort();
    out
}

fn multisets(alphabet: &[u8], size: usize) -> Vec<Vec<u8>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &a) in alphabet.iter().enumerate() {
        for mut rest in multisets(&alphabet[i..], size - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}
