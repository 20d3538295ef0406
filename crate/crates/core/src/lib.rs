//! Exact computations with spaces of trivalent graphs modulo IHX, Morse
//! complexes with combinatorial propagators, and the homological counting
//! behind Y-link surgery.

pub mod graph;
pub mod linalg;
pub mod space;
pub mod morse;
pub mod surgery;
pub mod cli;
