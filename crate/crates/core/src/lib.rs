//! Clifford circuits to SAT: stabilizer-tableau structural analysis, CNF
//! and SMT-LIB encodings, and miter-based equivalence checking.

pub mod analysis;
pub mod circuit;
pub mod cli;
pub mod encoder;
pub mod equivalence;
pub mod stabilizer;
