//! Encodes the Bell circuit over all four basis inputs and prints the
//! DIMACS text and the SMT-LIB form.

use clifford_sat::analysis::{all_basis_inputs, structural_analysis, KeyMode};
use clifford_sat::circuit::bell_circuit;
use clifford_sat::encoder::{emit_dimacs, emit_smt2, encode_circuit};

fn main() {
    let inputs = all_basis_inputs(2).unwrap();
    let res = structural_analysis(&bell_circuit(), &inputs, KeyMode::Canonical).unwrap();
    println!("|S| = {}, m = {}", res.num_states(), res.bits_per_signal());
    let enc = encode_circuit(&res);
    println!("{:?}", enc.counts());
    print!("{}", emit_dimacs(&enc));
    println!();
    print!("{}", emit_smt2(&enc));
}
