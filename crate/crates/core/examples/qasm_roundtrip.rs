//! Parses OpenQASM, prints the circuit back, and lowers Pauli gates to
//! H and S.

use clifford_sat::circuit::{emit_circuit, parse_circuit};

const SOURCE: &str = "OPENQASM 2.0;
include \"qelib1.inc\";
qreg q[3];
h q[0];
cx q[0],q[2];  // entangle
y q[1];
s q[2];
";

fn main() {
    let circuit = parse_circuit(SOURCE).unwrap();
    print!("{}", emit_circuit(&circuit));
    println!("--");
    print!("{}", emit_circuit(&circuit.decompose_to_generators()));
    match parse_circuit("qreg q[2];\nccx q[0],q[1];\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("-- rejected: {e}"),
    }
}
