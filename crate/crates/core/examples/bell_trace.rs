//! Simulates the Bell-state circuit from |00> and prints the generators
//! after each gate.

use clifford_sat::circuit::{bell_circuit, emit_circuit};
use clifford_sat::stabilizer::Tableau;

fn main() {
    let circuit = bell_circuit();
    print!("{}", emit_circuit(&circuit));
    let mut state = Tableau::zero_state(2).expect("two qubits");
    println!(
        "s0: {:?}",
        state
            .labels()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    for (i, gate) in circuit.gates().iter().enumerate() {
        state.apply_gate(gate).expect("valid gate");
        let labels: Vec<String> = state.labels().iter().map(ToString::to_string).collect();
        println!("s{}: {labels:?}", i + 1);
    }
    let dense = state.to_statevector().expect("small state");
    for (k, a) in dense.amplitudes().iter().enumerate() {
        println!("  |{k:02b}>: {:+.4} {:+.4}i", a.re, a.im);
    }
}
