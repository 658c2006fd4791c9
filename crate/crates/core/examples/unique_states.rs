//! Unique-state counts of growing random circuits, raw and canonical keys.

use clifford_sat::analysis::{unique_state_count, KeyMode};
use clifford_sat::circuit::{random_clifford_circuit, GateSet};
use clifford_sat::stabilizer::Tableau;

fn main() {
    for n in [1, 2] {
        let zero = [Tableau::zero_state(n).unwrap()];
        println!("n = {n}");
        for g in [10, 100, 1000, 5000] {
            let mut raw = Vec::new();
            let mut canonical = Vec::new();
            for seed in 0..10 {
                let c = random_clifford_circuit(n, g, seed, GateSet::Full).unwrap();
                raw.push(unique_state_count(&c, &zero, KeyMode::Raw).unwrap());
                canonical.push(unique_state_count(&c, &zero, KeyMode::Canonical).unwrap());
            }
            println!(
                "  |G| = {g:5}: raw max {:3} min {:3}, canonical max {:2} min {:2}",
                raw.iter().max().unwrap(),
                raw.iter().min().unwrap(),
                canonical.iter().max().unwrap(),
                canonical.iter().min().unwrap()
            );
        }
    }
}
