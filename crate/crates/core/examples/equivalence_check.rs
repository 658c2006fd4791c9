//! Checks random circuits against themselves and against copies with one
//! gate removed.

use clifford_sat::circuit::{random_clifford_circuit, remove_random_gate, GateSet};
use clifford_sat::equivalence::{check_equivalence, InputKind};

fn main() {
    let (n, g) = (8, 1000);
    for seed in 0..5 {
        let c = random_clifford_circuit(n, g, seed, GateSet::Full).unwrap();
        let same = check_equivalence(&c, &c, 16, InputKind::RandomBasis, seed).unwrap();
        let cut = remove_random_gate(&c, seed).unwrap();
        let diff = check_equivalence(&c, &cut, 16, InputKind::RandomBasis, seed).unwrap();
        println!(
            "seed {seed}: self {} ({} clauses, {:?} conflicts), cut {} in {:.1} ms",
            same.verdict,
            same.stats.num_clauses,
            same.stats.conflicts,
            diff.verdict,
            (diff.stats.t_prep + diff.stats.t_solve).as_secs_f64() * 1e3
        );
    }
}
