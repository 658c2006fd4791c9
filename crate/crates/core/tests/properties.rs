mod common;

use clifford_sat::circuit::{
    emit_circuit, parse_circuit, random_clifford_circuit, Circuit, Gate, GateSet,
};
use clifford_sat::stabilizer::Tableau;
use common::{dense_basis, dense_run, same_ray};
use proptest::prelude::*;

fn circuit_strategy() -> impl Strategy<Value = Circuit> {
    (1usize..=4, 0usize..60, any::<u64>())
        .prop_map(|(n, g, seed)| random_clifford_circuit(n, g, seed, GateSet::Full).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decomposition_preserves_state(c in circuit_strategy()) {
        let n = c.num_qubits();
        let mut direct = Tableau::zero_state(n).unwrap();
        direct.apply_circuit(&c).unwrap();
        let lowered = c.decompose_to_generators();
        prop_assert!(lowered.gates().iter().all(|g| matches!(g.kind(), clifford_sat::circuit::GateKind::H | clifford_sat::circuit::GateKind::S | clifford_sat::circuit::GateKind::Cnot)));
        let mut via = Tableau::zero_state(n).unwrap();
        via.apply_circuit(&lowered).unwrap();
        prop_assert!(direct.same_state(&via).unwrap());
        let mut dense = dense_basis(&vec![false; n]);
        dense_run(&mut dense, &lowered);
        prop_assert!(same_ray(&dense, direct.to_statevector().unwrap().amplitudes()));
    }

    #[test]
    fn qasm_round_trip(c in circuit_strategy()) {
        prop_assert_eq!(parse_circuit(&emit_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn canonical_form_is_idempotent_and_keeps_the_state(c in circuit_strategy()) {
        let mut t = Tableau::zero_state(c.num_qubits()).unwrap();
        t.apply_circuit(&c).unwrap();
        let k = t.canonicalize().unwrap();
        prop_assert_eq!(k.canonicalize().unwrap(), k.clone());
        prop_assert!(t.to_statevector().unwrap().equal_up_to_global_phase(&k.to_statevector().unwrap(), 1e-9));
        k.check_invariants().unwrap();
    }

    #[test]
    fn involutions(c in circuit_strategy(), q in 0usize..4) {
        let n = c.num_qubits();
        let q = q % n;
        let mut t = Tableau::zero_state(n).unwrap();
        t.apply_circuit(&c).unwrap();
        let mut words = vec![vec![Gate::h(q); 2], vec![Gate::x(q); 2], vec![Gate::y(q); 2], vec![Gate::z(q); 2], vec![Gate::s(q); 4]];
        if n > 1 {
            words.push(vec![Gate::cnot(q, (q + 1) % n); 2]);
        }
        for w in words {
            let mut u = t.clone();
            for g in &w {
                u.apply_gate(g).unwrap();
            }
            prop_assert_eq!(&u, &t);
        }
    }
}
