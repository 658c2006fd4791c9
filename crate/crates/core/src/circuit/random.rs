use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, CircuitError, Gate, GateKind};

/// Gate alphabet for random generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GateSet {
    /// `H, S, X, Y, Z, CNOT`.
    #[default]
    Full,
    /// `H, S, CNOT` only.
    Generators,
}

impl GateSet {
    pub(crate) fn kinds(self, num_qubits: usize) -> Vec<GateKind> {
        let base: &[GateKind] = match self {
            GateSet::Full => &GateKind::ALL,
            GateSet::Generators => &[GateKind::H, GateKind::S, GateKind::Cnot],
        };
        base.iter()
            .copied()
            .filter(|k| num_qubits > 1 || *k != GateKind::Cnot)
            .collect()
    }
}

pub(crate) fn random_gate(rng: &mut impl Rng, num_qubits: usize, kinds: &[GateKind]) -> Gate {
    let kind = kinds[rng.gen_range(0..kinds.len())];
    if kind == GateKind::Cnot {
        let control = rng.gen_range(0..num_qubits);
        let mut target = rng.gen_range(0..num_qubits - 1);
        if target >= control {
            target += 1;
        }
        Gate::cnot(control, target)
    } else {
        Gate::single(kind, rng.gen_range(0..num_qubits))
    }
}

/// Draws `num_gates` gates with uniformly chosen kind and operands. CNOT is
/// left out of the alphabet when `num_qubits == 1`. Identical arguments give
/// identical circuits.
pub fn random_clifford_circuit(
    num_qubits: usize,
    num_gates: usize,
    seed: u64,
    gate_set: GateSet,
) -> Result<Circuit, CircuitError> {
    let mut circuit = Circuit::new(num_qubits)?;
    let kinds = gate_set.kinds(num_qubits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    circuit.gates.reserve(num_gates);
    for _ in 0..num_gates {
        circuit
            .gates
            .push(random_gate(&mut rng, num_qubits, &kinds));
    }
    Ok(circuit)
}

/// Deletes one uniformly chosen gate.
pub fn remove_random_gate(circuit: &Circuit, seed: u64) -> Result<Circuit, CircuitError> {
    if circuit.is_empty() {
        return Err(CircuitError::EmptyCircuit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let position = rng.gen_range(0..circuit.len());
    Ok(circuit.without_gate(position))
}
