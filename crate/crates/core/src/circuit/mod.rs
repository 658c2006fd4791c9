//! Circuit intermediate representation over the gate alphabet
//! `{H, S, X, Y, Z, CNOT}`.
//!
//! A circuit with `|G|` gates has `|G| + 1` signals: signal `s_i` sits
//! between gates `g_{i-1}` and `g_i`, with `s_0` the input and `s_{|G|}` the
//! output.

mod qasm;
pub(crate) mod random;

use std::fmt;

use thiserror::Error;

pub use qasm::{emit_circuit, parse_circuit, ParseError};
pub use random::{random_clifford_circuit, remove_random_gate, GateSet};

/// Qubit index, 0-based.
pub type Qubit = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    S,
    X,
    Y,
    Z,
    Cnot,
}

impl GateKind {
    pub const ALL: [GateKind; 6] = [
        GateKind::H,
        GateKind::S,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::Cnot,
    ];

    /// Lower-case mnemonic used by the text format.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::Cnot => "cx",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Cnot => "CNOT",
        };
        f.write_str(name)
    }
}

/// A gate instance. `control` is present iff `kind == GateKind::Cnot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    target: Qubit,
    control: Option<Qubit>,
}

impl Gate {
    pub fn h(target: Qubit) -> Self {
        Self::single(GateKind::H, target)
    }

    pub fn s(target: Qubit) -> Self {
        Self::single(GateKind::S, target)
    }

    pub fn x(target: Qubit) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn y(target: Qubit) -> Self {
        Self::single(GateKind::Y, target)
    }

    pub fn z(target: Qubit) -> Self {
        Self::single(GateKind::Z, target)
    }

    /// Panics if `control == target`; use [`Gate::try_cnot`] for untrusted
    /// operands.
    pub fn cnot(control: Qubit, target: Qubit) -> Self {
        Self::try_cnot(control, target).expect("CNOT control and target must differ")
    }

    pub fn try_cnot(control: Qubit, target: Qubit) -> Result<Self, CircuitError> {
        if control == target {
            return Err(CircuitError::ControlEqualsTarget(control));
        }
        Ok(Gate {
            kind: GateKind::Cnot,
            target,
            control: Some(control),
        })
    }

    /// Builds a single-qubit gate. Panics when called with `GateKind::Cnot`.
    pub fn single(kind: GateKind, target: Qubit) -> Self {
        assert!(kind != GateKind::Cnot, "CNOT needs a control operand");
        Gate {
            kind,
            target,
            control: None,
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> Qubit {
        self.target
    }

    pub fn control(&self) -> Option<Qubit> {
        self.control
    }

    /// Largest qubit index the gate touches.
    pub fn max_qubit(&self) -> Qubit {
        self.control.map_or(self.target, |c| c.max(self.target))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.control {
            Some(c) => write!(f, "{}({},{})", self.kind, c, self.target),
            None => write!(f, "{}({})", self.kind, self.target),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("circuit must act on at least one qubit")]
    NoQubits,
    #[error(
        "gate {gate} at position {position} addresses qubit {qubit}, circuit has {num_qubits}"
    )]
    OperandOutOfRange {
        gate: String,
        position: usize,
        qubit: Qubit,
        num_qubits: usize,
    },
    #[error("CNOT control and target are both qubit {0}")]
    ControlEqualsTarget(Qubit),
    #[error("cannot remove a gate from an empty circuit")]
    EmptyCircuit,
}

/// An `n`-qubit circuit: an ordered gate list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self, CircuitError> {
        if num_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut circuit = Circuit::new(num_qubits)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let qubit = gate.max_qubit();
        if qubit >= self.num_qubits {
            return Err(CircuitError::OperandOutOfRange {
                gate: gate.to_string(),
                position: self.gates.len(),
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn num_signals(&self) -> usize {
        self.gates.len() + 1
    }

    /// Copy of the circuit with the gate at `position` deleted.
    pub fn without_gate(&self, position: usize) -> Circuit {
        let mut gates = self.gates.clone();
        gates.remove(position);
        Circuit {
            num_qubits: self.num_qubits,
            gates,
        }
    }

    /// Rewrites every gate over the generator set `{H, S, CNOT}`.
    ///
    /// `Z = SS`, `X = HZH = HSSH`, and `Y = iXZ`, so `Y` becomes "apply `Z`,
    /// then `X`" (global phase dropped).
    pub fn decompose_to_generators(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let q = gate.target;
            match gate.kind {
                GateKind::H | GateKind::S | GateKind::Cnot => gates.push(*gate),
                GateKind::Z => gates.extend([Gate::s(q), Gate::s(q)]),
                GateKind::X => gates.extend([Gate::h(q), Gate::s(q), Gate::s(q), Gate::h(q)]),
                GateKind::Y => gates.extend([
                    Gate::s(q),
                    Gate::s(q),
                    Gate::h(q),
                    Gate::s(q),
                    Gate::s(q),
                    Gate::h(q),
                ]),
            }
        }
        Circuit {
            num_qubits: self.num_qubits,
            gates,
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_circuit(self))
    }
}

/// The two-qubit Bell-state preparation circuit: `H` on qubit 1 followed by
/// `CNOT` with control 1 and target 0. From `|00>` it produces
/// `{ZI, IZ} -> {ZI, IX} -> {ZZ, XX}`.
pub fn bell_circuit() -> Circuit {
    Circuit::from_gates(2, vec![Gate::h(1), Gate::cnot(1, 0)]).expect("static circuit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signals_are_one_more_than_gates() {
        let c = bell_circuit();
        assert_eq!(c.num_signals(), 3);
        assert_eq!(Circuit::new(4).unwrap().num_signals(), 1);
    }

    #[test]
    fn zero_qubits_rejected() {
        assert_eq!(Circuit::new(0), Err(CircuitError::NoQubits));
    }

    #[test]
    fn out_of_range_operand_rejected() {
        let err = Circuit::from_gates(2, vec![Gate::cnot(0, 2)]).unwrap_err();
        assert!(matches!(
            err,
            CircuitError::OperandOutOfRange { qubit: 2, .. }
        ));
    }

    #[test]
    fn cnot_needs_distinct_operands() {
        assert_eq!(
            Gate::try_cnot(1, 1),
            Err(CircuitError::ControlEqualsTarget(1))
        );
    }

    #[test]
    fn decompose_x_and_z() {
        let c = Circuit::from_gates(1, vec![Gate::x(0)]).unwrap();
        assert_eq!(
            c.decompose_to_generators().gates(),
            &[Gate::h(0), Gate::s(0), Gate::s(0), Gate::h(0)]
        );
        let c = Circuit::from_gates(1, vec![Gate::z(0)]).unwrap();
        assert_eq!(
            c.decompose_to_generators().gates(),
            &[Gate::s(0), Gate::s(0)]
        );
    }

    #[test]
    fn decompose_y() {
        let c = Circuit::from_gates(1, vec![Gate::y(0)]).unwrap();
        assert_eq!(
            c.decompose_to_generators().gates(),
            &[
                Gate::s(0),
                Gate::s(0),
                Gate::h(0),
                Gate::s(0),
                Gate::s(0),
                Gate::h(0)
            ]
        );
    }

    #[test]
    fn decomposition_only_uses_generators() {
        let c = random_clifford_circuit(3, 200, 11, GateSet::Full).unwrap();
        let d = c.decompose_to_generators();
        assert!(d
            .gates()
            .iter()
            .all(|g| matches!(g.kind(), GateKind::H | GateKind::S | GateKind::Cnot)));
    }
}
