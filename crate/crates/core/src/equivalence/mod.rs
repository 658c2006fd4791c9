//! Miter-based equivalence checking relative to a finite input set.

mod miter;
mod solver;

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{AnalysisError, KeyMode, StateId, StateRegistry};
use crate::circuit::{random::random_gate, Circuit, GateSet};
use crate::stabilizer::{Tableau, TableauError};

pub use miter::{build_miter, build_miter_with_mode, MiterEncoding};
pub use solver::{
    parse_solver_output, solve_dimacs, BatsatSolver, ExternalSolver, SatResult, SolverError,
    SolverInterface,
};

#[derive(Debug, Error)]
pub enum EquivalenceError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("raw keys are unsound for miters; use canonical mode")]
    RawMode,
    #[error("at least one input is required")]
    NoInputs,
    #[error("could only draw {found} distinct inputs of {requested}")]
    InputsExhausted { requested: usize, found: usize },
    #[error("integration error: {0}")]
    Integration(String),
}

/// How input states are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    /// `|0...0>` only; the requested count is ignored.
    AllZero,
    /// Distinct computational basis states.
    #[default]
    RandomBasis,
    /// Distinct states reached by a random Clifford prefix from `|0...0>`.
    RandomStabilizer,
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputKind::AllZero => "all_zero",
            InputKind::RandomBasis => "random_basis",
            InputKind::RandomStabilizer => "random_stabilizer",
        })
    }
}

impl std::str::FromStr for InputKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "all_zero" => Ok(InputKind::AllZero),
            "random_basis" => Ok(InputKind::RandomBasis),
            "random_stabilizer" => Ok(InputKind::RandomStabilizer),
            _ => Err(format!("unknown input kind `{s}`")),
        }
    }
}

/// Draws inputs, rejecting states already drawn (under canonical keys).
/// Gives up after `64 * count` draws.
pub fn generate_inputs(
    num_qubits: usize,
    count: usize,
    kind: InputKind,
    seed: u64,
) -> Result<Vec<Tableau>, EquivalenceError> {
    if count == 0 {
        return Err(EquivalenceError::NoInputs);
    }
    if kind == InputKind::AllZero {
        return Ok(vec![Tableau::zero_state(num_qubits)?]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = StateRegistry::new(num_qubits, KeyMode::Canonical);
    let mut inputs = Vec::with_capacity(count);
    let kinds = GateSet::Full.kinds(num_qubits);
    for _ in 0..64 * count {
        if inputs.len() == count {
            break;
        }
        let state = match kind {
            InputKind::RandomBasis => {
                let bits: Vec<bool> = (0..num_qubits).map(|_| rng.gen()).collect();
                Tableau::basis_state(&bits)?
            }
            _ => {
                let mut t = Tableau::zero_state(num_qubits)?;
                for _ in 0..8 * num_qubits + 8 {
                    t.apply_gate(&random_gate(&mut rng, num_qubits, &kinds))?;
                }
                t
            }
        };
        if seen.lookup(&state)?.is_none() {
            seen.insert(&state)?;
            inputs.push(state);
        }
    }
    if inputs.len() < count {
        return Err(EquivalenceError::InputsExhausted {
            requested: count,
            found: inputs.len(),
        });
    }
    Ok(inputs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not_equivalent",
        })
    }
}

/// An input on which the two circuits reach different states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input_id: StateId,
    pub input_tableau: Tableau,
    pub output_id_a: StateId,
    pub output_id_b: StateId,
    pub output_a: Tableau,
    pub output_b: Tableau,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckStats {
    /// Analysis and encoding.
    pub t_prep: Duration,
    /// Loading the formula into the solver and solving.
    pub t_solve: Duration,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub num_states: usize,
    pub num_inputs: usize,
    pub conflicts: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct EquivalenceResult {
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub stats: CheckStats,
}

/// Reads the input and output ids from a model of the miter and replays the
/// input through both circuits. Any disagreement is an integration error.
pub fn decode_counterexample(
    model: &[bool],
    miter: &MiterEncoding,
) -> Result<Counterexample, EquivalenceError> {
    let enc = miter.encoding();
    let symbols = enc.symbols();
    let (ra, rb) = (miter.analysis_a(), miter.analysis_b());
    let input_id = symbols.decode(model, 0, 0);
    let input_b = symbols.decode(model, 1, 0);
    let output_id_a = symbols.decode(model, 0, ra.num_signals() - 1);
    let output_id_b = symbols.decode(model, 1, rb.num_signals() - 1);
    let err = |msg: String| Err(EquivalenceError::Integration(msg));
    if input_b != input_id {
        return err(format!("input ids differ: {input_id} vs {input_b}"));
    }
    if input_id.0 >= ra.num_inputs() {
        return err(format!("model selects non-input id {input_id}"));
    }
    if output_id_a == output_id_b {
        return err(format!("model has equal output ids {output_id_a}"));
    }
    let registry = ra.registry();
    let input_tableau = registry
        .state(input_id)
        .cloned()
        .expect("input ids are registered");
    let mut output_a = input_tableau.clone();
    output_a.apply_circuit(miter.circuit_a())?;
    let mut output_b = input_tableau.clone();
    output_b.apply_circuit(miter.circuit_b())?;
    let replay_a = registry.lookup(&output_a)?;
    let replay_b = registry.lookup(&output_b)?;
    if replay_a != Some(output_id_a) || replay_b != Some(output_id_b) {
        return err(format!(
            "replay of input {input_id} gives {replay_a:?}/{replay_b:?}, model says {output_id_a}/{output_id_b}"
        ));
    }
    if output_a.same_state(&output_b)? {
        return err("replayed outputs are the same state".into());
    }
    Ok(Counterexample {
        input_id,
        input_tableau,
        output_id_a,
        output_id_b,
        output_a,
        output_b,
    })
}

/// Checks `a` against `b` on the given inputs with the given solver.
pub fn check_equivalence_with(
    a: &Circuit,
    b: &Circuit,
    inputs: &[Tableau],
    solver: &mut dyn SolverInterface,
) -> Result<EquivalenceResult, EquivalenceError> {
    let start = Instant::now();
    let miter = build_miter(a, b, inputs)?;
    let t_prep = start.elapsed();

    let enc = miter.encoding();
    let start = Instant::now();
    solver.add_formula(enc.formula());
    let answer = solver.solve()?;
    let t_solve = start.elapsed();

    let stats = CheckStats {
        t_prep,
        t_solve,
        num_vars: enc.num_vars(),
        num_clauses: enc.num_clauses(),
        num_states: miter.analysis_a().num_states(),
        num_inputs: inputs.len(),
        conflicts: solver.conflicts(),
    };
    match answer {
        SatResult::Sat => {
            let model = solver
                .model_vector(enc.num_vars())
                .ok_or_else(|| EquivalenceError::Integration("solver returned no model".into()))?;
            if !enc.formula().is_satisfied_by(&model) {
                return Err(EquivalenceError::Integration(
                    "model violates the formula".into(),
                ));
            }
            let cex = decode_counterexample(&model, &miter)?;
            Ok(EquivalenceResult {
                verdict: Verdict::NotEquivalent,
                counterexample: Some(cex),
                stats,
            })
        }
        SatResult::Unsat => {
            let witnesses = miter.distinguishing_inputs();
            if let Some(i) = witnesses.first() {
                return Err(EquivalenceError::Integration(format!(
                    "solver says unsat but input {i} distinguishes the circuits"
                )));
            }
            Ok(EquivalenceResult {
                verdict: Verdict::Equivalent,
                counterexample: None,
                stats,
            })
        }
    }
}

/// Draws `num_inputs` inputs of the given kind and checks with the
/// in-process solver. `Equivalent` means no tested input tells the circuits
/// apart.
pub fn check_equivalence(
    a: &Circuit,
    b: &Circuit,
    num_inputs: usize,
    input_kind: InputKind,
    seed: u64,
) -> Result<EquivalenceResult, EquivalenceError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(AnalysisError::QubitMismatch {
            expected: a.num_qubits(),
            got: b.num_qubits(),
        }
        .into());
    }
    let inputs = generate_inputs(a.num_qubits(), num_inputs, input_kind, seed)?;
    check_equivalence_with(a, b, &inputs, &mut BatsatSolver::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::all_basis_inputs;
    use crate::circuit::{bell_circuit, random_clifford_circuit, Gate};

    #[test]
    fn hh_equals_empty() {
        let hh = Circuit::from_gates(1, vec![Gate::h(0), Gate::h(0)]).unwrap();
        let empty = Circuit::new(1).unwrap();
        let r = check_equivalence(&hh, &empty, 1, InputKind::AllZero, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Equivalent);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn bell_vs_truncated() {
        let bell = bell_circuit();
        let trunc = bell.without_gate(1);
        let inputs = all_basis_inputs(2).unwrap();
        let r = check_equivalence_with(&bell, &trunc, &inputs, &mut BatsatSolver::new()).unwrap();
        assert_eq!(r.verdict, Verdict::NotEquivalent);
        let cex = r.counterexample.unwrap();
        assert!(cex.input_id.0 < 4);
        assert_ne!(cex.output_id_a, cex.output_id_b);
    }

    #[test]
    fn bell_plus_s_differs_on_zero() {
        let bell = bell_circuit();
        let mut bs = bell.clone();
        bs.push(Gate::s(0)).unwrap();
        let r = check_equivalence(&bell, &bs, 1, InputKind::AllZero, 0).unwrap();
        assert_eq!(r.verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn raw_mode_rejected() {
        let c = bell_circuit();
        let inputs = all_basis_inputs(2).unwrap();
        assert!(matches!(
            build_miter_with_mode(&c, &c, &inputs, KeyMode::Raw),
            Err(EquivalenceError::RawMode)
        ));
    }

    #[test]
    fn qubit_mismatch() {
        let a = Circuit::new(1).unwrap();
        let b = Circuit::new(2).unwrap();
        assert!(check_equivalence(&a, &b, 1, InputKind::AllZero, 0).is_err());
    }

    #[test]
    fn input_generation() {
        let inputs = generate_inputs(8, 16, InputKind::RandomBasis, 3).unwrap();
        assert_eq!(inputs.len(), 16);
        assert_eq!(
            inputs,
            generate_inputs(8, 16, InputKind::RandomBasis, 3).unwrap()
        );
        let st = generate_inputs(3, 10, InputKind::RandomStabilizer, 1).unwrap();
        for (i, x) in st.iter().enumerate() {
            for y in &st[..i] {
                assert!(!x.same_state(y).unwrap());
            }
        }
        assert!(matches!(
            generate_inputs(2, 5, InputKind::RandomBasis, 0),
            Err(EquivalenceError::InputsExhausted {
                requested: 5,
                found: 4
            })
        ));
        assert_eq!(
            generate_inputs(2, 7, InputKind::AllZero, 0).unwrap().len(),
            1
        );
    }

    #[test]
    fn symmetric_verdicts() {
        for seed in 0..20 {
            let a = random_clifford_circuit(3, 30, seed, GateSet::Full).unwrap();
            let b = random_clifford_circuit(3, 30, seed + 100, GateSet::Full).unwrap();
            let inputs = generate_inputs(3, 4, InputKind::RandomStabilizer, seed).unwrap();
            let ab = check_equivalence_with(&a, &b, &inputs, &mut BatsatSolver::new()).unwrap();
            let ba = check_equivalence_with(&b, &a, &inputs, &mut BatsatSolver::new()).unwrap();
            assert_eq!(ab.verdict, ba.verdict);
        }
    }
}
