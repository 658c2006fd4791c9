//! Structural analysis: push every input state through the circuit, give
//! each distinct state an id, and record what every gate does to the ids
//! live at its input signal.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::Circuit;
use crate::stabilizer::{Tableau, TableauError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("at least one input state is required")]
    NoInputs,
    #[error("input {index} duplicates input {first} under the {mode} key")]
    DuplicateInput {
        index: usize,
        first: usize,
        mode: KeyMode,
    },
    #[error("qubit count mismatch: expected {expected}, got {got}")]
    QubitMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// How tableaux are turned into registry keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyMode {
    /// Canonical (reduced row echelon) tableau: one id per physical state.
    #[default]
    Canonical,
    /// Verbatim tableau bits: one id per generator list. Counts generator
    /// sets rather than states; unsound for equivalence checking.
    Raw,
}

impl fmt::Display for KeyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyMode::Canonical => "canonical",
            KeyMode::Raw => "raw",
        })
    }
}

impl std::str::FromStr for KeyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(KeyMode::Canonical),
            "raw" => Ok(KeyMode::Raw),
            other => Err(format!(
                "unknown mode `{other}` (expected canonical or raw)"
            )),
        }
    }
}

/// Dense index into a [`StateRegistry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StateId(pub usize);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unique states in discovery order.
#[derive(Debug, Clone)]
pub struct StateRegistry {
    mode: KeyMode,
    num_qubits: usize,
    states: IndexSet<Tableau>,
}

impl StateRegistry {
    pub fn new(num_qubits: usize, mode: KeyMode) -> Self {
        StateRegistry {
            mode,
            num_qubits,
            states: IndexSet::new(),
        }
    }

    pub fn mode(&self) -> KeyMode {
        self.mode
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Keyed tableau for `id`.
    pub fn state(&self, id: StateId) -> Option<&Tableau> {
        self.states.get_index(id.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, &Tableau)> {
        self.states.iter().enumerate().map(|(i, t)| (StateId(i), t))
    }

    pub fn key(&self, tableau: &Tableau) -> Result<Tableau, TableauError> {
        match self.mode {
            KeyMode::Canonical => tableau.canonicalize(),
            KeyMode::Raw => Ok(tableau.clone()),
        }
    }

    pub fn lookup(&self, tableau: &Tableau) -> Result<Option<StateId>, TableauError> {
        let key = self.key(tableau)?;
        Ok(self.states.get_index_of(&key).map(StateId))
    }

    /// Inserts an already keyed tableau, returning its id and whether it
    /// was new.
    fn insert_key(&mut self, key: Tableau) -> (StateId, bool) {
        let (index, new) = self.states.insert_full(key);
        (StateId(index), new)
    }

    /// Keys and inserts a tableau, returning its id and whether it was new.
    pub fn insert(&mut self, tableau: &Tableau) -> Result<(StateId, bool), TableauError> {
        let key = self.key(tableau)?;
        Ok(self.insert_key(key))
    }
}

/// Per-gate state maps and per-signal reachable ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionTable {
    /// `gates[i]` lists `(from, to)` for gate `i`, sorted by `from`.
    gates: Vec<Vec<(StateId, StateId)>>,
    /// `domains[s]` is the sorted set of ids reachable at signal `s`.
    domains: Vec<Vec<StateId>>,
}

impl TransitionTable {
    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn transitions(&self, gate: usize) -> &[(StateId, StateId)] {
        &self.gates[gate]
    }

    pub fn domain(&self, signal: usize) -> &[StateId] {
        &self.domains[signal]
    }

    pub fn domains(&self) -> &[Vec<StateId>] {
        &self.domains
    }

    /// Image of `from` under gate `gate`, if `from` is live at its input.
    pub fn step(&self, gate: usize, from: StateId) -> Option<StateId> {
        let list = &self.gates[gate];
        list.binary_search_by_key(&from, |&(f, _)| f)
            .ok()
            .map(|i| list[i].1)
    }

    /// Follows the transition chain from `input` through every gate.
    pub fn walk(&self, input: StateId) -> Option<Vec<StateId>> {
        let mut chain = Vec::with_capacity(self.gates.len() + 1);
        chain.push(input);
        let mut current = input;
        for gate in 0..self.gates.len() {
            current = self.step(gate, current)?;
            chain.push(current);
        }
        Some(chain)
    }
}

/// `m = ceil(log2 |S|)`, at least 1.
pub fn bits_for(num_states: usize) -> usize {
    if num_states <= 2 {
        1
    } else {
        (usize::BITS - (num_states - 1).leading_zeros()) as usize
    }
}

/// Outcome of [`structural_analysis`].
#[derive(Debug, Clone)]
pub struct AnalysisResult {
    registry: Arc<StateRegistry>,
    transitions: TransitionTable,
    num_inputs: usize,
}

impl AnalysisResult {
    pub fn registry(&self) -> &StateRegistry {
        &self.registry
    }

    pub fn shared_registry(&self) -> &Arc<StateRegistry> {
        &self.registry
    }

    pub fn transitions(&self) -> &TransitionTable {
        &self.transitions
    }

    pub fn num_states(&self) -> usize {
        self.registry.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn input_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_inputs).map(StateId)
    }

    pub fn num_signals(&self) -> usize {
        self.transitions.domains.len()
    }

    pub fn num_gates(&self) -> usize {
        self.transitions.gates.len()
    }

    /// Bits per signal variable group.
    pub fn bits_per_signal(&self) -> usize {
        bits_for(self.registry.len())
    }

    pub fn output_domain(&self) -> &[StateId] {
        self.transitions
            .domains
            .last()
            .expect("at least one signal")
    }

    /// Output id reached from `input`.
    pub fn output_of(&self, input: StateId) -> Option<StateId> {
        self.transitions.walk(input).and_then(|c| c.last().copied())
    }
}

struct Analyzer {
    registry: StateRegistry,
    num_inputs: usize,
}

impl Analyzer {
    fn new(num_qubits: usize, inputs: &[Tableau], mode: KeyMode) -> Result<Self, AnalysisError> {
        if inputs.is_empty() {
            return Err(AnalysisError::NoInputs);
        }
        let mut registry = StateRegistry::new(num_qubits, mode);
        for (index, input) in inputs.iter().enumerate() {
            if input.num_qubits() != num_qubits {
                return Err(AnalysisError::QubitMismatch {
                    expected: num_qubits,
                    got: input.num_qubits(),
                });
            }
            let (id, new) = registry.insert(input)?;
            if !new {
                return Err(AnalysisError::DuplicateInput {
                    index,
                    first: id.0,
                    mode,
                });
            }
        }
        Ok(Analyzer {
            registry,
            num_inputs: inputs.len(),
        })
    }

    fn run(&mut self, circuit: &Circuit) -> Result<TransitionTable, AnalysisError> {
        if circuit.num_qubits() != self.registry.num_qubits {
            return Err(AnalysisError::QubitMismatch {
                expected: self.registry.num_qubits,
                got: circuit.num_qubits(),
            });
        }
        let mut domain: Vec<StateId> = (0..self.num_inputs).map(StateId).collect();
        let mut domains = Vec::with_capacity(circuit.num_signals());
        let mut gates = Vec::with_capacity(circuit.len());
        for gate in circuit.gates() {
            let mut step = Vec::with_capacity(domain.len());
            for &from in &domain {
                let mut next = self.registry.states[from.0].clone();
                next.apply_gate(gate)?;
                let (to, _) = self.registry.insert(&next)?;
                step.push((from, to));
            }
            let mut next_domain: Vec<StateId> = step.iter().map(|&(_, to)| to).collect();
            next_domain.sort_unstable();
            domains.push(std::mem::replace(&mut domain, next_domain));
            gates.push(step);
        }
        domains.push(domain);
        Ok(TransitionTable { gates, domains })
    }

    fn finish(self, tables: Vec<TransitionTable>) -> Vec<AnalysisResult> {
        let registry = Arc::new(self.registry);
        tables
            .into_iter()
            .map(|transitions| AnalysisResult {
                registry: Arc::clone(&registry),
                transitions,
                num_inputs: self.num_inputs,
            })
            .collect()
    }
}

/// Enumerates the unique states of `circuit` for the given inputs. Inputs
/// receive ids `0..v`; later states are numbered in discovery order (gate
/// by gate, ascending source id).
pub fn structural_analysis(
    circuit: &Circuit,
    inputs: &[Tableau],
    mode: KeyMode,
) -> Result<AnalysisResult, AnalysisError> {
    let mut analyzer = Analyzer::new(circuit.num_qubits(), inputs, mode)?;
    let table = analyzer.run(circuit)?;
    Ok(analyzer.finish(vec![table]).pop().expect("one result"))
}

/// Analyzes two circuits over one shared registry so that equal output
/// states carry equal ids in both results.
pub fn joint_analysis(
    a: &Circuit,
    b: &Circuit,
    inputs: &[Tableau],
    mode: KeyMode,
) -> Result<(AnalysisResult, AnalysisResult), AnalysisError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(AnalysisError::QubitMismatch {
            expected: a.num_qubits(),
            got: b.num_qubits(),
        });
    }
    let mut analyzer = Analyzer::new(a.num_qubits(), inputs, mode)?;
    let ta = analyzer.run(a)?;
    let tb = analyzer.run(b)?;
    let mut results = analyzer.finish(vec![ta, tb]);
    let rb = results.pop().expect("two results");
    let ra = results.pop().expect("two results");
    Ok((ra, rb))
}

/// `|S|` for the circuit and inputs.
pub fn unique_state_count(
    circuit: &Circuit,
    inputs: &[Tableau],
    mode: KeyMode,
) -> Result<usize, AnalysisError> {
    structural_analysis(circuit, inputs, mode).map(|r| r.num_states())
}

/// All `2^n` computational basis states, in ascending ket index.
pub fn all_basis_inputs(num_qubits: usize) -> Result<Vec<Tableau>, TableauError> {
    (0..1usize << num_qubits)
        .map(|k| {
            let bits: Vec<bool> = (0..num_qubits).map(|j| k >> j & 1 == 1).collect();
            Tableau::basis_state(&bits)
        })
        .collect()
}
