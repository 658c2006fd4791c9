//! CNF construction from structural-analysis results.
//!
//! Every signal gets `m` Boolean variables holding a state id in binary
//! (bit 0 least significant). Three clause families are produced:
//!
//! * blocking: the signal's value must be an id live at that signal; the
//!   complement of the live set is covered by aligned prefix cubes, one
//!   clause per cube. At `s_0` this is also the input restriction.
//! * functional: for a transition `k -> l` at gate `i`,
//!   `[x^{s_i}] = k  <=>  [x^{s_{i+1}}] = l`, expanded into `2m` clauses of
//!   width `m + 1`.
//! * miter glue (two-circuit encodings only): equal inputs, one XOR
//!   variable per output bit, and a clause requiring some XOR to be set.
//!
//! No auxiliary variables are introduced apart from the miter's XOR bits.

mod dimacs;
mod smt2;

use serde::Serialize;

use crate::analysis::{AnalysisResult, StateId};

pub use dimacs::{emit_dimacs, write_dimacs};
pub use smt2::emit_smt2;
pub use smt2::write_smt2;

/// Signed DIMACS literal.
pub type Lit = i32;

/// Flat clause store.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    lits: Vec<Lit>,
    starts: Vec<usize>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            lits: Vec::new(),
            starts: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.starts.len()
    }

    pub fn num_literals(&self) -> usize {
        self.lits.len()
    }

    /// Allocates a fresh variable.
    pub fn new_var(&mut self) -> Lit {
        self.num_vars += 1;
        self.num_vars as Lit
    }

    /// Panics on an empty clause, an out-of-range variable, or a clause
    /// containing both polarities of one variable.
    pub fn add_clause(&mut self, clause: &[Lit]) {
        assert!(!clause.is_empty(), "empty clause");
        for (i, &l) in clause.iter().enumerate() {
            assert!(
                l != 0 && l.unsigned_abs() as usize <= self.num_vars,
                "literal {l} out of range"
            );
            debug_assert!(!clause[..i].contains(&-l), "tautological clause {clause:?}");
        }
        self.starts.push(self.lits.len());
        self.lits.extend_from_slice(clause);
    }

    pub fn clause(&self, index: usize) -> &[Lit] {
        let start = self.starts[index];
        let end = self
            .starts
            .get(index + 1)
            .copied()
            .unwrap_or(self.lits.len());
        &self.lits[start..end]
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Lit]> + '_ {
        (0..self.starts.len()).map(move |i| self.clause(i))
    }

    /// Whether `assignment[v - 1]` (for variable `v`) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

/// One circuit's block of signal variables.
#[derive(Debug, Clone, Serialize)]
pub struct SignalGroup {
    pub name: String,
    pub first_var: Lit,
    pub num_signals: usize,
}

/// Map `(group, signal, bit) -> variable`, dense from 1, signal-major and
/// bit-minor, groups in order.
#[derive(Debug, Clone, Serialize)]
pub struct SymbolTable {
    bits_per_signal: usize,
    groups: Vec<SignalGroup>,
}

impl SymbolTable {
    fn new(bits_per_signal: usize) -> Self {
        SymbolTable {
            bits_per_signal,
            groups: Vec::new(),
        }
    }

    fn push_group(&mut self, name: &str, num_signals: usize) -> usize {
        let first_var = 1 + self.num_signal_vars() as Lit;
        self.groups.push(SignalGroup {
            name: name.to_string(),
            first_var,
            num_signals,
        });
        self.groups.len() - 1
    }

    pub fn bits_per_signal(&self) -> usize {
        self.bits_per_signal
    }

    pub fn groups(&self) -> &[SignalGroup] {
        &self.groups
    }

    /// `m` times the total number of signals.
    pub fn num_signal_vars(&self) -> usize {
        self.groups
            .iter()
            .map(|g| g.num_signals * self.bits_per_signal)
            .sum()
    }

    pub fn var(&self, group: usize, signal: usize, bit: usize) -> Lit {
        let g = &self.groups[group];
        assert!(signal < g.num_signals && bit < self.bits_per_signal);
        g.first_var + (signal * self.bits_per_signal + bit) as Lit
    }

    /// Literal that is true iff bit `bit` of the signal equals `value`.
    fn bit_lit(&self, group: usize, signal: usize, bit: usize, value: bool) -> Lit {
        let v = self.var(group, signal, bit);
        if value {
            v
        } else {
            -v
        }
    }

    /// Reads the id held by a signal under a model indexed by variable - 1.
    pub fn decode(&self, model: &[bool], group: usize, signal: usize) -> StateId {
        let value = (0..self.bits_per_signal).fold(0usize, |acc, bit| {
            let v = self.var(group, signal, bit) as usize;
            acc | (model[v - 1] as usize) << bit
        });
        StateId(value)
    }
}

/// Clause counts per constraint family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClauseCounts {
    pub blocking: usize,
    pub functional: usize,
    pub input_link: usize,
    pub difference: usize,
    pub output: usize,
}

impl ClauseCounts {
    pub fn total(&self) -> usize {
        self.blocking + self.functional + self.input_link + self.difference + self.output
    }
}

/// A complete formula with the bookkeeping to interpret its models.
#[derive(Debug, Clone)]
pub struct Encoding {
    formula: CnfFormula,
    symbols: SymbolTable,
    analyses: Vec<AnalysisResult>,
    counts: ClauseCounts,
    difference_vars: Vec<Lit>,
}

impl Encoding {
    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn analyses(&self) -> &[AnalysisResult] {
        &self.analyses
    }

    pub fn counts(&self) -> ClauseCounts {
        self.counts
    }

    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    pub fn bits_per_signal(&self) -> usize {
        self.symbols.bits_per_signal
    }

    /// XOR variables `d_0..d_{m-1}` of a miter; empty for single circuits.
    pub fn difference_vars(&self) -> &[Lit] {
        &self.difference_vars
    }

    pub fn is_miter(&self) -> bool {
        !self.difference_vars.is_empty()
    }
}

fn id_bit(id: usize, bit: usize) -> bool {
    id >> bit & 1 == 1
}

struct Builder {
    formula: CnfFormula,
    symbols: SymbolTable,
    counts: ClauseCounts,
    clause: Vec<Lit>,
}

impl Builder {
    /// Forbids every id outside `domain` at one signal.
    fn blocking(&mut self, group: usize, signal: usize, domain: &[StateId]) {
        let m = self.symbols.bits_per_signal;
        let ids: Vec<usize> = domain.iter().map(|id| id.0).collect();
        self.cover_complement(group, signal, &ids, m, 0);
    }

    /// `ids` are sorted and share the bits above `level` with `prefix`.
    /// Emits one clause per maximal aligned cube that contains no id.
    fn cover_complement(
        &mut self,
        group: usize,
        signal: usize,
        ids: &[usize],
        level: usize,
        prefix: usize,
    ) {
        if level == 0 {
            return;
        }
        let bit = level - 1;
        let split = ids.partition_point(|&id| !id_bit(id, bit));
        let (zeros, ones) = ids.split_at(split);
        for (half, value) in [(zeros, false), (ones, true)] {
            let child = prefix | (value as usize) << bit;
            if half.is_empty() {
                let m = self.symbols.bits_per_signal;
                self.clause.clear();
                for b in (bit..m).rev() {
                    let lit = self.symbols.bit_lit(group, signal, b, !id_bit(child, b));
                    self.clause.push(lit);
                }
                self.formula.add_clause(&self.clause);
                self.counts.blocking += 1;
            } else {
                self.cover_complement(group, signal, half, bit, child);
            }
        }
    }

    /// `(s_i = from) <=> (s_{i+1} = to)`.
    fn functional(&mut self, group: usize, gate: usize, from: StateId, to: StateId) {
        let m = self.symbols.bits_per_signal;
        for (src, dst, src_id, dst_id) in [
            (gate, gate + 1, from.0, to.0),
            (gate + 1, gate, to.0, from.0),
        ] {
            for target_bit in 0..m {
                self.clause.clear();
                for b in 0..m {
                    self.clause
                        .push(self.symbols.bit_lit(group, src, b, !id_bit(src_id, b)));
                }
                self.clause.push(self.symbols.bit_lit(
                    group,
                    dst,
                    target_bit,
                    id_bit(dst_id, target_bit),
                ));
                self.formula.add_clause(&self.clause);
                self.counts.functional += 1;
            }
        }
    }

    fn circuit(&mut self, group: usize, analysis: &AnalysisResult) {
        let table = analysis.transitions();
        for (signal, domain) in table.domains().iter().enumerate() {
            self.blocking(group, signal, domain);
        }
        for gate in 0..table.num_gates() {
            for &(from, to) in table.transitions(gate) {
                self.functional(group, gate, from, to);
            }
        }
    }
}

fn start(analyses: &[&AnalysisResult], names: &[&str]) -> (Builder, Vec<usize>) {
    let m = analyses[0].bits_per_signal();
    let mut symbols = SymbolTable::new(m);
    let groups: Vec<usize> = analyses
        .iter()
        .zip(names)
        .map(|(a, name)| symbols.push_group(name, a.num_signals()))
        .collect();
    let formula = CnfFormula::new(symbols.num_signal_vars());
    (
        Builder {
            formula,
            symbols,
            counts: ClauseCounts::default(),
            clause: Vec::new(),
        },
        groups,
    )
}

/// Encodes one analyzed circuit.
pub fn encode_circuit(analysis: &AnalysisResult) -> Encoding {
    let (mut builder, groups) = start(&[analysis], &["s"]);
    builder.circuit(groups[0], analysis);
    Encoding {
        formula: builder.formula,
        symbols: builder.symbols,
        analyses: vec![analysis.clone()],
        counts: builder.counts,
        difference_vars: Vec::new(),
    }
}

/// Encodes two circuits analyzed over one shared registry, tied together
/// as a miter: equal input ids, and at least one differing output bit.
///
/// Panics if the analyses do not share a registry.
pub fn encode_miter(a: &AnalysisResult, b: &AnalysisResult) -> Encoding {
    assert!(
        std::sync::Arc::ptr_eq(a.shared_registry(), b.shared_registry()),
        "miter halves must come from one joint analysis"
    );
    let (mut builder, groups) = start(&[a, b], &["a", "b"]);
    let (ga, gb) = (groups[0], groups[1]);
    builder.circuit(ga, a);
    builder.circuit(gb, b);

    let m = builder.symbols.bits_per_signal;
    for bit in 0..m {
        let va = builder.symbols.var(ga, 0, bit);
        let vb = builder.symbols.var(gb, 0, bit);
        builder.formula.add_clause(&[-va, vb]);
        builder.formula.add_clause(&[va, -vb]);
        builder.counts.input_link += 2;
    }

    let out_a = a.num_signals() - 1;
    let out_b = b.num_signals() - 1;
    let mut difference_vars = Vec::with_capacity(m);
    for bit in 0..m {
        let x = builder.symbols.var(ga, out_a, bit);
        let y = builder.symbols.var(gb, out_b, bit);
        let d = builder.formula.new_var();
        // d <=> x xor y
        builder.formula.add_clause(&[-d, x, y]);
        builder.formula.add_clause(&[-d, -x, -y]);
        builder.formula.add_clause(&[d, -x, y]);
        builder.formula.add_clause(&[d, x, -y]);
        builder.counts.difference += 4;
        difference_vars.push(d);
    }
    builder.formula.add_clause(&difference_vars);
    builder.counts.output += 1;

    Encoding {
        formula: builder.formula,
        symbols: builder.symbols,
        analyses: vec![a.clone(), b.clone()],
        counts: builder.counts,
        difference_vars,
    }
}
