//! Experiment series and CSV output.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::analysis::{structural_analysis, AnalysisError, KeyMode};
use crate::circuit::{random_clifford_circuit, remove_random_gate, CircuitError, GateSet};
use crate::encoder::encode_circuit;
use crate::equivalence::{check_equivalence, EquivalenceError, InputKind};
use crate::stabilizer::{Tableau, TableauError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    /// Encoding size and construction time, all-zero input.
    Scaling,
    /// Unique-state counts.
    Generators,
    /// Circuit against a copy with one gate removed.
    Equivalence,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::Scaling => "scaling",
            Series::Generators => "generators",
            Series::Equivalence => "equivalence",
        })
    }
}

impl std::str::FromStr for Series {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scaling" => Ok(Series::Scaling),
            "generators" => Ok(Series::Generators),
            "equivalence" => Ok(Series::Equivalence),
            _ => Err(format!("unknown series `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub series: Series,
    pub qubits: Vec<usize>,
    pub gates: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub gate_set: GateSet,
    /// Key mode of the generators series.
    pub mode: KeyMode,
    pub num_inputs: usize,
    pub input_kind: InputKind,
}

impl BenchConfig {
    pub fn new(series: Series, qubits: Vec<usize>, gates: Vec<usize>) -> Self {
        BenchConfig {
            series,
            qubits,
            gates,
            samples: 10,
            seed: 0,
            gate_set: GateSet::Full,
            mode: KeyMode::Canonical,
            num_inputs: 16,
            input_kind: InputKind::RandomBasis,
        }
    }
}

fn count<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.fract() == 0.0 {
        s.serialize_str(&format!("{}", *v as i64))
    } else {
        s.serialize_str(&format!("{v:.3}"))
    }
}

fn opt_count<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => count(v, s),
        None => s.serialize_none(),
    }
}

fn millis<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&format!("{v:.3}")),
        None => s.serialize_none(),
    }
}

/// One CSV row. Count fields are reals so that mean rows fit the same
/// shape; per-sample rows always hold whole numbers.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub series: Series,
    pub n: usize,
    pub num_gates: usize,
    pub seed: u64,
    /// Sample index, or `mean`.
    pub rep: String,
    #[serde(serialize_with = "millis")]
    pub t_prep_ms: Option<f64>,
    #[serde(serialize_with = "millis")]
    pub t_solve_ms: Option<f64>,
    #[serde(serialize_with = "opt_count")]
    pub num_vars: Option<f64>,
    #[serde(serialize_with = "opt_count")]
    pub num_clauses: Option<f64>,
    #[serde(serialize_with = "count")]
    pub num_states: f64,
    pub verdict: Option<String>,
    #[serde(serialize_with = "opt_count")]
    pub conflicts: Option<f64>,
}

impl BenchRecord {
    pub fn is_mean(&self) -> bool {
        self.rep == "mean"
    }
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Option<Vec<f64>> = values.collect();
    let v = v?;
    if v.is_empty() {
        None
    } else {
        Some(v.iter().sum::<f64>() / v.len() as f64)
    }
}

fn mean_row(rows: &[BenchRecord], seed: u64) -> BenchRecord {
    let first = &rows[0];
    let detected = rows
        .iter()
        .filter(|r| r.verdict.as_deref() == Some("not_equivalent"))
        .count();
    BenchRecord {
        series: first.series,
        n: first.n,
        num_gates: first.num_gates,
        seed,
        rep: "mean".into(),
        t_prep_ms: mean(rows.iter().map(|r| r.t_prep_ms)),
        t_solve_ms: mean(rows.iter().map(|r| r.t_solve_ms)),
        num_vars: mean(rows.iter().map(|r| r.num_vars)),
        num_clauses: mean(rows.iter().map(|r| r.num_clauses)),
        num_states: rows.iter().map(|r| r.num_states).sum::<f64>() / rows.len() as f64,
        verdict: first
            .verdict
            .as_ref()
            .map(|_| format!("{detected}/{} not_equivalent", rows.len())),
        conflicts: mean(rows.iter().map(|r| r.conflicts)),
    }
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn sample(
    config: &BenchConfig,
    n: usize,
    num_gates: usize,
    rep: usize,
) -> Result<BenchRecord, BenchError> {
    let seed = config.seed.wrapping_add(rep as u64);
    let circuit = random_clifford_circuit(n, num_gates, seed, config.gate_set)?;
    let mut record = BenchRecord {
        series: config.series,
        n,
        num_gates,
        seed,
        rep: rep.to_string(),
        t_prep_ms: None,
        t_solve_ms: None,
        num_vars: None,
        num_clauses: None,
        num_states: 0.0,
        verdict: None,
        conflicts: None,
    };
    let zero = [Tableau::zero_state(n)?];
    match config.series {
        Series::Scaling => {
            let start = Instant::now();
            let res = structural_analysis(&circuit, &zero, KeyMode::Canonical)?;
            let enc = encode_circuit(&res);
            record.t_prep_ms = Some(ms(start.elapsed()));
            record.num_vars = Some(enc.num_vars() as f64);
            record.num_clauses = Some(enc.num_clauses() as f64);
            record.num_states = res.num_states() as f64;
        }
        Series::Generators => {
            let start = Instant::now();
            let res = structural_analysis(&circuit, &zero, config.mode)?;
            record.t_prep_ms = Some(ms(start.elapsed()));
            record.num_states = res.num_states() as f64;
        }
        Series::Equivalence => {
            let other = remove_random_gate(&circuit, seed)?;
            let r =
                check_equivalence(&circuit, &other, config.num_inputs, config.input_kind, seed)?;
            record.t_prep_ms = Some(ms(r.stats.t_prep));
            record.t_solve_ms = Some(ms(r.stats.t_solve));
            record.num_vars = Some(r.stats.num_vars as f64);
            record.num_clauses = Some(r.stats.num_clauses as f64);
            record.num_states = r.stats.num_states as f64;
            record.verdict = Some(r.verdict.to_string());
            record.conflicts = r.stats.conflicts.map(|c| c as f64);
        }
    }
    Ok(record)
}

/// Runs every `(n, |G|)` point in order, `samples` circuits each (seeds
/// `seed..seed + samples`), and appends a mean row per point.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for &n in &config.qubits {
        for &g in &config.gates {
            let rows = (0..config.samples)
                .map(|rep| sample(config, n, g, rep))
                .collect::<Result<Vec<_>, _>>()?;
            if !rows.is_empty() {
                let m = mean_row(&rows, config.seed);
                records.extend(rows);
                records.push(m);
            }
        }
    }
    Ok(records)
}

pub const CSV_HEADER: &str =
    "series,n,num_gates,seed,rep,t_prep_ms,t_solve_ms,num_vars,num_clauses,num_states,verdict,conflicts";

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
