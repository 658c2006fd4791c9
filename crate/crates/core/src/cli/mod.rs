//! Command-line front end. [`run`] returns the process exit code:
//! 0 success or equivalent, 1 not equivalent, 2 usage or internal error.

pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{all_basis_inputs, structural_analysis, AnalysisResult, KeyMode};
use crate::circuit::{
    emit_circuit, parse_circuit, random_clifford_circuit, remove_random_gate, Circuit, GateSet,
};
use crate::encoder::{encode_circuit, write_dimacs, write_smt2};
use crate::equivalence::{
    check_equivalence_with, generate_inputs, solve_dimacs, BatsatSolver, ExternalSolver, InputKind,
    SatResult, SolverInterface, Verdict,
};
use crate::stabilizer::{parse_bits, Tableau};

use bench::{run_bench, write_csv, BenchConfig, Series};

type BoxError = Box<dyn std::error::Error>;

#[derive(Parser, Debug)]
#[command(name = "clifford-sat", version, about = "Clifford circuits to SAT")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the stabilizer generators after every gate.
    Simulate {
        circuit: PathBuf,
        /// Basis input, one character per qubit (qubit 0 first).
        #[arg(long, short)]
        input: String,
    },
    /// Enumerate unique states and transitions.
    Analyze {
        circuit: PathBuf,
        #[command(flatten)]
        inputs: InputArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
        mode: ModeArg,
        /// Emit one JSON object instead of a listing.
        #[arg(long)]
        json: bool,
    },
    /// Write the CNF or SMT-LIB encoding of one circuit.
    Encode {
        circuit: PathBuf,
        #[command(flatten)]
        inputs: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
        /// Output file; standard output if absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decide equivalence on a set of sampled inputs.
    Check {
        a: PathBuf,
        b: PathBuf,
        /// Number of inputs to draw.
        #[arg(long, default_value_t = 16)]
        inputs: usize,
        #[arg(long, default_value_t = InputKind::RandomBasis)]
        input_kind: InputKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `builtin`, or a command line for a DIMACS solver reading stdin.
        #[arg(long, default_value = "builtin")]
        solver: String,
    },
    /// Run an experiment series and write CSV.
    Bench(BenchArgs),
    /// Write a random circuit as OpenQASM.
    Random {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        gates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use only H, S and CNOT.
        #[arg(long)]
        generators_only: bool,
        /// Remove one gate (chosen by the seed) from the generated circuit.
        #[arg(long)]
        remove_gate: bool,
    },
    /// Solve DIMACS from standard input; prints `s` and `v` lines.
    Solve,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// `zero`, `all-basis`, or comma-separated bit strings.
    #[arg(long, default_value = "zero")]
    inputs: String,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(value_parser = parse_series)]
    series: Series,
    /// Comma-separated qubit counts.
    #[arg(long, value_delimiter = ',', default_value = "16")]
    qubits: Vec<usize>,
    /// Comma-separated gate counts.
    #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
    gates: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Raw)]
    mode: ModeArg,
    #[arg(long)]
    generators_only: bool,
    #[arg(long, default_value_t = 16)]
    inputs: usize,
    #[arg(long, default_value_t = InputKind::RandomBasis)]
    input_kind: InputKind,
    /// Output file; standard output if absent.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse()
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Canonical,
    Raw,
}

impl From<ModeArg> for KeyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Canonical => KeyMode::Canonical,
            ModeArg::Raw => KeyMode::Raw,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dimacs,
    Smt2,
}

impl clap::ValueEnum for InputKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[
            InputKind::AllZero,
            InputKind::RandomBasis,
            InputKind::RandomStabilizer,
        ]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            InputKind::AllZero => "all_zero",
            InputKind::RandomBasis => "random_basis",
            InputKind::RandomStabilizer => "random_stabilizer",
        }))
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, BoxError> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_circuit(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn parse_inputs(spec: &str, num_qubits: usize) -> Result<Vec<Tableau>, BoxError> {
    match spec {
        "zero" => Ok(vec![Tableau::zero_state(num_qubits)?]),
        "all-basis" => Ok(all_basis_inputs(num_qubits)?),
        list => list
            .split(',')
            .map(|s| {
                let bits = parse_bits(s.trim()).ok_or_else(|| format!("bad bit string `{s}`"))?;
                if bits.len() != num_qubits {
                    return Err(format!(
                        "input `{s}` has {} bits, circuit has {num_qubits} qubits",
                        bits.len()
                    )
                    .into());
                }
                Ok(Tableau::basis_state(&bits)?)
            })
            .collect(),
    }
}

fn simulate(path: &Path, input: &str, out: &mut dyn Write) -> Result<i32, BoxError> {
    let circuit = read_circuit(path)?;
    let bits = parse_bits(input).ok_or_else(|| format!("bad bit string `{input}`"))?;
    if bits.len() != circuit.num_qubits() {
        return Err(format!(
            "input has {} bits, circuit has {} qubits",
            bits.len(),
            circuit.num_qubits()
        )
        .into());
    }
    let mut t = Tableau::basis_state(&bits)?;
    writeln!(out, "s0:")?;
    for label in t.labels() {
        writeln!(out, "  {label}")?;
    }
    for (i, gate) in circuit.gates().iter().enumerate() {
        t.apply_gate(gate)?;
        writeln!(out, "s{}: after {gate}", i + 1)?;
        for label in t.labels() {
            writeln!(out, "  {label}")?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct AnalysisSummary {
    mode: KeyMode,
    num_qubits: usize,
    num_gates: usize,
    num_inputs: usize,
    num_states: usize,
    bits_per_signal: usize,
    domain_sizes: Vec<usize>,
    domains: Vec<Vec<usize>>,
    /// `(gate, from, to)`.
    transitions: Vec<(usize, usize, usize)>,
    states: Vec<Vec<String>>,
}

fn summarize(res: &AnalysisResult) -> AnalysisSummary {
    let table = res.transitions();
    AnalysisSummary {
        mode: res.registry().mode(),
        num_qubits: res.registry().num_qubits(),
        num_gates: res.num_gates(),
        num_inputs: res.num_inputs(),
        num_states: res.num_states(),
        bits_per_signal: res.bits_per_signal(),
        domain_sizes: table.domains().iter().map(Vec::len).collect(),
        domains: table
            .domains()
            .iter()
            .map(|d| d.iter().map(|id| id.0).collect())
            .collect(),
        transitions: (0..table.num_gates())
            .flat_map(|g| {
                table
                    .transitions(g)
                    .iter()
                    .map(move |&(a, b)| (g, a.0, b.0))
            })
            .collect(),
        states: res
            .registry()
            .iter()
            .map(|(_, t)| t.labels().iter().map(ToString::to_string).collect())
            .collect(),
    }
}

fn analyze(
    path: &Path,
    inputs: &str,
    mode: KeyMode,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, BoxError> {
    let circuit = read_circuit(path)?;
    let inputs = parse_inputs(inputs, circuit.num_qubits())?;
    let res = structural_analysis(&circuit, &inputs, mode)?;
    let s = summarize(&res);
    if json {
        serde_json::to_writer(&mut *out, &s)?;
        writeln!(out)?;
        return Ok(0);
    }
    writeln!(out, "mode: {}", s.mode)?;
    writeln!(out, "states: {}", s.num_states)?;
    writeln!(out, "bits per signal: {}", s.bits_per_signal)?;
    for (i, d) in s.domains.iter().enumerate() {
        writeln!(out, "signal s{i}: {} ids {:?}", d.len(), d)?;
    }
    for (g, a, b) in &s.transitions {
        writeln!(out, "gate {g}: {a} -> {b}")?;
    }
    Ok(0)
}

fn encode(
    path: &Path,
    inputs: &str,
    format: Format,
    dest: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, BoxError> {
    let circuit = read_circuit(path)?;
    let inputs = parse_inputs(inputs, circuit.num_qubits())?;
    let res = structural_analysis(&circuit, &inputs, KeyMode::Canonical)?;
    let enc = encode_circuit(&res);
    let write = |w: &mut dyn Write| match format {
        Format::Dimacs => write_dimacs(&enc, w),
        Format::Smt2 => write_smt2(&enc, w),
    };
    match dest {
        Some(p) => {
            let f = fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            write(&mut std::io::BufWriter::new(f))?;
        }
        None => write(out)?,
    }
    writeln!(err, "vars {} clauses {}", enc.num_vars(), enc.num_clauses())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn check(
    a: &Path,
    b: &Path,
    num_inputs: usize,
    kind: InputKind,
    seed: u64,
    solver: &str,
    out: &mut dyn Write,
) -> Result<i32, BoxError> {
    let ca = read_circuit(a)?;
    let cb = read_circuit(b)?;
    if ca.num_qubits() != cb.num_qubits() {
        return Err(format!(
            "qubit counts differ: {} vs {}",
            ca.num_qubits(),
            cb.num_qubits()
        )
        .into());
    }
    let inputs = generate_inputs(ca.num_qubits(), num_inputs, kind, seed)?;
    let mut backend: Box<dyn SolverInterface> = if solver == "builtin" {
        Box::new(BatsatSolver::new())
    } else {
        Box::new(ExternalSolver::from_command_line(solver).ok_or("empty solver command")?)
    };
    let r = check_equivalence_with(&ca, &cb, &inputs, backend.as_mut())?;
    writeln!(out, "verdict: {}", r.verdict)?;
    if let Some(cex) = &r.counterexample {
        writeln!(out, "input id {}:", cex.input_id)?;
        for l in cex.input_tableau.labels() {
            writeln!(out, "  {l}")?;
        }
        writeln!(out, "output a id {}:", cex.output_id_a)?;
        for l in cex.output_a.labels() {
            writeln!(out, "  {l}")?;
        }
        writeln!(out, "output b id {}:", cex.output_id_b)?;
        for l in cex.output_b.labels() {
            writeln!(out, "  {l}")?;
        }
    }
    let s = &r.stats;
    write!(
        out,
        "inputs {} states {} vars {} clauses {} t_prep_ms {:.3} t_solve_ms {:.3}",
        s.num_inputs,
        s.num_states,
        s.num_vars,
        s.num_clauses,
        s.t_prep.as_secs_f64() * 1e3,
        s.t_solve.as_secs_f64() * 1e3
    )?;
    match s.conflicts {
        Some(c) => writeln!(out, " conflicts {c}")?,
        None => writeln!(out)?,
    }
    Ok(match r.verdict {
        Verdict::Equivalent => 0,
        Verdict::NotEquivalent => 1,
    })
}

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<i32, BoxError> {
    let mut cfg = BenchConfig::new(args.series, args.qubits, args.gates);
    cfg.samples = args.samples;
    cfg.seed = args.seed;
    cfg.mode = args.mode.into();
    cfg.num_inputs = args.inputs;
    cfg.input_kind = args.input_kind;
    if args.generators_only {
        cfg.gate_set = GateSet::Generators;
    }
    let rows = run_bench(&cfg)?;
    match args.csv {
        Some(p) => {
            let f = fs::File::create(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            write_csv(&rows, f)?;
        }
        None => write_csv(&rows, out)?,
    }
    Ok(0)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, BoxError> {
    match cli.command {
        Command::Simulate { circuit, input } => simulate(&circuit, &input, out),
        Command::Analyze {
            circuit,
            inputs,
            mode,
            json,
        } => analyze(&circuit, &inputs.inputs, mode.into(), json, out),
        Command::Encode {
            circuit,
            inputs,
            format,
            out: dest,
        } => encode(&circuit, &inputs.inputs, format, dest.as_deref(), out, err),
        Command::Check {
            a,
            b,
            inputs,
            input_kind,
            seed,
            solver,
        } => check(&a, &b, inputs, input_kind, seed, &solver, out),
        Command::Bench(args) => bench(args, out),
        Command::Random {
            qubits,
            gates,
            seed,
            generators_only,
            remove_gate,
        } => {
            let set = if generators_only {
                GateSet::Generators
            } else {
                GateSet::Full
            };
            let mut c = random_clifford_circuit(qubits, gates, seed, set)?;
            if remove_gate {
                c = remove_random_gate(&c, seed)?;
            }
            write!(out, "{}", emit_circuit(&c))?;
            Ok(0)
        }
        Command::Solve => {
            let stdin = std::io::stdin();
            match solve_dimacs(stdin.lock(), out)? {
                SatResult::Sat => Ok(10),
                SatResult::Unsat => Ok(20),
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
