//! SAT back ends.

use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};

use batsat::{lbool, BasicSolver, Lit as BLit, SolverInterface as _, Var};
use thiserror::Error;

use crate::encoder::{CnfFormula, Lit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatResult {
    Sat,
    Unsat,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("failed to run solver `{command}`: {source}")]
    Spawn {
        command: String,
        source: std::io::Error,
    },
    #[error("solver i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("solver gave no answer (exit status {0})")]
    NoAnswer(String),
    #[error("solver reported `{0}`")]
    Unknown(String),
    #[error("malformed solver output: {0}")]
    Malformed(String),
}

/// Minimal incremental-free SAT interface. Literals use DIMACS numbering.
pub trait SolverInterface {
    fn add_clause(&mut self, clause: &[Lit]);
    fn solve(&mut self) -> Result<SatResult, SolverError>;
    /// Value of `var` in the last model; `None` before a satisfiable solve.
    fn model(&self, var: Lit) -> Option<bool>;
    /// Conflicts of the last solve, when the back end reports them.
    fn conflicts(&self) -> Option<u64>;

    fn add_formula(&mut self, formula: &CnfFormula) {
        for clause in formula.clauses() {
            self.add_clause(clause);
        }
    }

    /// Model as a vector indexed by `var - 1`.
    fn model_vector(&self, num_vars: usize) -> Option<Vec<bool>> {
        (1..=num_vars).map(|v| self.model(v as Lit)).collect()
    }
}

/// In-process CDCL solver.
#[derive(Default)]
pub struct BatsatSolver {
    solver: BasicSolver,
    vars: Vec<Var>,
    buf: Vec<BLit>,
    sat: bool,
}

impl BatsatSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn lit(&mut self, l: Lit) -> BLit {
        let idx = l.unsigned_abs() as usize;
        while self.vars.len() < idx {
            let v = self.solver.new_var_default();
            self.vars.push(v);
        }
        BLit::new(self.vars[idx - 1], l > 0)
    }
}

impl SolverInterface for BatsatSolver {
    fn add_clause(&mut self, clause: &[Lit]) {
        let mut buf = std::mem::take(&mut self.buf);
        buf.clear();
        for &l in clause {
            let lit = self.lit(l);
            buf.push(lit);
        }
        self.solver.add_clause_reuse(&mut buf);
        self.buf = buf;
        self.sat = false;
    }

    fn solve(&mut self) -> Result<SatResult, SolverError> {
        let r = self.solver.solve_limited(&[]);
        if r == lbool::TRUE {
            self.sat = true;
            Ok(SatResult::Sat)
        } else if r == lbool::FALSE {
            self.sat = false;
            Ok(SatResult::Unsat)
        } else {
            Err(SolverError::Unknown("UNKNOWN".into()))
        }
    }

    fn model(&self, var: Lit) -> Option<bool> {
        if !self.sat {
            return None;
        }
        // variables never mentioned in a clause are unconstrained
        let Some(&v) = self.vars.get(var.unsigned_abs() as usize - 1) else {
            return Some(false);
        };
        let value = self.solver.value_var(v);
        Some(value == lbool::TRUE)
    }

    fn conflicts(&self) -> Option<u64> {
        Some(self.solver.num_conflicts())
    }
}

/// Runs a SAT-competition style executable: DIMACS on stdin, `s` and `v`
/// lines on stdout.
pub struct ExternalSolver {
    program: String,
    args: Vec<String>,
    formula: CnfFormula,
    model: Option<Vec<bool>>,
}

impl ExternalSolver {
    pub fn new(program: impl Into<String>, args: Vec<String>) -> Self {
        ExternalSolver {
            program: program.into(),
            args,
            formula: CnfFormula::new(0),
            model: None,
        }
    }

    /// Splits a command line on whitespace.
    pub fn from_command_line(command: &str) -> Option<Self> {
        let mut parts = command.split_whitespace().map(str::to_string);
        let program = parts.next()?;
        Some(Self::new(program, parts.collect()))
    }
}

impl SolverInterface for ExternalSolver {
    fn add_clause(&mut self, clause: &[Lit]) {
        let max = clause
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        while self.formula.num_vars() < max {
            self.formula.new_var();
        }
        self.formula.add_clause(clause);
        self.model = None;
    }

    fn solve(&mut self) -> Result<SatResult, SolverError> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|source| SolverError::Spawn {
                command: self.program.clone(),
                source,
            })?;
        {
            let stdin = child.stdin.take().expect("piped stdin");
            let mut w = std::io::BufWriter::new(stdin);
            writeln!(
                w,
                "p cnf {} {}",
                self.formula.num_vars(),
                self.formula.num_clauses()
            )?;
            for clause in self.formula.clauses() {
                for l in clause {
                    write!(w, "{l} ")?;
                }
                writeln!(w, "0")?;
            }
            w.flush()?;
        }
        let stdout = child.stdout.take().expect("piped stdout");
        let (status, model) = parse_solver_output(BufReader::new(stdout), self.formula.num_vars())?;
        let exit = child.wait()?;
        match status {
            Some(SatResult::Sat) => {
                self.model = Some(model);
                Ok(SatResult::Sat)
            }
            Some(SatResult::Unsat) => Ok(SatResult::Unsat),
            None => Err(SolverError::NoAnswer(exit.to_string())),
        }
    }

    fn model(&self, var: Lit) -> Option<bool> {
        let model = self.model.as_ref()?;
        Some(
            model
                .get(var.unsigned_abs() as usize - 1)
                .copied()
                .unwrap_or(false),
        )
    }

    fn conflicts(&self) -> Option<u64> {
        None
    }
}

/// Reads `s` and `v` lines. Variables missing from the `v` lines are false.
pub fn parse_solver_output<R: BufRead>(
    input: R,
    num_vars: usize,
) -> Result<(Option<SatResult>, Vec<bool>), SolverError> {
    let mut status = None;
    let mut model = vec![false; num_vars];
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(SatResult::Sat),
                "UNSATISFIABLE" => Some(SatResult::Unsat),
                other => return Err(SolverError::Unknown(other.to_string())),
            };
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| SolverError::Malformed(format!("bad literal `{tok}`")))?;
                if l == 0 {
                    continue;
                }
                let v = l.unsigned_abs() as usize;
                if v > num_vars {
                    return Err(SolverError::Malformed(format!("variable {v} out of range")));
                }
                model[v - 1] = l > 0;
            }
        }
    }
    Ok((status, model))
}

/// Solves DIMACS text with the in-process solver and writes `s`/`v` lines.
pub fn solve_dimacs<R: BufRead, W: Write>(
    mut input: R,
    mut out: W,
) -> Result<SatResult, SolverError> {
    let mut solver = BasicSolver::default();
    batsat::dimacs::parse(&mut input, &mut solver, false, false)?;
    let r = solver.solve_limited(&[]);
    if r == lbool::TRUE {
        writeln!(out, "s SATISFIABLE")?;
        let mut line = String::from("v");
        for (i, &value) in solver.get_model().iter().enumerate() {
            let v = i as i64 + 1;
            line.push_str(&format!(" {}", if value == lbool::TRUE { v } else { -v }));
        }
        writeln!(out, "{line} 0")?;
        Ok(SatResult::Sat)
    } else if r == lbool::FALSE {
        writeln!(out, "s UNSATISFIABLE")?;
        Ok(SatResult::Unsat)
    } else {
        writeln!(out, "s UNKNOWN")?;
        Err(SolverError::Unknown("UNKNOWN".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batsat_small_instances() {
        let mut s = BatsatSolver::new();
        s.add_clause(&[1, 2]);
        s.add_clause(&[-1]);
        assert_eq!(s.solve().unwrap(), SatResult::Sat);
        assert_eq!(s.model(1), Some(false));
        assert_eq!(s.model(2), Some(true));
        s.add_clause(&[-2]);
        assert_eq!(s.solve().unwrap(), SatResult::Unsat);
        assert_eq!(s.model(1), None);
    }

    #[test]
    fn output_parsing() {
        let text = "c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        let (status, model) = parse_solver_output(text.as_bytes(), 4).unwrap();
        assert_eq!(status, Some(SatResult::Sat));
        assert_eq!(model, [true, false, true, false]);
        let (status, _) = parse_solver_output("s UNSATISFIABLE\n".as_bytes(), 1).unwrap();
        assert_eq!(status, Some(SatResult::Unsat));
        assert!(parse_solver_output("s UNKNOWN\n".as_bytes(), 1).is_err());
        assert!(parse_solver_output("s SATISFIABLE\nv 9 0\n".as_bytes(), 1).is_err());
    }

    #[test]
    fn dimacs_round_trip_through_builtin() {
        let mut out = Vec::new();
        let r = solve_dimacs("p cnf 2 2\n1 2 0\n-1 0\n".as_bytes(), &mut out).unwrap();
        assert_eq!(r, SatResult::Sat);
        let (status, model) = parse_solver_output(out.as_slice(), 2).unwrap();
        assert_eq!(status, Some(SatResult::Sat));
        assert_eq!(model, [false, true]);
    }
}
