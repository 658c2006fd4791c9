use std::fmt::Write as _;
use std::io::{self, Write};

use super::Encoding;

/// DIMACS CNF text. Comment lines list the variables of every signal,
/// bit 0 first.
pub fn emit_dimacs(e: &Encoding) -> String {
    let mut buf = Vec::new();
    write_dimacs(e, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_dimacs<W: Write>(e: &Encoding, out: W) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    let symbols = e.symbols();
    let m = symbols.bits_per_signal();
    let counts = e.counts();
    writeln!(out, "c clifford circuit encoding, {m} bits per signal")?;
    writeln!(
        out,
        "c clauses: blocking {} functional {} input_link {} difference {} output {}",
        counts.blocking, counts.functional, counts.input_link, counts.difference, counts.output
    )?;
    let mut line = String::new();
    for (g, group) in symbols.groups().iter().enumerate() {
        for s in 0..group.num_signals {
            line.clear();
            write!(line, "c {}{} =", group.name, s).unwrap();
            for b in 0..m {
                write!(line, " {}", symbols.var(g, s, b)).unwrap();
            }
            writeln!(out, "{line}")?;
        }
    }
    for (j, d) in e.difference_vars().iter().enumerate() {
        writeln!(out, "c d{j} = {d}")?;
    }
    writeln!(out, "p cnf {} {}", e.num_vars(), e.num_clauses())?;
    for clause in e.formula().clauses() {
        line.clear();
        for l in clause {
            write!(line, "{l} ").unwrap();
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{structural_analysis, KeyMode};
    use crate::circuit::Circuit;
    use crate::encoder::encode_circuit;
    use crate::stabilizer::Tableau;

    #[test]
    fn empty_circuit_text() {
        let res = structural_analysis(
            &Circuit::new(1).unwrap(),
            &[Tableau::zero_state(1).unwrap()],
            KeyMode::Canonical,
        )
        .unwrap();
        let text = emit_dimacs(&encode_circuit(&res));
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('c')).collect();
        assert_eq!(body, ["p cnf 1 1", "-1 0"]);
        assert!(text.contains("c s0 = 1\n"));
    }
}
