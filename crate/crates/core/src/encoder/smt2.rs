use std::io::{self, Write};

use super::Encoding;
use crate::analysis::StateId;

fn literal(id: usize, m: usize) -> String {
    let mut s = String::with_capacity(m + 2);
    s.push_str("#b");
    for b in (0..m).rev() {
        s.push(if id >> b & 1 == 1 { '1' } else { '0' });
    }
    s
}

fn membership(name: &str, domain: &[StateId], m: usize) -> String {
    match domain {
        [one] => format!("(= {name} {})", literal(one.0, m)),
        _ => {
            let mut s = String::from("(or");
            for id in domain {
                s.push_str(&format!(" (= {name} {})", literal(id.0, m)));
            }
            s.push(')');
            s
        }
    }
}

/// SMT-LIB2 (`QF_BV`) text: one bit-vector of width `m` per signal,
/// membership constraints for the live ids, and one biconditional per
/// transition. Miters add input equality and an output-difference test.
pub fn emit_smt2(e: &Encoding) -> String {
    let mut buf = Vec::new();
    write_smt2(e, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_smt2<W: Write>(e: &Encoding, out: W) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    let m = e.bits_per_signal();
    let groups = e.symbols().groups();
    let name = |g: usize, s: usize| format!("{}{}", groups[g].name, s);

    writeln!(out, "(set-logic QF_BV)")?;
    for (g, group) in groups.iter().enumerate() {
        for s in 0..group.num_signals {
            writeln!(out, "(declare-const {} (_ BitVec {m}))", name(g, s))?;
        }
    }
    for (g, analysis) in e.analyses().iter().enumerate() {
        let table = analysis.transitions();
        for (s, domain) in table.domains().iter().enumerate() {
            writeln!(out, "(assert {})", membership(&name(g, s), domain, m))?;
        }
        for gate in 0..table.num_gates() {
            let (src, dst) = (name(g, gate), name(g, gate + 1));
            for &(k, l) in table.transitions(gate) {
                writeln!(
                    out,
                    "(assert (= (= {src} {}) (= {dst} {})))",
                    literal(k.0, m),
                    literal(l.0, m)
                )?;
            }
        }
    }
    if e.is_miter() {
        let last_a = groups[0].num_signals - 1;
        let last_b = groups[1].num_signals - 1;
        writeln!(out, "(assert (= {} {}))", name(0, 0), name(1, 0))?;
        writeln!(
            out,
            "(assert (not (= (bvxor {} {}) {})))",
            name(0, last_a),
            name(1, last_b),
            literal(0, m)
        )?;
    }
    writeln!(out, "(check-sat)")?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{all_basis_inputs, structural_analysis, KeyMode};
    use crate::circuit::bell_circuit;
    use crate::encoder::encode_circuit;

    #[test]
    fn bell_declarations() {
        let inputs = all_basis_inputs(2).unwrap();
        let res = structural_analysis(&bell_circuit(), &inputs, KeyMode::Canonical).unwrap();
        let text = emit_smt2(&encode_circuit(&res));
        let decls: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("(declare-const"))
            .collect();
        assert_eq!(
            decls,
            [
                "(declare-const s0 (_ BitVec 4))",
                "(declare-const s1 (_ BitVec 4))",
                "(declare-const s2 (_ BitVec 4))"
            ]
        );
        assert!(
            text.contains("(assert (or (= s0 #b0000) (= s0 #b0001) (= s0 #b0010) (= s0 #b0011)))")
        );
        assert!(text.ends_with("(check-sat)\n"));
    }
}
