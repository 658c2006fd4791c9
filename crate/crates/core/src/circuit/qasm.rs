//! Reader and writer for the OpenQASM 2 subset used by this crate: one
//! `qreg`, the gates `h s x y z cx`, `//` comments, and the ignored
//! `OPENQASM 2.0;` / `include "qelib1.inc";` header lines.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, CircuitError, Gate, GateKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unsupported gate `{name}`")]
    UnsupportedGate {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: qubit {index} out of range for register of size {size}")]
    OperandOutOfRange {
        line: usize,
        column: usize,
        index: usize,
        size: usize,
    },
    #[error("{line}:{column}: CNOT control and target are both qubit {qubit}")]
    ControlEqualsTarget {
        line: usize,
        column: usize,
        qubit: usize,
    },
    #[error("no `qreg` declaration found")]
    MissingRegister,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LBracket,
    RBracket,
    Comma,
    Semi,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = line_idx + 1;
        let content = match raw_line.find("//") {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                _ => None,
            };
            if let Some(tok) = single {
                tokens.push(Token { tok, line, column });
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                tokens.push(Token {
                    tok: Tok::Ident(word),
                    line,
                    column,
                });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let number: String = chars[start..i].iter().collect();
                tokens.push(Token {
                    tok: Tok::Number(number),
                    line,
                    column,
                });
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(syntax(line, column, "unterminated string"));
                }
                let s: String = chars[start..i].iter().collect();
                i += 1;
                tokens.push(Token {
                    tok: Tok::Str(s),
                    line,
                    column,
                });
            } else {
                return Err(syntax(line, column, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(syntax(
                self.end.0,
                self.end.1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.next(what)?;
        if t.tok == tok {
            Ok(t)
        } else {
            Err(syntax(t.line, t.column, format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            _ => Err(syntax(t.line, t.column, format!("expected {what}"))),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(usize, Token), ParseError> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Number(s) => s
                .parse::<usize>()
                .map(|v| (v, t.clone()))
                .map_err(|_| syntax(t.line, t.column, format!("expected {what}"))),
            _ => Err(syntax(t.line, t.column, format!("expected {what}"))),
        }
    }

    /// `<reg>[<index>]`; returns the index and the position of the operand.
    fn operand(&mut self, register: &(String, usize)) -> Result<(usize, Token), ParseError> {
        let (name, at) = self.ident("register operand")?;
        if name != register.0 {
            return Err(syntax(
                at.line,
                at.column,
                format!("unknown register `{name}`"),
            ));
        }
        self.expect(Tok::LBracket, "`[`")?;
        let (index, _) = self.integer("qubit index")?;
        self.expect(Tok::RBracket, "`]`")?;
        if index >= register.1 {
            return Err(ParseError::OperandOutOfRange {
                line: at.line,
                column: at.column,
                index,
                size: register.1,
            });
        }
        Ok((index, at))
    }
}

fn gate_kind(name: &str) -> Option<GateKind> {
    GateKind::ALL.into_iter().find(|k| k.mnemonic() == name)
}

/// Parses the OpenQASM 2 subset into a [`Circuit`]. Gates keep source
/// order; qubit indices come from the single declared register.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let tokens = tokenize(text)?;
    let end = tokens.last().map_or((1, 1), |t| (t.line, t.column + 1));
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
    };
    let mut register: Option<(String, usize)> = None;
    let mut circuit: Option<Circuit> = None;

    while let Some(tok) = p.peek().cloned() {
        let (word, at) = p.ident("statement")?;
        match word.as_str() {
            "OPENQASM" => {
                let t = p.next("version")?;
                if !matches!(t.tok, Tok::Number(_)) {
                    return Err(syntax(t.line, t.column, "expected version number"));
                }
                p.expect(Tok::Semi, "`;`")?;
            }
            "include" => {
                let t = p.next("include path")?;
                if !matches!(t.tok, Tok::Str(_)) {
                    return Err(syntax(t.line, t.column, "expected quoted include path"));
                }
                p.expect(Tok::Semi, "`;`")?;
            }
            "qreg" => {
                if register.is_some() {
                    return Err(syntax(
                        at.line,
                        at.column,
                        "only one quantum register is supported",
                    ));
                }
                let (name, _) = p.ident("register name")?;
                p.expect(Tok::LBracket, "`[`")?;
                let (size, size_at) = p.integer("register size")?;
                p.expect(Tok::RBracket, "`]`")?;
                p.expect(Tok::Semi, "`;`")?;
                if size == 0 {
                    return Err(syntax(
                        size_at.line,
                        size_at.column,
                        "register size must be positive",
                    ));
                }
                circuit = Some(Circuit::new(size)?);
                register = Some((name, size));
            }
            name => {
                let Some(kind) = gate_kind(name) else {
                    return Err(ParseError::UnsupportedGate {
                        line: tok.line,
                        column: tok.column,
                        name: name.to_string(),
                    });
                };
                let (Some(reg), Some(circ)) = (register.as_ref(), circuit.as_mut()) else {
                    return Err(syntax(
                        at.line,
                        at.column,
                        "gate used before `qreg` declaration",
                    ));
                };
                let (first, _) = p.operand(reg)?;
                let gate = if kind == GateKind::Cnot {
                    p.expect(Tok::Comma, "`,` between CNOT operands")?;
                    let (second, _) = p.operand(reg)?;
                    if first == second {
                        return Err(ParseError::ControlEqualsTarget {
                            line: at.line,
                            column: at.column,
                            qubit: first,
                        });
                    }
                    Gate::cnot(first, second)
                } else {
                    Gate::single(kind, first)
                };
                p.expect(Tok::Semi, "`;`")?;
                circ.push(gate)?;
            }
        }
    }
    circuit.ok_or(ParseError::MissingRegister)
}

/// Renders a circuit in the text format accepted by [`parse_circuit`].
pub fn emit_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        match gate.control() {
            Some(c) => {
                let _ = writeln!(out, "cx q[{}],q[{}];", c, gate.target());
            }
            None => {
                let _ = writeln!(out, "{} q[{}];", gate.kind().mnemonic(), gate.target());
            }
        }
    }
    out
}
