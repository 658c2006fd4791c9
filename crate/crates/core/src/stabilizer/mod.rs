//! Stabilizer tableaux: `n` generator rows over `2n + 1` bit columns
//! (x-block, z-block, phase), the Clifford update rules, and a canonical
//! form that makes state identity a bit comparison.

mod canonical;
mod pauli;
mod statevector;

use std::fmt;

use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind, Qubit};

pub use pauli::{phase_exponent, Pauli, PauliLabel, PHASE_EXPONENT};
pub use statevector::{StateVector, MAX_STATEVECTOR_QUBITS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("basis state needs at least one qubit")]
    EmptyState,
    #[error("qubit {qubit} out of range for {num_qubits}-qubit tableau")]
    QubitOutOfRange { qubit: Qubit, num_qubits: usize },
    #[error("CNOT control and target are both qubit {0}")]
    ControlEqualsTarget(Qubit),
    #[error("row {0} cannot be multiplied by itself")]
    SameRow(usize),
    #[error("rows {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("expected {expected} rows of length {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("invalid Pauli label `{0}`")]
    InvalidLabel(String),
    #[error("state vector of {0} qubits exceeds the oracle limit")]
    TooLarge(usize),
    #[error("stabilizer projector annihilated every probe vector")]
    ZeroProjection,
}

const WORD_BITS: usize = 64;

#[inline]
fn split(j: usize) -> (usize, u64) {
    (j / WORD_BITS, 1u64 << (j % WORD_BITS))
}

/// Stabilizer tableau of an `n`-qubit state.
///
/// Rows are bit-packed into `u64` words, row-major. Row `i`, column `j`
/// holds `(x_{i,j}, z_{i,j})`; `r_i` is the sign bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<u64>,
}

impl Tableau {
    fn blank(n: usize) -> Self {
        let words = n.div_ceil(WORD_BITS);
        Tableau {
            n,
            words,
            x: vec![0; n * words],
            z: vec![0; n * words],
            r: vec![0; words],
        }
    }

    /// Tableau of a computational basis state: row `i` is `Z_i`, negated
    /// when `bits[i]` is set.
    pub fn basis_state(bits: &[bool]) -> Result<Self, TableauError> {
        if bits.is_empty() {
            return Err(TableauError::EmptyState);
        }
        let mut t = Tableau::blank(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            t.set_z(i, i, true);
            t.set_phase(i, b);
        }
        Ok(t)
    }

    /// `|0...0>` on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self, TableauError> {
        Self::basis_state(&vec![false; n])
    }

    /// Builds a tableau from generator labels and checks that they are
    /// independent and pairwise commuting.
    pub fn from_labels(labels: &[PauliLabel]) -> Result<Self, TableauError> {
        let n = labels.len();
        if n == 0 {
            return Err(TableauError::EmptyState);
        }
        let mut t = Tableau::blank(n);
        for (i, label) in labels.iter().enumerate() {
            if label.len() != n {
                return Err(TableauError::ShapeMismatch {
                    expected: n,
                    got: label.len(),
                });
            }
            for (j, p) in label.letters.iter().enumerate() {
                let (x, z) = p.bits();
                t.set_x(i, j, x);
                t.set_z(i, j, z);
            }
            t.set_phase(i, label.negative);
        }
        t.check_invariants()?;
        Ok(t)
    }

    /// Convenience wrapper around [`Tableau::from_labels`] for text rows
    /// such as `["+ZZ", "+XX"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self, TableauError> {
        let labels = rows
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PauliLabel>, _>>()?;
        Self::from_labels(&labels)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Storage of the mathematical object, `n(2n + 1)` bits.
    pub fn num_bits(&self) -> usize {
        self.n * (2 * self.n + 1)
    }

    #[inline]
    pub fn x(&self, row: usize, col: usize) -> bool {
        let (w, m) = split(col);
        self.x[row * self.words + w] & m != 0
    }

    #[inline]
    pub fn z(&self, row: usize, col: usize) -> bool {
        let (w, m) = split(col);
        self.z[row * self.words + w] & m != 0
    }

    #[inline]
    pub fn phase(&self, row: usize) -> bool {
        let (w, m) = split(row);
        self.r[w] & m != 0
    }

    #[inline]
    fn set_x(&mut self, row: usize, col: usize, v: bool) {
        let (w, m) = split(col);
        let word = &mut self.x[row * self.words + w];
        if v {
            *word |= m
        } else {
            *word &= !m
        }
    }

    #[inline]
    fn set_z(&mut self, row: usize, col: usize, v: bool) {
        let (w, m) = split(col);
        let word = &mut self.z[row * self.words + w];
        if v {
            *word |= m
        } else {
            *word &= !m
        }
    }

    #[inline]
    fn set_phase(&mut self, row: usize, v: bool) {
        let (w, m) = split(row);
        if v {
            self.r[w] |= m
        } else {
            self.r[w] &= !m
        }
    }

    #[inline]
    fn flip_phase(&mut self, row: usize) {
        let (w, m) = split(row);
        self.r[w] ^= m;
    }

    fn x_row(&self, row: usize) -> &[u64] {
        &self.x[row * self.words..(row + 1) * self.words]
    }

    fn z_row(&self, row: usize) -> &[u64] {
        &self.z[row * self.words..(row + 1) * self.words]
    }

    pub fn row_label(&self, row: usize) -> PauliLabel {
        PauliLabel {
            negative: self.phase(row),
            letters: (0..self.n)
                .map(|j| Pauli::from_bits(self.x(row, j), self.z(row, j)))
                .collect(),
        }
    }

    pub fn labels(&self) -> Vec<PauliLabel> {
        (0..self.n).map(|i| self.row_label(i)).collect()
    }

    fn check_qubit(&self, q: Qubit) -> Result<(), TableauError> {
        if q >= self.n {
            Err(TableauError::QubitOutOfRange {
                qubit: q,
                num_qubits: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Hadamard on qubit `j`: `r ^= x z`, then swap `x` and `z`.
    pub fn apply_h(&mut self, j: Qubit) -> Result<(), TableauError> {
        self.check_qubit(j)?;
        let (w, m) = split(j);
        for i in 0..self.n {
            let idx = i * self.words + w;
            let (xb, zb) = (self.x[idx] & m, self.z[idx] & m);
            if xb != 0 && zb != 0 {
                self.flip_phase(i);
            }
            self.x[idx] = (self.x[idx] & !m) | zb;
            self.z[idx] = (self.z[idx] & !m) | xb;
        }
        Ok(())
    }

    /// Phase gate on qubit `j`: `r ^= x z`, then `z ^= x`.
    pub fn apply_s(&mut self, j: Qubit) -> Result<(), TableauError> {
        self.check_qubit(j)?;
        let (w, m) = split(j);
        for i in 0..self.n {
            let idx = i * self.words + w;
            let xb = self.x[idx] & m;
            if xb != 0 && self.z[idx] & m != 0 {
                self.flip_phase(i);
            }
            self.z[idx] ^= xb;
        }
        Ok(())
    }

    /// CNOT with control `c` and target `t`:
    /// `r ^= x_c z_t (x_t ^ z_c ^ 1)`, `x_t ^= x_c`, `z_c ^= z_t`.
    pub fn apply_cnot(&mut self, c: Qubit, t: Qubit) -> Result<(), TableauError> {
        self.check_qubit(c)?;
        self.check_qubit(t)?;
        if c == t {
            return Err(TableauError::ControlEqualsTarget(c));
        }
        for i in 0..self.n {
            let xc = self.x(i, c);
            let zc = self.z(i, c);
            let xt = self.x(i, t);
            let zt = self.z(i, t);
            if xc && zt && !(xt ^ zc) {
                self.flip_phase(i);
            }
            self.set_x(i, t, xt ^ xc);
            self.set_z(i, c, zc ^ zt);
        }
        Ok(())
    }

    /// Pauli X on qubit `j`: negates rows with `Z` or `Y` there.
    pub fn apply_x(&mut self, j: Qubit) -> Result<(), TableauError> {
        self.check_qubit(j)?;
        for i in 0..self.n {
            if self.z(i, j) {
                self.flip_phase(i);
            }
        }
        Ok(())
    }

    /// Pauli Z on qubit `j`: negates rows with `X` or `Y` there.
    pub fn apply_z(&mut self, j: Qubit) -> Result<(), TableauError> {
        self.check_qubit(j)?;
        for i in 0..self.n {
            if self.x(i, j) {
                self.flip_phase(i);
            }
        }
        Ok(())
    }

    /// Pauli Y on qubit `j`: negates rows with `X` or `Z` there.
    pub fn apply_y(&mut self, j: Qubit) -> Result<(), TableauError> {
        self.check_qubit(j)?;
        for i in 0..self.n {
            if self.x(i, j) ^ self.z(i, j) {
                self.flip_phase(i);
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), TableauError> {
        let t = gate.target();
        match gate.kind() {
            GateKind::H => self.apply_h(t),
            GateKind::S => self.apply_s(t),
            GateKind::X => self.apply_x(t),
            GateKind::Y => self.apply_y(t),
            GateKind::Z => self.apply_z(t),
            GateKind::Cnot => self.apply_cnot(gate.control().expect("CNOT has a control"), t),
        }
    }

    /// Applies every gate of `circuit` in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), TableauError> {
        if circuit.num_qubits() != self.n {
            return Err(TableauError::ShapeMismatch {
                expected: self.n,
                got: circuit.num_qubits(),
            });
        }
        circuit.gates().iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Value-returning form of [`Tableau::apply_gate`].
    pub fn with_gate(&self, gate: &Gate) -> Result<Tableau, TableauError> {
        let mut t = self.clone();
        t.apply_gate(gate)?;
        Ok(t)
    }

    fn symplectic_product(&self, a: usize, b: usize) -> bool {
        let mut acc = 0u32;
        for w in 0..self.words {
            let (xa, za) = (self.x_row(a)[w], self.z_row(a)[w]);
            let (xb, zb) = (self.x_row(b)[w], self.z_row(b)[w]);
            acc += ((xa & zb) ^ (xb & za)).count_ones();
        }
        acc % 2 == 1
    }

    /// GF(2) rank of the `n x 2n` symplectic matrix.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.n)
            .map(|i| {
                let mut v = self.x_row(i).to_vec();
                v.extend_from_slice(self.z_row(i));
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..2 * self.n {
            let (w, m) = if col < self.n {
                split(col)
            } else {
                let (w, m) = split(col - self.n);
                (w + self.words, m)
            };
            let Some(p) = (rank..self.n).find(|&i| rows[i][w] & m != 0) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..self.n {
                if i != rank && rows[i][w] & m != 0 {
                    let pivot = rows[rank].clone();
                    rows[i].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Verifies pairwise commutation and linear independence of the rows.
    pub fn check_invariants(&self) -> Result<(), TableauError> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.symplectic_product(a, b) {
                    return Err(TableauError::Anticommuting(a, b));
                }
            }
        }
        if self.rank() != self.n {
            return Err(TableauError::DependentRows);
        }
        Ok(())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row_label(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "Tableau{rows:?}")
    }
}

/// Parses a basis-state bit string such as `"01"`; character `i` is qubit `i`.
pub fn parse_bits(text: &str) -> Option<Vec<bool>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(t: &Tableau) -> Vec<String> {
        t.labels().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn basis_state_rows() {
        let t = Tableau::basis_state(&[false, false]).unwrap();
        assert_eq!(labels(&t), ["+ZI", "+IZ"]);
        let t = Tableau::basis_state(&[true]).unwrap();
        assert_eq!(labels(&t), ["-Z"]);
        let t = Tableau::basis_state(&parse_bits("01").unwrap()).unwrap();
        assert_eq!(labels(&t), ["+ZI", "-IZ"]);
        assert_eq!(Tableau::basis_state(&[]), Err(TableauError::EmptyState));
        assert_eq!(t.num_bits(), 10);
    }

    #[test]
    fn bell_trace() {
        let mut t = Tableau::zero_state(2).unwrap();
        t.apply_h(1).unwrap();
        assert_eq!(labels(&t), ["+ZI", "+IX"]);
        t.apply_cnot(1, 0).unwrap();
        assert_eq!(labels(&t), ["+ZZ", "+XX"]);
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let mut t = Tableau::zero_state(1).unwrap();
        t.apply_h(0).unwrap();
        assert_eq!(labels(&t), ["+X"]);
    }

    #[test]
    fn phase_gate_examples() {
        let mut t = Tableau::from_strs(&["+X"]).unwrap();
        t.apply_s(0).unwrap();
        assert_eq!(labels(&t), ["+Y"]);
        let mut t = Tableau::from_strs(&["+Z"]).unwrap();
        t.apply_s(0).unwrap();
        assert_eq!(labels(&t), ["+Z"]);
    }

    #[test]
    fn pauli_rules() {
        let mut t = Tableau::from_strs(&["+X"]).unwrap();
        t.apply_x(0).unwrap();
        assert_eq!(labels(&t), ["+X"]);
        let mut t = Tableau::from_strs(&["-X"]).unwrap();
        t.apply_x(0).unwrap();
        assert_eq!(labels(&t), ["-X"]);
        let mut t = Tableau::from_strs(&["+Z"]).unwrap();
        t.apply_y(0).unwrap();
        assert_eq!(labels(&t), ["-Z"]);
        let mut t = Tableau::from_strs(&["+Y"]).unwrap();
        t.apply_z(0).unwrap();
        assert_eq!(labels(&t), ["-Y"]);
    }

    #[test]
    fn operand_errors() {
        let mut t = Tableau::zero_state(2).unwrap();
        assert_eq!(
            t.apply_h(2),
            Err(TableauError::QubitOutOfRange {
                qubit: 2,
                num_qubits: 2
            })
        );
        assert_eq!(
            t.apply_cnot(1, 1),
            Err(TableauError::ControlEqualsTarget(1))
        );
        assert!(t.apply_cnot(0, 5).is_err());
    }

    #[test]
    fn invalid_generator_sets_rejected() {
        assert_eq!(
            Tableau::from_strs(&["+XI", "+ZI"]),
            Err(TableauError::Anticommuting(0, 1))
        );
        assert_eq!(
            Tableau::from_strs(&["+ZZ", "+ZZ"]),
            Err(TableauError::DependentRows)
        );
        assert!(Tableau::from_strs(&["+ZZ"]).is_err());
    }

    #[test]
    fn wide_tableau_crosses_word_boundary() {
        let n = 130;
        let mut t = Tableau::zero_state(n).unwrap();
        t.apply_h(100).unwrap();
        t.apply_cnot(100, 3).unwrap();
        t.apply_cnot(3, 129).unwrap();
        t.apply_s(129).unwrap();
        t.check_invariants().unwrap();
        assert!(t.x(100, 129));
    }
}
