//! Dense state vectors, used as an independent oracle for the tableau
//! rules on a handful of qubits.
//!
//! Amplitude index `k` is the ket label with qubit `j` at bit `j`, i.e.
//! qubit 0 is the rightmost symbol of `|i_{n-1} ... i_0>`.

use num_complex::Complex64;

use super::{Tableau, TableauError};
use crate::circuit::{Circuit, Gate, GateKind};

/// Largest qubit count for which dense vectors are materialized.
pub const MAX_STATEVECTOR_QUBITS: usize = 10;

const ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single_qubit_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::X => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
        GateKind::Y => [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
        GateKind::Z => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
        GateKind::S => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 1.)]],
        GateKind::H => [[c(h, 0.), c(h, 0.)], [c(h, 0.), c(-h, 0.)]],
        GateKind::Cnot => unreachable!("CNOT is not a single-qubit matrix"),
    }
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Result<Self, TableauError> {
        Self::basis(&vec![false; num_qubits])
    }

    /// Computational basis state; `bits[j]` is qubit `j`.
    pub fn basis(bits: &[bool]) -> Result<Self, TableauError> {
        let n = bits.len();
        if n == 0 {
            return Err(TableauError::EmptyState);
        }
        if n > MAX_STATEVECTOR_QUBITS {
            return Err(TableauError::TooLarge(n));
        }
        let mut amps = vec![c(0., 0.); 1 << n];
        let index = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | (b as usize) << j);
        amps[index] = c(1., 0.);
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Matrix-vector product with the gate's unitary.
    pub fn apply_gate(&mut self, gate: &Gate) {
        let t = gate.target();
        let tb = 1usize << t;
        match gate.control() {
            Some(ctrl) => {
                let cb = 1usize << ctrl;
                for k in 0..self.amps.len() {
                    if k & cb != 0 && k & tb == 0 {
                        self.amps.swap(k, k | tb);
                    }
                }
            }
            None => {
                let u = single_qubit_matrix(gate.kind());
                for k in 0..self.amps.len() {
                    if k & tb == 0 {
                        let a0 = self.amps[k];
                        let a1 = self.amps[k | tb];
                        self.amps[k] = u[0][0] * a0 + u[0][1] * a1;
                        self.amps[k | tb] = u[1][0] * a0 + u[1][1] * a1;
                    }
                }
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) {
        for g in circuit.gates() {
            self.apply_gate(g);
        }
    }

    fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm and rotates the first nonzero amplitude onto
    /// the positive real axis.
    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm < ZERO_TOL {
            return;
        }
        let pivot = self
            .amps
            .iter()
            .find(|a| a.norm() > ZERO_TOL)
            .copied()
            .unwrap_or(c(1., 0.));
        let rot = pivot.conj() / pivot.norm();
        for a in &mut self.amps {
            *a = *a * rot / norm;
        }
    }

    /// Compares after fixing global phase; `tol` bounds every amplitude.
    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.num_qubits != other.num_qubits {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        a.amps
            .iter()
            .zip(&b.amps)
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    /// `sign * P` applied to this vector, where `P` is row `row` of `t`.
    fn apply_pauli_row(&self, t: &Tableau, row: usize) -> Vec<Complex64> {
        let n = self.num_qubits;
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        let mut num_y = 0u32;
        for j in 0..n {
            let (x, z) = (t.x(row, j), t.z(row, j));
            xmask |= (x as usize) << j;
            zmask |= (z as usize) << j;
            num_y += (x && z) as u32;
        }
        let mut scale = Complex64::i().powu(num_y);
        if t.phase(row) {
            scale = -scale;
        }
        let mut out = vec![c(0., 0.); self.amps.len()];
        for (k, a) in self.amps.iter().enumerate() {
            let sign = if (k & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[k ^ xmask] += scale * sign * a;
        }
        out
    }

    /// True if every generator of `t` fixes this vector.
    pub fn is_stabilized_by(&self, t: &Tableau) -> bool {
        (0..t.num_qubits()).all(|row| {
            self.apply_pauli_row(t, row)
                .iter()
                .zip(&self.amps)
                .all(|(x, y)| (x - y).norm() <= 1e-9)
        })
    }
}

impl Tableau {
    /// Reconstructs the stabilized state as `prod_i (I + g_i)/2` applied to
    /// the first basis vector it does not annihilate, normalized with the
    /// first nonzero amplitude real and positive.
    pub fn to_statevector(&self) -> Result<StateVector, TableauError> {
        let n = self.num_qubits();
        if n > MAX_STATEVECTOR_QUBITS {
            return Err(TableauError::TooLarge(n));
        }
        for probe in 0..1usize << n {
            let bits: Vec<bool> = (0..n).map(|j| probe >> j & 1 == 1).collect();
            let mut v = StateVector::basis(&bits)?;
            for row in 0..n {
                let gv = v.apply_pauli_row(self, row);
                for (a, b) in v.amps.iter_mut().zip(gv) {
                    *a = (*a + b) * 0.5;
                }
            }
            if v.norm() > ZERO_TOL {
                v.normalize();
                return Ok(v);
            }
        }
        Err(TableauError::ZeroProjection)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn assert_amps(v: &StateVector, expected: &[Complex64]) {
        assert_eq!(v.amplitudes().len(), expected.len());
        for (a, e) in v.amplitudes().iter().zip(expected) {
            assert_abs_diff_eq!(a.re, e.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, e.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_state_vector() {
        let v = Tableau::from_strs(&["+ZI", "+IZ"])
            .unwrap()
            .to_statevector()
            .unwrap();
        assert_amps(&v, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
    }

    #[test]
    fn phi_plus_vector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = Tableau::from_strs(&["+ZZ", "+XX"])
            .unwrap()
            .to_statevector()
            .unwrap();
        assert_amps(&v, &[c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)]);
    }

    #[test]
    fn plus_vector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = Tableau::from_strs(&["+X"])
            .unwrap()
            .to_statevector()
            .unwrap();
        assert_amps(&v, &[c(h, 0.), c(h, 0.)]);
    }

    #[test]
    fn minus_z_is_one() {
        let v = Tableau::basis_state(&[true])
            .unwrap()
            .to_statevector()
            .unwrap();
        assert_amps(&v, &[c(0., 0.), c(1., 0.)]);
        // Z|1> = -|1>, so -Z fixes it
        let mut w = v.clone();
        w.apply_gate(&Gate::z(0));
        assert_amps(&w, &[c(0., 0.), c(-1., 0.)]);
    }

    #[test]
    fn basis_string_convention() {
        // "01": qubit 1 set, amplitude index 2
        let t = Tableau::basis_state(&[false, true]).unwrap();
        let v = t.to_statevector().unwrap();
        assert_amps(&v, &[c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)]);
        assert!(v.is_stabilized_by(&t));
    }

    #[test]
    fn s_maps_plus_to_plus_i() {
        let mut v = StateVector::zero(1).unwrap();
        v.apply_gate(&Gate::h(0));
        v.apply_gate(&Gate::s(0));
        let t = Tableau::from_strs(&["+Y"]).unwrap();
        assert!(v.is_stabilized_by(&t));
        assert!(!v.is_stabilized_by(&Tableau::from_strs(&["-Y"]).unwrap()));
    }

    #[test]
    fn y_conjugation_negates_x_and_z() {
        // Y X Y = -X and Y Z Y = -Z, checked through the eigenstates
        for (start, expect) in [("+X", "-X"), ("+Z", "-Z")] {
            let t = Tableau::from_strs(&[start]).unwrap();
            let mut v = t.to_statevector().unwrap();
            v.apply_gate(&Gate::y(0));
            assert!(v.is_stabilized_by(&Tableau::from_strs(&[expect]).unwrap()));
        }
    }

    #[test]
    fn too_many_qubits() {
        let t = Tableau::zero_state(MAX_STATEVECTOR_QUBITS + 1).unwrap();
        assert!(matches!(t.to_statevector(), Err(TableauError::TooLarge(_))));
    }
}
