//! Test-side reference implementations, written without the library's
//! simulators.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use clifford_sat::circuit::{Circuit, Gate, GateKind};
use num_complex::Complex64;

pub type Amps = Vec<Complex64>;

/// `|b>` with amplitude index `sum 2^j b_j`.
pub fn dense_basis(bits: &[bool]) -> Amps {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << bits.len()];
    let idx = bits
        .iter()
        .enumerate()
        .map(|(j, &b)| (b as usize) << j)
        .sum::<usize>();
    v[idx] = Complex64::new(1.0, 0.0);
    v
}

pub fn dense_gate(v: &mut Amps, g: &Gate) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    let t = 1usize << g.target();
    match g.kind() {
        GateKind::H => {
            for k in 0..v.len() {
                if k & t == 0 {
                    let (a, b) = (v[k], v[k | t]);
                    v[k] = (a + b) * s;
                    v[k | t] = (a - b) * s;
                }
            }
        }
        GateKind::S => (0..v.len()).filter(|k| k & t != 0).for_each(|k| v[k] *= i),
        GateKind::Z => (0..v.len())
            .filter(|k| k & t != 0)
            .for_each(|k| v[k] = -v[k]),
        GateKind::X => (0..v.len())
            .filter(|k| k & t == 0)
            .for_each(|k| v.swap(k, k | t)),
        GateKind::Y => {
            for k in 0..v.len() {
                if k & t == 0 {
                    let (a, b) = (v[k], v[k | t]);
                    v[k] = -i * b;
                    v[k | t] = i * a;
                }
            }
        }
        GateKind::Cnot => {
            let c = 1usize << g.control().unwrap();
            for k in 0..v.len() {
                if k & c != 0 && k & t == 0 {
                    v.swap(k, k | t);
                }
            }
        }
    }
}

pub fn dense_run(v: &mut Amps, c: &Circuit) {
    for g in c.gates() {
        dense_gate(v, g);
    }
}

/// Global phase taken from the largest entry of `reference`; returns the
/// largest per-amplitude deviation after alignment.
pub fn phase_aligned_distance(reference: &[Complex64], other: &[Complex64]) -> f64 {
    let k = (0..reference.len())
        .max_by(|&a, &b| reference[a].norm().total_cmp(&reference[b].norm()))
        .unwrap();
    if other[k].norm() < 1e-12 {
        return f64::INFINITY;
    }
    let phase = reference[k] / other[k];
    let phase = phase / phase.norm();
    reference
        .iter()
        .zip(other)
        .map(|(a, b)| (a - phase * b).norm())
        .fold(0.0, f64::max)
}

pub fn same_ray(a: &[Complex64], b: &[Complex64]) -> bool {
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (ip.norm() - 1.0).abs() < 1e-9
}

/// Phase-normalized, rounded amplitudes usable as a hash key.
pub fn ray_key(v: &[Complex64]) -> Vec<(i64, i64)> {
    let k = v.iter().position(|a| a.norm() > 1e-9).unwrap();
    let phase = v[k].conj() / v[k].norm();
    v.iter()
        .map(|a| {
            let b = a * phase;
            ((b.re * 1e6).round() as i64, (b.im * 1e6).round() as i64)
        })
        .collect()
}

/// Number of n-qubit stabilizer states: `2^n prod_{k=1..n} (2^k + 1)`.
pub fn stabilizer_state_count(n: u32) -> u64 {
    (1..=n).fold(1u64 << n, |acc, k| acc * ((1u64 << k) + 1))
}

/// Every gate of the full alphabet on `n` qubits.
pub fn all_gates(n: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for q in 0..n {
        gates.extend([Gate::h(q), Gate::s(q), Gate::x(q), Gate::y(q), Gate::z(q)]);
        for t in 0..n {
            if t != q {
                gates.push(Gate::cnot(q, t));
            }
        }
    }
    gates
}

/// Plain row-list tableau, one bool per entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MiniTableau {
    pub x: Vec<Vec<bool>>,
    pub z: Vec<Vec<bool>>,
    pub r: Vec<bool>,
}

impl MiniTableau {
    pub fn zero(n: usize) -> Self {
        MiniTableau {
            x: vec![vec![false; n]; n],
            z: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
            r: vec![false; n],
        }
    }

    pub fn apply(&mut self, g: &Gate) {
        let t = g.target();
        for i in 0..self.r.len() {
            let (x, z) = (&mut self.x[i], &mut self.z[i]);
            match g.kind() {
                GateKind::H => {
                    self.r[i] ^= x[t] & z[t];
                    std::mem::swap(&mut x[t], &mut z[t]);
                }
                GateKind::S => {
                    self.r[i] ^= x[t] & z[t];
                    z[t] ^= x[t];
                }
                GateKind::X => self.r[i] ^= z[t],
                GateKind::Z => self.r[i] ^= x[t],
                GateKind::Y => self.r[i] ^= x[t] ^ z[t],
                GateKind::Cnot => {
                    let c = g.control().unwrap();
                    self.r[i] ^= x[c] & z[t] & !(x[t] ^ z[c]);
                    x[t] ^= x[c];
                    z[c] ^= z[t];
                }
            }
        }
    }
}

/// Size of the orbit of `|0...0>` under the full gate alphabet, keyed by the
/// ordered generator list.
pub fn raw_orbit_size(n: usize) -> usize {
    let gates = all_gates(n);
    let start = MiniTableau::zero(n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for g in &gates {
            let mut u = t.clone();
            u.apply(g);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.len()
}

/// Size of the orbit of `|0...0>` as a set of rays in state space.
pub fn state_orbit_size(n: usize) -> usize {
    let gates = all_gates(n);
    let start = dense_basis(&vec![false; n]);
    let mut seen = HashSet::from([ray_key(&start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in &gates {
            let mut u = v.clone();
            dense_gate(&mut u, g);
            if seen.insert(ray_key(&u)) {
                queue.push_back(u);
            }
        }
    }
    seen.len()
}

/// Symplectic check that rows pairwise commute and are independent.
pub fn valid_generators(rows: &[(Vec<bool>, Vec<bool>)]) -> bool {
    let n = rows.len();
    for a in 0..n {
        for b in a + 1..n {
            let s = (0..n)
                .filter(|&j| rows[a].0[j] & rows[b].1[j] ^ rows[a].1[j] & rows[b].0[j])
                .count();
            if s % 2 == 1 {
                return false;
            }
        }
    }
    let mut m: Vec<Vec<bool>> = rows
        .iter()
        .map(|(x, z)| x.iter().chain(z).copied().collect())
        .collect();
    let mut rank = 0;
    for col in 0..2 * n {
        if let Some(p) = (rank..n).find(|&r| m[r][col]) {
            m.swap(rank, p);
            for r in 0..n {
                if r != rank && m[r][col] {
                    let pivot = m[rank].clone();
                    m[r].iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
    }
    rank == n
}
