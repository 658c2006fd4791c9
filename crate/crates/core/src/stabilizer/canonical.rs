use super::pauli::phase_exponent_word;
use super::{split, Tableau, TableauError};

impl Tableau {
    /// Replaces row `a` with the group product `(row a) * (row b)`.
    pub fn row_multiply(&mut self, a: usize, b: usize) -> Result<(), TableauError> {
        if a == b {
            return Err(TableauError::SameRow(a));
        }
        for row in [a, b] {
            if row >= self.n {
                return Err(TableauError::QubitOutOfRange {
                    qubit: row,
                    num_qubits: self.n,
                });
            }
        }
        self.row_multiply_unchecked(a, b)
    }

    fn row_multiply_unchecked(&mut self, a: usize, b: usize) -> Result<(), TableauError> {
        let words = self.words;
        let mut exponent = 0i32;
        for w in 0..words {
            let ia = a * words + w;
            let ib = b * words + w;
            exponent += phase_exponent_word(self.x[ia], self.z[ia], self.x[ib], self.z[ib]);
            self.x[ia] ^= self.x[ib];
            self.z[ia] ^= self.z[ib];
        }
        let exponent = exponent.rem_euclid(4);
        if exponent % 2 == 1 {
            return Err(TableauError::Anticommuting(a, b));
        }
        let flip = self.phase(b) ^ (exponent == 2);
        if flip {
            self.flip_phase(a);
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let words = self.words;
        for w in 0..words {
            self.x.swap(a * words + w, b * words + w);
            self.z.swap(a * words + w, b * words + w);
        }
        let (pa, pb) = (self.phase(a), self.phase(b));
        self.set_phase(a, pb);
        self.set_phase(b, pa);
    }

    /// Brings the tableau to reduced row echelon form over the column order
    /// `x_0..x_{n-1}, z_0..z_{n-1}` using only row swaps and row products.
    /// Two tableaux stabilize the same state iff their canonical forms are
    /// bit-identical.
    pub fn canonicalize_in_place(&mut self) -> Result<(), TableauError> {
        let n = self.n;
        let words = self.words;
        let mut rank = 0;
        for col in 0..2 * n {
            if rank == n {
                break;
            }
            let (in_z, (w, m)) = if col < n {
                (false, split(col))
            } else {
                (true, split(col - n))
            };
            let has = |t: &Tableau, i: usize| {
                let block = if in_z { &t.z } else { &t.x };
                block[i * words + w] & m != 0
            };
            let Some(pivot) = (rank..n).find(|&i| has(self, i)) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            for i in 0..n {
                if i != rank && has(self, i) {
                    self.row_multiply_unchecked(i, rank)?;
                }
            }
            rank += 1;
        }
        if rank < n {
            return Err(TableauError::DependentRows);
        }
        Ok(())
    }

    pub fn canonicalize(&self) -> Result<Tableau, TableauError> {
        let mut t = self.clone();
        t.canonicalize_in_place()?;
        Ok(t)
    }

    /// True when both tableaux describe the same state.
    pub fn same_state(&self, other: &Tableau) -> Result<bool, TableauError> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.canonicalize()? == other.canonicalize()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(t: &Tableau) -> Vec<String> {
        t.labels().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn product_of_xx_and_zz_is_minus_yy() {
        let mut t = Tableau::from_strs(&["+XX", "+ZZ"]).unwrap();
        t.row_multiply(0, 1).unwrap();
        assert_eq!(rows(&t), ["-YY", "+ZZ"]);
    }

    #[test]
    fn disjoint_supports_multiply_without_phase() {
        let mut t = Tableau::from_strs(&["+ZI", "+IZ"]).unwrap();
        t.row_multiply(0, 1).unwrap();
        assert_eq!(rows(&t), ["+ZZ", "+IZ"]);
    }

    #[test]
    fn row_times_itself_rejected() {
        let mut t = Tableau::zero_state(2).unwrap();
        assert_eq!(t.row_multiply(1, 1), Err(TableauError::SameRow(1)));
    }

    #[test]
    fn canonical_form_ignores_generator_choice() {
        let a = Tableau::from_strs(&["+XX", "+ZZ"]).unwrap();
        let b = Tableau::from_strs(&["+ZZ", "+XX"]).unwrap();
        let c = Tableau::from_strs(&["+XX", "-YY"]).unwrap();
        let ca = a.canonicalize().unwrap();
        assert_eq!(ca, b.canonicalize().unwrap());
        assert_eq!(ca, c.canonicalize().unwrap());
        assert_eq!(ca.canonicalize().unwrap(), ca);
        let d = Tableau::from_strs(&["-XX", "+ZZ"]).unwrap();
        assert_ne!(ca, d.canonicalize().unwrap());
    }

    #[test]
    fn canonical_form_is_rref() {
        let t = Tableau::from_strs(&["+ZZ", "+XX"])
            .unwrap()
            .canonicalize()
            .unwrap();
        assert_eq!(rows(&t), ["+XX", "+ZZ"]);
    }
}
