use std::fmt;
use std::str::FromStr;

use super::TableauError;

/// Single-qubit Pauli letter, encoded as `(x, z)`: `I=(0,0)`, `X=(1,0)`,
/// `Z=(0,1)`, `Y=(1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Exponent of `i` in the single-qubit product `P_a * P_b`, indexed by
/// `x_a << 3 | z_a << 2 | x_b << 1 | z_b`.
pub const PHASE_EXPONENT: [i8; 16] = {
    let mut table = [0i8; 16];
    // X*Y = iZ, Y*Z = iX, Z*X = iY
    table[0b1011] = 1;
    table[0b1101] = 1;
    table[0b0110] = 1;
    // X*Z = -iY, Y*X = -iZ, Z*Y = -iX
    table[0b1001] = -1;
    table[0b1110] = -1;
    table[0b0111] = -1;
    table
};

pub fn phase_exponent(xa: bool, za: bool, xb: bool, zb: bool) -> i8 {
    PHASE_EXPONENT[(xa as usize) << 3 | (za as usize) << 2 | (xb as usize) << 1 | zb as usize]
}

/// Sum of [`phase_exponent`] over the 64 qubit slots of one word.
#[inline]
pub(crate) fn phase_exponent_word(xa: u64, za: u64, xb: u64, zb: u64) -> i32 {
    let plus = (xa & !za & xb & zb) | (xa & za & !xb & zb) | (!xa & za & xb & !zb);
    let minus = (xa & !za & !xb & zb) | (xa & za & xb & !zb) | (!xa & za & xb & zb);
    plus.count_ones() as i32 - minus.count_ones() as i32
}

/// Signed Pauli string, the printable form of one tableau row, e.g. `+ZZ`
/// or `-IX`. Letter `j` acts on qubit `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    pub negative: bool,
    pub letters: Vec<Pauli>,
}

impl PauliLabel {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliLabel {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (negative, rest) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        let letters = rest
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(TableauError::InvalidLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.is_empty() {
            return Err(TableauError::InvalidLabel(s.to_string()));
        }
        Ok(PauliLabel { negative, letters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    type M2 = [[Complex64; 2]; 2];

    fn matrix(p: Pauli) -> M2 {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match p {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    fn mul(a: M2, b: M2) -> M2 {
        let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for k in 0..2 {
                c[r][k] = a[r][0] * b[0][k] + a[r][1] * b[1][k];
            }
        }
        c
    }

    const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    #[test]
    fn table_matches_matrix_products() {
        for a in ALL {
            for b in ALL {
                let product = mul(matrix(a), matrix(b));
                let (xa, za) = a.bits();
                let (xb, zb) = b.bits();
                let e = phase_exponent(xa, za, xb, zb);
                let c = Pauli::from_bits(xa ^ xb, za ^ zb);
                let scale = Complex64::i().powi(e as i32);
                let expected = matrix(c);
                for r in 0..2 {
                    for k in 0..2 {
                        assert!((product[r][k] - scale * expected[r][k]).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn word_form_agrees_with_table() {
        for idx in 0..16u64 {
            let bit = |k: u32| if idx >> k & 1 == 1 { 1u64 } else { 0 };
            let (xa, za, xb, zb) = (bit(3), bit(2), bit(1), bit(0));
            assert_eq!(
                phase_exponent_word(xa, za, xb, zb),
                PHASE_EXPONENT[idx as usize] as i32
            );
            // replicated across all 64 slots
            let spread = |v: u64| if v == 1 { u64::MAX } else { 0 };
            assert_eq!(
                phase_exponent_word(spread(xa), spread(za), spread(xb), spread(zb)),
                64 * PHASE_EXPONENT[idx as usize] as i32
            );
        }
    }

    #[test]
    fn label_text_round_trip() {
        let label: PauliLabel = "-IXYZ".parse().unwrap();
        assert!(label.negative);
        assert_eq!(label.to_string(), "-IXYZ");
        assert_eq!("ZZ".parse::<PauliLabel>().unwrap().to_string(), "+ZZ");
        assert!("+ZQ".parse::<PauliLabel>().is_err());
        assert!("+".parse::<PauliLabel>().is_err());
    }
}
