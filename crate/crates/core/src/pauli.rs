//! Bit-packed Pauli-string algebra.
//!
//! A Pauli string is stored as a pair of 64-bit masks: `x` has a bit set
//! wherever the string carries X or Y, `z` wherever it carries Z or Y.
//! The stored coefficient multiplies the literal tensor product of
//! {I, X, Y, Z} matrices, with Y = [[0, -i], [i, 0]]; no implicit powers
//! of i are hidden in the masks. Bit index 0 is the first (leftmost)
//! qubit in string labels such as `"XYZI"`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Masks are single 64-bit words, which caps the register size.
pub const MAX_QUBITS: usize = 64;

/// Coefficients below this magnitude are treated as zero.
pub const PRUNE_TOL: f64 = 1e-12;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// A Pauli string with a complex coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    pub coeff: Complex64,
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    Ok(())
}

fn mask(n_qubits: usize) -> u64 {
    if n_qubits == 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

/// i^k for k taken mod 4.
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    /// Identity string with coefficient 1.
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        Ok(PauliString {
            n_qubits,
            x: 0,
            z: 0,
            coeff: Complex64::new(1.0, 0.0),
        })
    }

    pub fn from_masks(n_qubits: usize, x: u64, z: u64, coeff: Complex64) -> Result<Self> {
        check_width(n_qubits)?;
        let m = mask(n_qubits);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::TooManyQubits(n_qubits));
        }
        Ok(PauliString {
            n_qubits,
            x,
            z,
            coeff,
        })
    }

    /// Parses a label such as `"XIZY"`; the first character is qubit 0.
    pub fn from_label(label: &str, coeff: Complex64) -> Result<Self> {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut n = 0usize;
        for (q, c) in label.chars().enumerate() {
            let letter = Letter::from_char(c)
                .ok_or_else(|| Error::Config(format!("bad pauli letter {c:?} in {label:?}")))?;
            match letter {
                Letter::I => {}
                Letter::X => x |= 1 << q,
                Letter::Y => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                Letter::Z => z |= 1 << q,
            }
            n = q + 1;
        }
        Self::from_masks(n, x, z, coeff)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn label(&self) -> String {
        (0..self.n_qubits)
            .map(|q| self.letter(q).to_char())
            .collect()
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Qubits where the string is not the identity.
    pub fn nontrivial_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn with_coeff(mut self, coeff: Complex64) -> Self {
        self.coeff = coeff;
        self
    }

    /// Product `self * other` with the accumulated phase folded into the
    /// coefficient, so the result is again a plain {I,X,Y,Z} tensor.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        // Write each factor as i^y X^x Z^z with y = |x & z|, commute
        // Z^z1 past X^x2 (sign (-1)^{|z1 & x2|}), then renormalize the
        // i-power for the product's own Y count.
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let y1 = self.y_count();
        let y2 = other.y_count();
        let y12 = (x & z).count_ones();
        let sign_swaps = (self.z & other.x).count_ones();
        let phase = i_pow(y1 + y2 + 2 * sign_swaps + 4 - (y12 % 4));
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            coeff: self.coeff * other.coeff * phase,
        })
    }

    /// True iff the strings commute letter-by-letter: on every qubit where
    /// both are non-identity, the letters agree.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(qwc_masks(self.x, self.z, other.x, other.z))
    }

    /// Action on a computational basis state: returns `(b_out, amp)` with
    /// `<b_out|P|b> = amp` and all other matrix elements in column `b` zero.
    pub fn basis_action(&self, b: u64) -> Result<(u64, Complex64)> {
        if b & !mask(self.n_qubits) != 0 {
            return Err(Error::DimensionMismatch(
                self.n_qubits,
                64 - b.leading_zeros() as usize,
            ));
        }
        let b_out = b ^ self.x;
        let sign = (self.z & b).count_ones();
        let amp = self.coeff * i_pow(self.y_count() + 2 * sign);
        Ok((b_out, amp))
    }
}

/// Qubit-wise commutation test on raw masks (hot path for graph building).
#[inline]
pub fn qwc_masks(x1: u64, z1: u64, x2: u64, z2: u64) -> bool {
    let overlap = (x1 | z1) & (x2 | z2);
    ((x1 ^ x2) | (z1 ^ z2)) & overlap == 0
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:+.4}{:+.4}i)*{}",
            self.coeff.re,
            self.coeff.im,
            self.label()
        )
    }
}

/// A sum of Pauli strings with merged coefficients.
///
/// Terms are keyed by `(x, z)` masks in a sorted map so iteration order is
/// deterministic; coefficients below [`PRUNE_TOL`] are dropped on insert.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        Ok(PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, p: &PauliString) -> Result<()> {
        if p.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch(self.n_qubits, p.n_qubits));
        }
        let entry = self
            .terms
            .entry((p.x, p.z))
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += p.coeff;
        if entry.norm() < PRUNE_TOL {
            self.terms.remove(&(p.x, p.z));
        }
        Ok(())
    }

    pub fn add_sum(&mut self, other: &PauliSum) -> Result<()> {
        for p in other.iter() {
            self.add(&p)?;
        }
        Ok(())
    }

    pub fn scale(&mut self, factor: Complex64) {
        if factor.norm() < PRUNE_TOL {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= factor;
        }
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    /// Product of two sums, expanding term by term.
    pub fn multiply(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        let mut out = PauliSum::new(self.n_qubits)?;
        for p in self.iter() {
            for q in other.iter() {
                out.add(&p.multiply(&q)?)?;
            }
        }
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(|(&(x, z), &coeff)| PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            coeff,
        })
    }

    pub fn get(&self, x: u64, z: u64) -> Option<Complex64> {
        self.terms.get(&(x, z)).copied()
    }

    /// Hermitian conjugate: each Pauli string is self-adjoint, so only the
    /// coefficients conjugate.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(&k, &c)| (k, c.conj())).collect(),
        }
    }

    /// True when every coefficient is real to within the prune tolerance.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() < PRUNE_TOL)
    }
}

pub fn single(n_qubits: usize, qubit: usize, letter: Letter) -> Result<PauliString> {
    check_width(n_qubits)?;
    if qubit >= n_qubits {
        return Err(Error::ModeOutOfRange {
            index: qubit,
            n_modes: n_qubits,
        });
    }
    let (x, z) = match letter {
        Letter::I => (0, 0),
        Letter::X => (1 << qubit, 0),
        Letter::Y => (1 << qubit, 1 << qubit),
        Letter::Z => (0, 1 << qubit),
    };
    PauliString::from_masks(n_qubits, x, z, Complex64::new(1.0, 0.0))
}

/// Formats a basis bitstring with qubit 0 leftmost, e.g. 0b01 -> "10".
pub fn bits_label(bits: u64, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if bits >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bitstring written with qubit 0 leftmost.
pub fn bits_from_label(label: &str) -> Result<u64> {
    let mut bits = 0u64;
    for (q, c) in label.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << q,
            _ => return Err(Error::Config(format!("bad bitstring {label:?}"))),
        }
    }
    Ok(bits)
}
