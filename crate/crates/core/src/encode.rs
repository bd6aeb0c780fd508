//! Fermion-to-qubit encodings: Jordan-Wigner, parity, and Bravyi-Kitaev.
//!
//! All three are instances of one construction. An encoding stores
//! `bits = T * occ` for an invertible GF(2) matrix T (JW: identity;
//! parity: prefix sums; Bravyi-Kitaev: Fenwick-tree partial sums). A
//! creation operator factors into a bit-flip part (the stored bits toggled
//! by flipping occupation j, i.e. column j of T) and a diagonal part
//! carrying the fermionic (-1)^(occupations below j) sign and the
//! occupation projector, both of which are Z-strings under T^-1.

use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, Spin, SpinOrder};
use crate::pauli::{PauliString, PauliSum, MAX_QUBITS};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
}

impl EncodingKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jw" | "jordan-wigner" | "jordan_wigner" => Ok(EncodingKind::JordanWigner),
            "parity" => Ok(EncodingKind::Parity),
            "bk" | "bravyi-kitaev" | "bravyi_kitaev" => Ok(EncodingKind::BravyiKitaev),
            other => Err(Error::Config(format!("unknown mapping {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EncodingKind::JordanWigner => "jw",
            EncodingKind::Parity => "parity",
            EncodingKind::BravyiKitaev => "bk",
        }
    }
}

/// An encoding instance: the GF(2) transform plus its inverse, with the
/// spin assignment needed to evaluate Sz sectors. Modes map to qubits
/// identically; mode ordering itself comes from [`SpinOrder`].
#[derive(Debug, Clone)]
pub struct Encoding {
    pub kind: EncodingKind,
    pub n_modes: usize,
    pub spin_order: SpinOrder,
    /// Row i of T as a bitmask over occupation bits: bits_i = parity(t_rows[i] & occ).
    t_rows: Vec<u64>,
    /// Row j of T^-1: occ_j = parity(t_inv_rows[j] & bits).
    t_inv_rows: Vec<u64>,
    /// Column j of T: stored bits toggled when occupation j flips.
    t_cols: Vec<u64>,
}

fn parity64(x: u64) -> u64 {
    x.count_ones() as u64 & 1
}

fn gf2_invert(rows: &[u64], n: usize) -> Option<Vec<u64>> {
    let mut a = rows.to_vec();
    let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

impl Encoding {
    pub fn new(kind: EncodingKind, n_modes: usize, spin_order: SpinOrder) -> Result<Self> {
        if n_modes == 0 || n_modes > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_modes));
        }
        let t_rows: Vec<u64> = match kind {
            EncodingKind::JordanWigner => (0..n_modes).map(|i| 1u64 << i).collect(),
            EncodingKind::Parity => (0..n_modes)
                .map(|i| {
                    if i == 63 {
                        u64::MAX
                    } else {
                        (1u64 << (i + 1)) - 1
                    }
                })
                .collect(),
            EncodingKind::BravyiKitaev => (0..n_modes)
                .map(|i| {
                    // Fenwick tree: stored bit i covers occupations
                    // [i+1-lowbit(i+1), i] in 0-based indexing.
                    let one_based = (i + 1) as u64;
                    let low = one_based & one_based.wrapping_neg();
                    let start = (one_based - low) as usize;
                    let mut row = 0u64;
                    for j in start..=i {
                        row |= 1 << j;
                    }
                    row
                })
                .collect(),
        };
        let t_inv_rows = gf2_invert(&t_rows, n_modes)
            .ok_or_else(|| Error::Config("encoding transform not invertible".into()))?;
        let t_cols = (0..n_modes)
            .map(|j| {
                let mut col = 0u64;
                for (i, &row) in t_rows.iter().enumerate() {
                    if row >> j & 1 == 1 {
                        col |= 1 << i;
                    }
                }
                col
            })
            .collect();
        Ok(Encoding {
            kind,
            n_modes,
            spin_order,
            t_rows,
            t_inv_rows,
            t_cols,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_modes
    }

    /// Stored qubit bits for a given occupation pattern.
    pub fn bits_from_occ(&self, occ: u64) -> u64 {
        let mut bits = 0u64;
        for (i, &row) in self.t_rows.iter().enumerate() {
            bits |= parity64(row & occ) << i;
        }
        bits
    }

    /// Occupation pattern decoded from stored qubit bits.
    pub fn occ_from_bits(&self, bits: u64) -> u64 {
        let mut occ = 0u64;
        for (j, &row) in self.t_inv_rows.iter().enumerate() {
            occ |= parity64(row & bits) << j;
        }
        occ
    }

    /// Stored bits that decode occupation j (a Z-string support).
    pub fn decode_mask(&self, mode: usize) -> u64 {
        self.t_inv_rows[mode]
    }

    /// Stored bits flipped when occupation j flips.
    pub fn flip_mask(&self, mode: usize) -> u64 {
        self.t_cols[mode]
    }

    /// Stored bits whose parity gives the occupation sum strictly below j.
    pub fn parity_below_mask(&self, mode: usize) -> u64 {
        self.t_inv_rows[..mode].iter().fold(0, |acc, &r| acc ^ r)
    }

    /// One ladder operator as a two-term Pauli sum.
    fn ladder_sum(&self, mode: usize, dagger: bool) -> Result<PauliSum> {
        if mode >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                index: mode,
                n_modes: self.n_modes,
            });
        }
        let n = self.n_modes;
        let flip = PauliString::from_masks(n, self.flip_mask(mode), 0, Complex64::new(0.5, 0.0))?;
        let parity =
            PauliString::from_masks(n, 0, self.parity_below_mask(mode), Complex64::new(1.0, 0.0))?;
        let proj_sign = if dagger { 1.0 } else { -1.0 };
        let proj = PauliString::from_masks(
            n,
            0,
            self.parity_below_mask(mode) ^ self.decode_mask(mode),
            Complex64::new(proj_sign, 0.0),
        )?;
        let mut sum = PauliSum::new(n)?;
        sum.add(&flip.multiply(&parity)?)?;
        sum.add(&flip.multiply(&proj)?)?;
        Ok(sum)
    }

    /// Encodes a fermionic operator into a Pauli sum.
    pub fn encode(&self, op: &FermionOperator) -> Result<PauliSum> {
        if op.n_modes != self.n_modes {
            return Err(Error::DimensionMismatch(self.n_modes, op.n_modes));
        }
        let n = self.n_modes;
        let mut out = PauliSum::new(n)?;
        for term in &op.terms {
            let mut acc = PauliSum::new(n)?;
            acc.add(&PauliString::identity(n)?.with_coeff(term.coeff))?;
            for &(mode, dagger) in &term.factors {
                acc = acc.multiply(&self.ladder_sum(mode, dagger)?)?;
            }
            out.add_sum(&acc)?;
        }
        Ok(out)
    }

    /// Particle number of a computational bitstring.
    pub fn particle_number(&self, bits: u64) -> u32 {
        self.occ_from_bits(bits).count_ones()
    }

    /// Twice the spin projection (alpha count minus beta count) of a
    /// computational bitstring.
    pub fn two_sz(&self, bits: u64, n_spatial: usize) -> i32 {
        let occ = self.occ_from_bits(bits);
        let mut sz2 = 0i32;
        for mode in 0..self.n_modes {
            if occ >> mode & 1 == 1 {
                match self.spin_order.spin_of_mode(n_spatial, mode) {
                    Spin::Alpha => sz2 += 1,
                    Spin::Beta => sz2 -= 1,
                }
            }
        }
        sz2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::LadderTerm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn term(factors: &[(usize, bool)], coeff: Complex64) -> LadderTerm {
        LadderTerm::new(factors.to_vec(), coeff)
    }

    #[test]
    fn jw_hopping_pair_coefficients() {
        // c1 a+_0 a_1 + c2 a+_1 a_0 on 2 modes ->
        //   1/4 (c1+c2)(XX + YY) + i/4 (c1-c2)(XY - YX)
        let (c1, c2) = (c(0.7, 0.3), c(-0.2, 0.5));
        let enc = Encoding::new(EncodingKind::JordanWigner, 2, SpinOrder::Blocked).unwrap();
        let op = FermionOperator::from_terms(
            2,
            vec![
                term(&[(0, true), (1, false)], c1),
                term(&[(1, true), (0, false)], c2),
            ],
        )
        .unwrap();
        let sum = enc.encode(&op).unwrap();
        let get = |label: &str| {
            let p = PauliString::from_label(label, c(1.0, 0.0)).unwrap();
            sum.get(p.x_mask(), p.z_mask()).unwrap_or(c(0.0, 0.0))
        };
        let i = c(0.0, 1.0);
        assert!((get("XX") - (c1 + c2) * 0.25).norm() < 1e-14);
        assert!((get("YY") - (c1 + c2) * 0.25).norm() < 1e-14);
        assert!((get("XY") - i * (c1 - c2) * 0.25).norm() < 1e-14);
        assert!((get("YX") + i * (c1 - c2) * 0.25).norm() < 1e-14);
        assert_eq!(sum.len(), 4);
    }

    #[test]
    fn jw_number_operator() {
        // a+_0 a_0 -> (I - Z_0)/2
        let enc = Encoding::new(EncodingKind::JordanWigner, 1, SpinOrder::Blocked).unwrap();
        let op = FermionOperator::from_terms(1, vec![term(&[(0, true), (0, false)], c(1.0, 0.0))])
            .unwrap();
        let sum = enc.encode(&op).unwrap();
        assert!((sum.get(0, 0).unwrap() - c(0.5, 0.0)).norm() < 1e-14);
        assert!((sum.get(0, 1).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn single_mode_encodings_coincide() {
        // a+_0 on one mode is (X - iY)/2 for every mapping
        for kind in [
            EncodingKind::JordanWigner,
            EncodingKind::Parity,
            EncodingKind::BravyiKitaev,
        ] {
            let enc = Encoding::new(kind, 1, SpinOrder::Blocked).unwrap();
            let op = FermionOperator::from_terms(1, vec![term(&[(0, true)], c(1.0, 0.0))]).unwrap();
            let sum = enc.encode(&op).unwrap();
            assert!((sum.get(1, 0).unwrap() - c(0.5, 0.0)).norm() < 1e-14);
            assert!((sum.get(1, 1).unwrap() - c(0.0, -0.5)).norm() < 1e-14);
        }
    }

    #[test]
    fn parity_number_operator() {
        // Under the parity map a+_1 a_1 -> (I - Z_0 Z_1)/2 on 2 modes
        let enc = Encoding::new(EncodingKind::Parity, 2, SpinOrder::Blocked).unwrap();
        let op = FermionOperator::from_terms(2, vec![term(&[(1, true), (1, false)], c(1.0, 0.0))])
            .unwrap();
        let sum = enc.encode(&op).unwrap();
        assert!((sum.get(0, 0).unwrap() - c(0.5, 0.0)).norm() < 1e-14);
        assert!((sum.get(0, 0b11).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);
        assert_eq!(sum.len(), 2);
    }

    #[test]
    fn parity_transform_roundtrip() {
        let enc = Encoding::new(EncodingKind::Parity, 5, SpinOrder::Blocked).unwrap();
        for occ in 0u64..32 {
            assert_eq!(enc.occ_from_bits(enc.bits_from_occ(occ)), occ);
        }
        // occ |11000...> stores prefix parities |11> -> wait, modes 0,1 occupied
        assert_eq!(enc.bits_from_occ(0b11), 0b01); // p0=1, p1=0, p2..=0
    }

    #[test]
    fn bk_transform_roundtrip() {
        for n in [1usize, 2, 3, 4, 5, 6, 8] {
            let enc = Encoding::new(EncodingKind::BravyiKitaev, n, SpinOrder::Blocked).unwrap();
            for occ in 0u64..(1 << n) {
                assert_eq!(enc.occ_from_bits(enc.bits_from_occ(occ)), occ);
            }
        }
    }

    #[test]
    fn sector_functions() {
        // blocked modes a0 a1 b0 b1; stored bits equal occupations under JW
        let enc = Encoding::new(EncodingKind::JordanWigner, 4, SpinOrder::Blocked).unwrap();
        let bits = crate::pauli::bits_from_label("0110").unwrap();
        assert_eq!(enc.particle_number(bits), 2);
        assert_eq!(enc.two_sz(bits, 2), 0);
        let bits = crate::pauli::bits_from_label("1100").unwrap();
        assert_eq!(enc.two_sz(bits, 2), 2);

        // parity stored |10> decodes to occupations |11>
        let enc = Encoding::new(EncodingKind::Parity, 2, SpinOrder::Blocked).unwrap();
        let bits = crate::pauli::bits_from_label("10").unwrap();
        assert_eq!(enc.occ_from_bits(bits), 0b11);
        assert_eq!(enc.particle_number(bits), 2);
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(EncodingKind::parse("ternary").is_err());
        assert_eq!(
            EncodingKind::parse("JW").unwrap(),
            EncodingKind::JordanWigner
        );
    }
}
