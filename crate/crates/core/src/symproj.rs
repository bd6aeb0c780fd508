//! Symmetry projection of Pauli strings onto symmetry-conserving subspaces
//! over their local support.
//!
//! A string that applies X/Y on a few qubits and Z elsewhere acts on the
//! local support up to a diagonal phase tail. Projecting with diagonal
//! symmetries (particle number, Sz) keeps exactly the matrix elements whose
//! row and column carry the same sector labels, which is decidable from the
//! support bits alone once the support is extended to cover the stored bits
//! that determine the flipped occupations (a no-op for Jordan-Wigner,
//! a small widening for parity/Bravyi-Kitaev).

use crate::encode::Encoding;
use crate::error::{Error, Result};
use crate::fermion::Spin;
use crate::pauli::{PauliString, PauliSum};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Entry magnitudes below this are dropped.
pub const ENTRY_TOL: f64 = 1e-12;

/// Diagonal symmetries available for projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Total particle number.
    ParticleNumber,
    /// Spin projection (alpha count minus beta count).
    SpinZ,
}

impl Symmetry {
    pub fn parse_set(s: &str) -> Result<Vec<Symmetry>> {
        let s = s.trim().to_ascii_lowercase();
        if s.is_empty() || s == "none" {
            return Ok(Vec::new());
        }
        let mut syms = Vec::new();
        for part in s.split([',', '+']) {
            match part.trim() {
                "n" => syms.push(Symmetry::ParticleNumber),
                "sz" => syms.push(Symmetry::SpinZ),
                "s2" | "s^2" => {
                    return Err(Error::UnsupportedSymmetry("S^2 (not diagonal)".into()));
                }
                other => return Err(Error::UnsupportedSymmetry(other.into())),
            }
        }
        Ok(syms)
    }

    pub fn set_label(syms: &[Symmetry]) -> String {
        if syms.is_empty() {
            return "none".into();
        }
        syms.iter()
            .map(|s| match s {
                Symmetry::ParticleNumber => "n",
                Symmetry::SpinZ => "sz",
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Split of a Pauli string into its X/Y support, the Z-only tail, and the
/// string restricted to the support.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportDecomposition {
    /// Qubits carrying X or Y, ascending.
    pub support: Vec<usize>,
    /// Qubits outside the support carrying Z.
    pub z_tail: u64,
    /// The input string restricted to the support qubits (compact register).
    pub local: PauliString,
}

/// Splits a string into X/Y support and diagonal tail. A fully diagonal
/// string is its own local operator: the support is taken to be its
/// Z-qubits and the tail is empty.
pub fn decompose_support(p: &PauliString) -> SupportDecomposition {
    let support_mask = if p.x_mask() != 0 {
        p.x_mask()
    } else {
        p.z_mask()
    };
    let support = mask_to_qubits(support_mask);
    let z_tail = p.z_mask() & !support_mask;
    let local = restrict(p, support_mask).expect("support covers x mask");
    SupportDecomposition {
        support,
        z_tail,
        local,
    }
}

fn mask_to_qubits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&q| mask >> q & 1 == 1).collect()
}

/// Compacts `full_bits` onto the set positions of `mask`.
pub fn gather_bits(full_bits: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut pos = 0;
    let mut m = mask;
    while m != 0 {
        let q = m.trailing_zeros();
        out |= (full_bits >> q & 1) << pos;
        pos += 1;
        m &= m - 1;
    }
    out
}

/// Spreads compact bits back onto the set positions of `mask`.
pub fn scatter_bits(local_bits: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut pos = 0;
    let mut m = mask;
    while m != 0 {
        let q = m.trailing_zeros();
        out |= (local_bits >> pos & 1) << q;
        pos += 1;
        m &= m - 1;
    }
    out
}

fn restrict(p: &PauliString, support_mask: u64) -> Result<PauliString> {
    if p.x_mask() & !support_mask != 0 {
        return Err(Error::SupportMismatch(format!(
            "string {} has X/Y outside support",
            p.label()
        )));
    }
    let n_local = support_mask.count_ones() as usize;
    PauliString::from_masks(
        n_local.max(1),
        gather_bits(p.x_mask(), support_mask),
        gather_bits(p.z_mask() & support_mask, support_mask),
        p.coeff,
    )
}

/// A symmetry-projected operator: sparse matrix over computational-basis
/// bitstring pairs on a local support, with a diagonal Z tail carried as an
/// opaque common factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedOperator {
    pub n_qubits: usize,
    /// Support qubits, ascending. Entry bitstrings are compact over these,
    /// first support qubit = bit 0.
    pub support: Vec<usize>,
    pub z_tail: u64,
    /// (row bits, col bits) -> amplitude.
    pub entries: BTreeMap<(u64, u64), Complex64>,
}

impl ProjectedOperator {
    pub fn support_mask(&self) -> u64 {
        self.support.iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn insert(&mut self, row: u64, col: u64, amp: Complex64) {
        let entry = self
            .entries
            .entry((row, col))
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += amp;
        if entry.norm() < ENTRY_TOL {
            self.entries.remove(&(row, col));
        }
    }
}

/// Projection context: the encoding fixes how stored bits decode to
/// occupations, `n_spatial` fixes the spin assignment for Sz.
#[derive(Debug, Clone)]
pub struct Projector<'a> {
    pub encoding: &'a Encoding,
    pub n_spatial: usize,
    pub symmetries: Vec<Symmetry>,
}

impl<'a> Projector<'a> {
    pub fn new(encoding: &'a Encoding, n_spatial: usize, symmetries: &[Symmetry]) -> Self {
        Projector {
            encoding,
            n_spatial,
            symmetries: symmetries.to_vec(),
        }
    }

    /// Minimal qubit set on which the sector change caused by flipping the
    /// stored bits `x_mask` is determined: the flipped qubits plus the
    /// decode masks of every occupation they toggle.
    pub fn sector_extension(&self, x_mask: u64) -> u64 {
        if x_mask == 0 {
            return 0;
        }
        let flipped_modes = self.encoding.occ_from_bits(x_mask);
        let mut ext = x_mask;
        for mode in 0..self.encoding.n_modes {
            if flipped_modes >> mode & 1 == 1 {
                ext |= self.encoding.decode_mask(mode);
            }
        }
        ext
    }

    /// Support a whole term sum must share: the union of X/Y supports with
    /// their sector extensions, plus every qubit whose Z content differs
    /// between terms.
    pub fn shared_support(&self, terms: &PauliSum) -> u64 {
        let mut sup = 0u64;
        let mut z_and = u64::MAX;
        let mut z_or = 0u64;
        let mut any = false;
        for t in terms.iter() {
            sup |= self.sector_extension(t.x_mask());
            z_and &= t.z_mask();
            z_or |= t.z_mask();
            any = true;
        }
        if !any {
            return 0;
        }
        sup | (z_or & !z_and)
    }

    /// Decode masks of the occupations toggled by flipping `x_mask`,
    /// without the flipped qubits themselves.
    fn decode_extension(&self, x_mask: u64) -> u64 {
        if x_mask == 0 {
            return 0;
        }
        let flipped_modes = self.encoding.occ_from_bits(x_mask);
        let mut ext = 0u64;
        for mode in 0..self.encoding.n_modes {
            if flipped_modes >> mode & 1 == 1 {
                ext |= self.encoding.decode_mask(mode);
            }
        }
        ext
    }

    /// Minimal support sufficient for rank and coefficient computations
    /// over a term family that shares one X mask: the bits deciding sector
    /// conservation plus the bits where Z content varies. Outside this set
    /// every term acts as one common tensor factor, which cancels from the
    /// linear algebra. Under Jordan-Wigner this equals [`Self::shared_support`];
    /// for parity/Bravyi-Kitaev it is much narrower than the X support.
    pub fn reduction_support(&self, terms: &PauliSum) -> Result<u64> {
        let mut x_common: Option<u64> = None;
        let mut z_and = u64::MAX;
        let mut z_or = 0u64;
        let mut sup = 0u64;
        for t in terms.iter() {
            match x_common {
                None => x_common = Some(t.x_mask()),
                Some(x) if x == t.x_mask() => {}
                Some(_) => {
                    // Mixed X patterns: fall back to the full shared support.
                    return Ok(self.shared_support(terms));
                }
            }
            sup |= self.decode_extension(t.x_mask());
            z_and &= t.z_mask();
            z_or |= t.z_mask();
        }
        if x_common.is_none() {
            return Ok(0);
        }
        Ok(sup | (z_or & !z_and))
    }

    /// Projects a string onto a support that may exclude part of its X
    /// mask. The excluded action is a tensor factor shared by every string
    /// with the same X mask and the same Z content outside the support; the
    /// returned entries omit that factor, so they are only meaningful
    /// relative to other strings projected the same way. Sector
    /// conservation is still decided exactly (from the full X mask).
    pub fn project_masked(&self, p: &PauliString, support_mask: u64) -> Result<ProjectedOperator> {
        if self.decode_extension(p.x_mask()) & !support_mask != 0 {
            return Err(Error::SupportMismatch(format!(
                "support does not determine the sector change of {}",
                p.label()
            )));
        }
        let mut out = ProjectedOperator {
            n_qubits: p.n_qubits(),
            support: mask_to_qubits(support_mask),
            z_tail: p.z_mask() & !support_mask,
            entries: BTreeMap::new(),
        };
        let n_local = support_mask.count_ones() as usize;
        let local = PauliString::from_masks(
            n_local.max(1),
            gather_bits(p.x_mask() & support_mask, support_mask),
            gather_bits(p.z_mask() & support_mask, support_mask),
            p.coeff,
        )?;
        for col in 0..(1u64 << n_local) {
            if !self.conserves(p.x_mask(), support_mask, col) {
                continue;
            }
            let (row, amp) = local.basis_action(col)?;
            if amp.norm() >= ENTRY_TOL {
                out.insert(row, col, amp);
            }
        }
        Ok(out)
    }

    /// Sector change of every active symmetry when the stored bits
    /// `x_mask` flip, evaluated at support configuration `col_local`.
    /// Returns true when all sectors are conserved.
    fn conserves(&self, x_mask: u64, support_mask: u64, col_local: u64) -> bool {
        if x_mask == 0 {
            return true;
        }
        let full = scatter_bits(col_local, support_mask);
        let flipped_modes = self.encoding.occ_from_bits(x_mask);
        let mut dn = 0i32;
        let mut dsz = 0i32;
        for mode in 0..self.encoding.n_modes {
            if flipped_modes >> mode & 1 == 1 {
                let occ = (self.encoding.decode_mask(mode) & full).count_ones() % 2;
                let delta = 1 - 2 * occ as i32;
                dn += delta;
                match self.encoding.spin_order.spin_of_mode(self.n_spatial, mode) {
                    Spin::Alpha => dsz += delta,
                    Spin::Beta => dsz -= delta,
                }
            }
        }
        self.symmetries.iter().all(|s| match s {
            Symmetry::ParticleNumber => dn == 0,
            Symmetry::SpinZ => dsz == 0,
        })
    }

    /// Projects one string onto its own (extended) support.
    pub fn project(&self, p: &PauliString) -> Result<ProjectedOperator> {
        let base = if p.x_mask() != 0 {
            self.sector_extension(p.x_mask())
        } else {
            p.z_mask()
        };
        self.project_on(p, base)
    }

    /// Projects one string on an explicitly shared support.
    pub fn project_on(&self, p: &PauliString, support_mask: u64) -> Result<ProjectedOperator> {
        let ext = self.sector_extension(p.x_mask());
        if ext & !support_mask != 0 {
            return Err(Error::SupportMismatch(format!(
                "support does not determine the sector change of {}",
                p.label()
            )));
        }
        let mut out = ProjectedOperator {
            n_qubits: p.n_qubits(),
            support: mask_to_qubits(support_mask),
            z_tail: p.z_mask() & !support_mask,
            entries: BTreeMap::new(),
        };
        let local = restrict(p, support_mask)?;
        let n_local = support_mask.count_ones();
        for col in 0..(1u64 << n_local) {
            if !self.conserves(p.x_mask(), support_mask, col) {
                continue;
            }
            let (row, amp) = local.basis_action(col)?;
            if amp.norm() >= ENTRY_TOL {
                out.insert(row, col, amp);
            }
        }
        Ok(out)
    }

    /// Projects a term sum onto the union support; all terms must share a
    /// common diagonal tail outside it.
    pub fn project_sum(&self, s: &PauliSum) -> Result<ProjectedOperator> {
        let support_mask = self.shared_support(s);
        self.project_sum_on(s, support_mask)
    }

    pub fn project_sum_on(&self, s: &PauliSum, support_mask: u64) -> Result<ProjectedOperator> {
        let mut out = ProjectedOperator {
            n_qubits: s.n_qubits(),
            support: mask_to_qubits(support_mask),
            z_tail: 0,
            entries: BTreeMap::new(),
        };
        let mut tail: Option<u64> = None;
        for term in s.iter() {
            let term_tail = term.z_mask() & !support_mask;
            match tail {
                None => tail = Some(term_tail),
                Some(t) if t == term_tail => {}
                Some(t) => {
                    return Err(Error::SupportMismatch(format!(
                        "terms carry different Z tails outside the support ({:b} vs {:b})",
                        t, term_tail
                    )))
                }
            }
            let proj = self.project_on(&term, support_mask)?;
            for (&(row, col), &amp) in &proj.entries {
                out.insert(row, col, amp);
            }
        }
        out.z_tail = tail.unwrap_or(0);
        Ok(out)
    }
}
