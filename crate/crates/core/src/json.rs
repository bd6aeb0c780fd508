//! JSON wire forms shared by the library and the CLI.

use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, LadderTerm};
use crate::pauli::{bits_from_label, bits_label, PauliString, PauliSum};
use crate::reduce::ReducedBasis;
use crate::symproj::ProjectedOperator;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PauliTermJson {
    /// One letter per qubit, leftmost = qubit 0.
    pub string: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PauliSumJson {
    pub n_qubits: usize,
    pub terms: Vec<PauliTermJson>,
}

impl From<&PauliSum> for PauliSumJson {
    fn from(sum: &PauliSum) -> Self {
        PauliSumJson {
            n_qubits: sum.n_qubits(),
            terms: sum
                .iter()
                .map(|p| PauliTermJson {
                    string: p.label(),
                    re: p.coeff.re,
                    im: p.coeff.im,
                })
                .collect(),
        }
    }
}

impl PauliSumJson {
    pub fn to_sum(&self) -> Result<PauliSum> {
        let mut sum = PauliSum::new(self.n_qubits)?;
        for t in &self.terms {
            if t.string.len() != self.n_qubits {
                return Err(Error::Config(format!(
                    "term {:?} does not match n_qubits = {}",
                    t.string, self.n_qubits
                )));
            }
            sum.add(&PauliString::from_label(
                &t.string,
                Complex64::new(t.re, t.im),
            )?)?;
        }
        Ok(sum)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FermionTermJson {
    /// Factors in operator order; modes are 0-based, "+" marks a creation.
    pub factors: Vec<(usize, String)>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FermionOperatorJson {
    pub n_modes: usize,
    pub terms: Vec<FermionTermJson>,
}

impl From<&FermionOperator> for FermionOperatorJson {
    fn from(op: &FermionOperator) -> Self {
        FermionOperatorJson {
            n_modes: op.n_modes,
            terms: op
                .terms
                .iter()
                .map(|t| FermionTermJson {
                    factors: t
                        .factors
                        .iter()
                        .map(|&(m, dag)| (m, if dag { "+" } else { "-" }.to_string()))
                        .collect(),
                    re: t.coeff.re,
                    im: t.coeff.im,
                })
                .collect(),
        }
    }
}

impl FermionOperatorJson {
    pub fn to_operator(&self) -> Result<FermionOperator> {
        let mut op = FermionOperator::new(self.n_modes);
        for t in &self.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for (mode, sign) in &t.factors {
                let dagger = match sign.as_str() {
                    "+" => true,
                    "-" => false,
                    other => {
                        return Err(Error::Config(format!("bad ladder sign {other:?}")));
                    }
                };
                factors.push((*mode, dagger));
            }
            op.add_term(LadderTerm::new(factors, Complex64::new(t.re, t.im)))?;
        }
        Ok(op)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProjectedEntryJson {
    pub row: String,
    pub col: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProjectedOperatorJson {
    pub support: Vec<usize>,
    pub z_tail: Vec<usize>,
    pub entries: Vec<ProjectedEntryJson>,
}

impl From<&ProjectedOperator> for ProjectedOperatorJson {
    fn from(op: &ProjectedOperator) -> Self {
        let width = op.support.len();
        ProjectedOperatorJson {
            support: op.support.clone(),
            z_tail: (0..64).filter(|&q| op.z_tail >> q & 1 == 1).collect(),
            entries: op
                .entries
                .iter()
                .map(|(&(row, col), amp)| ProjectedEntryJson {
                    row: bits_label(row, width),
                    col: bits_label(col, width),
                    re: amp.re,
                    im: amp.im,
                })
                .collect(),
        }
    }
}

impl ProjectedOperatorJson {
    pub fn entry(&self, row: &str, col: &str) -> Option<Complex64> {
        self.entries
            .iter()
            .find(|e| e.row == row && e.col == col)
            .map(|e| Complex64::new(e.re, e.im))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoeffJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TargetJson {
    pub id: usize,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReducedBasisJson {
    pub measurements: Vec<PauliTermJson>,
    pub targets: Vec<TargetJson>,
}

impl From<&ReducedBasis> for ReducedBasisJson {
    fn from(basis: &ReducedBasis) -> Self {
        ReducedBasisJson {
            measurements: basis
                .measurements
                .iter()
                .map(|p| PauliTermJson {
                    string: p.label(),
                    re: p.coeff.re,
                    im: p.coeff.im,
                })
                .collect(),
            targets: basis
                .targets
                .iter()
                .map(|t| TargetJson {
                    id: t.id,
                    coeffs: t
                        .coeffs
                        .iter()
                        .map(|x| CoeffJson { re: x.re, im: x.im })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses a bitstring entry key back into compact support bits.
pub fn parse_bits(label: &str) -> Result<u64> {
    bits_from_label(label)
}
