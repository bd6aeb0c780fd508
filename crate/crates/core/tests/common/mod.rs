//! Dense test oracles built independently of the bit-packed operator
//! algebra: Pauli matrices assembled by Kronecker products of 2x2
//! constants, and random states confined to symmetry sectors.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use spt_core::dense::{CMatrix, ONE, ZERO};
use spt_core::pauli::PauliString;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_2x2(letter: char) -> CMatrix {
    let i = c(0.0, 1.0);
    match letter {
        'I' => CMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, ONE]]),
        'X' => CMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        'Y' => CMatrix::from_rows(&[&[ZERO, -i], &[i, ZERO]]),
        'Z' => CMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        _ => panic!("bad letter {letter}"),
    }
}

/// Dense matrix of a Pauli string. Qubit 0 is the least significant bit of
/// the basis index, so the Kronecker product runs from the highest qubit
/// down.
pub fn dense_pauli(p: &PauliString) -> CMatrix {
    let label: Vec<char> = p.label().chars().collect();
    let mut m = CMatrix::identity(1);
    for q in (0..p.n_qubits()).rev() {
        m = m.kron(&pauli_2x2(label[q]));
    }
    m.scale(p.coeff)
}

pub fn dense_from_label(label: &str) -> CMatrix {
    dense_pauli(&PauliString::from_label(label, ONE).unwrap())
}

/// Random state supported on the bitstrings with the given particle number
/// and (2x) spin projection under Jordan-Wigner blocked ordering with
/// `n_spatial` alpha modes first.
pub fn random_sector_state<R: Rng>(
    n_qubits: usize,
    n_spatial: usize,
    n_particles: u32,
    two_sz: i32,
    rng: &mut R,
) -> Vec<Complex64> {
    let dim = 1usize << n_qubits;
    let mut state = vec![ZERO; dim];
    let mut norm2 = 0.0;
    for b in 0..dim as u64 {
        if b.count_ones() != n_particles {
            continue;
        }
        let alpha = (b & ((1 << n_spatial) - 1)).count_ones() as i32;
        let beta = n_particles as i32 - alpha;
        if alpha - beta != two_sz {
            continue;
        }
        let amp = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        norm2 += amp.norm_sqr();
        state[b as usize] = amp;
    }
    assert!(norm2 > 0.0, "empty sector (N={n_particles}, 2Sz={two_sz})");
    let norm = norm2.sqrt();
    for a in &mut state {
        *a /= c(norm, 0.0);
    }
    state
}

pub fn expectation(state: &[Complex64], m: &CMatrix) -> Complex64 {
    let mv = m.apply(state);
    state.iter().zip(&mv).map(|(s, v)| s.conj() * v).sum()
}

/// Rank of a set of complex vectors by Gaussian elimination with partial
/// pivoting (independent of the library's Gram-Schmidt path).
pub fn elimination_rank(vectors: &[Vec<Complex64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Complex64>> = vectors.to_vec();
    let cols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows.len() && col < cols {
        let (pivot_row, pivot_mag) = (rank..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if pivot_mag < tol {
            col += 1;
            continue;
        }
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col];
        for r in 0..rows.len() {
            if r != rank {
                let factor = rows[r][col] / pivot;
                if factor.norm() > 0.0 {
                    for k in col..cols {
                        let sub = factor * rows[rank][k];
                        rows[r][k] -= sub;
                    }
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}
