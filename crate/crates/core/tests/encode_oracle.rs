//! Encoding correctness against the Fock-space oracle: every mapping must
//! equal the occupation-basis ladder matrix conjugated by its bit
//! relabeling, and the canonical anticommutation relations must hold.

mod common;

use common::{c, dense_pauli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spt_core::dense::{ladder_product_matrix, CMatrix, ONE};
use spt_core::encode::{Encoding, EncodingKind};
use spt_core::fermion::{hermitian_components, FermionOperator, LadderTerm, SpinOrder};

const KINDS: [EncodingKind; 3] = [
    EncodingKind::JordanWigner,
    EncodingKind::Parity,
    EncodingKind::BravyiKitaev,
];

fn dense_sum(sum: &spt_core::pauli::PauliSum) -> CMatrix {
    let dim = 1usize << sum.n_qubits();
    let mut m = CMatrix::zeros(dim, dim);
    for p in sum.iter() {
        m = m.add(&dense_pauli(&p));
    }
    m
}

/// Occupation-basis matrix of a fermionic operator, conjugated into the
/// encoding's stored-bit basis by the permutation |occ> -> |T occ>.
fn fock_matrix_in_encoding(op: &FermionOperator, enc: &Encoding) -> CMatrix {
    let dim = 1usize << op.n_modes;
    let mut m = CMatrix::zeros(dim, dim);
    for term in &op.terms {
        m = m.add(&ladder_product_matrix(
            op.n_modes,
            &term.factors,
            term.coeff,
        ));
    }
    let mut conjugated = CMatrix::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            let r = enc.bits_from_occ(row as u64) as usize;
            let cidx = enc.bits_from_occ(col as u64) as usize;
            conjugated[(r, cidx)] = m[(row, col)];
        }
    }
    conjugated
}

fn random_operator<R: Rng>(n_modes: usize, n_terms: usize, rng: &mut R) -> FermionOperator {
    let mut op = FermionOperator::new(n_modes);
    for _ in 0..n_terms {
        let len = rng.gen_range(1..=4);
        let factors: Vec<(usize, bool)> = (0..len)
            .map(|_| (rng.gen_range(0..n_modes), rng.gen_bool(0.5)))
            .collect();
        let coeff = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        op.add_term(LadderTerm::new(factors, coeff)).unwrap();
    }
    op
}

#[test]
fn encodings_match_the_fock_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n_modes in 1..=5 {
        for kind in KINDS {
            let enc = Encoding::new(kind, n_modes, SpinOrder::Blocked).unwrap();
            for _ in 0..8 {
                let op = random_operator(n_modes, 3, &mut rng);
                let encoded = dense_sum(&enc.encode(&op).unwrap());
                let oracle = fock_matrix_in_encoding(&op, &enc);
                assert!(
                    encoded.max_abs_diff(&oracle) < 1e-12,
                    "{kind:?} on {n_modes} modes"
                );
            }
        }
    }
}

#[test]
fn anticommutation_relations() {
    for n_modes in 2..=5 {
        for kind in KINDS {
            let enc = Encoding::new(kind, n_modes, SpinOrder::Blocked).unwrap();
            let ladder = |mode: usize, dagger: bool| {
                let op = FermionOperator::from_terms(
                    n_modes,
                    vec![LadderTerm::new(vec![(mode, dagger)], ONE)],
                )
                .unwrap();
                dense_sum(&enc.encode(&op).unwrap())
            };
            for p in 0..n_modes {
                for q in 0..n_modes {
                    let ap = ladder(p, false);
                    let aq = ladder(q, false);
                    let aq_dag = ladder(q, true);
                    // {a_p, a_q} = 0
                    let anti = ap.mul(&aq).add(&aq.mul(&ap));
                    assert!(anti.frobenius_norm() < 1e-12, "{kind:?} a{p} a{q}");
                    // {a_p, a+_q} = delta_pq I
                    let anti = ap.mul(&aq_dag).add(&aq_dag.mul(&ap));
                    let expect = if p == q {
                        CMatrix::identity(1 << n_modes)
                    } else {
                        CMatrix::zeros(1 << n_modes, 1 << n_modes)
                    };
                    assert!(anti.max_abs_diff(&expect) < 1e-12, "{kind:?} a{p} a+{q}");
                }
            }
        }
    }
}

#[test]
fn encodings_share_eigenvalue_multisets() {
    // Hermitian combinations have identical spectra under every mapping.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n_modes in 2..=5 {
        for _ in 0..4 {
            let op = random_operator(n_modes, 2, &mut rng);
            let (re, _) = hermitian_components(
                &FermionOperator::from_terms(n_modes, vec![op.terms[0].clone()]).unwrap(),
            );
            let spectra: Vec<Vec<f64>> = KINDS
                .iter()
                .map(|&kind| {
                    let enc = Encoding::new(kind, n_modes, SpinOrder::Blocked).unwrap();
                    let m = dense_sum(&enc.encode(&re).unwrap());
                    let (vals, _) = spt_core::dense::hermitian_eigen(&m);
                    vals
                })
                .collect();
            for other in &spectra[1..] {
                for (a, b) in spectra[0].iter().zip(other) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn hermitian_combinations_encode_real() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for kind in KINDS {
        let enc = Encoding::new(kind, 4, SpinOrder::Blocked).unwrap();
        for _ in 0..10 {
            let op = FermionOperator::from_terms(
                4,
                vec![random_operator(4, 1, &mut rng).terms[0].clone()],
            )
            .unwrap();
            let (re, im) = hermitian_components(&op);
            assert!(enc.encode(&re).unwrap().is_real());
            if !im.is_empty() {
                assert!(enc.encode(&im).unwrap().is_real());
            }
        }
    }
}

#[test]
fn sector_labels_invert_the_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for kind in KINDS {
        let n_modes = 6;
        let enc = Encoding::new(kind, n_modes, SpinOrder::Blocked).unwrap();
        for _ in 0..50 {
            let occ: u64 = rng.gen_range(0..(1 << n_modes));
            let bits = enc.bits_from_occ(occ);
            assert_eq!(enc.particle_number(bits), occ.count_ones());
            let alpha = (occ & 0b111).count_ones() as i32;
            let beta = (occ >> 3).count_ones() as i32;
            assert_eq!(enc.two_sz(bits, 3), alpha - beta);
        }
    }
}
