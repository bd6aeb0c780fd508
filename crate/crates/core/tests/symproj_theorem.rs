//! The projection theorem: on any state confined to a single (N, Sz)
//! sector, the expectation of a Pauli string equals that of its projected
//! form, and the projected operator is exactly the sector-blocked part of
//! the original.

mod common;

use common::{c, dense_pauli, expectation, random_sector_state};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spt_core::dense::CMatrix;
use spt_core::encode::{Encoding, EncodingKind};
use spt_core::fermion::SpinOrder;
use spt_core::pauli::PauliString;
use spt_core::symproj::{decompose_support, scatter_bits, ProjectedOperator, Projector, Symmetry};

/// Dense full-register embedding of a projected operator: the sparse local
/// entries scattered onto the support qubits, tensored with the Z tail and
/// identity elsewhere.
fn embed(op: &ProjectedOperator) -> CMatrix {
    let dim = 1usize << op.n_qubits;
    let support_mask = op.support_mask();
    let free_mask = !(support_mask) & ((1u64 << op.n_qubits) - 1);
    let mut m = CMatrix::zeros(dim, dim);
    for (&(row_loc, col_loc), &amp) in &op.entries {
        let row_base = scatter_bits(row_loc, support_mask);
        let col_base = scatter_bits(col_loc, support_mask);
        // enumerate the free bits; the tail contributes its sign there
        let mut free = 0u64;
        loop {
            let sign = if (op.z_tail & free).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            m[((row_base | free) as usize, (col_base | free) as usize)] += amp * c(sign, 0.0);
            // next subset of free_mask
            free = free.wrapping_sub(free_mask) & free_mask;
            if free == 0 {
                break;
            }
        }
    }
    m
}

fn random_string<R: Rng>(n_qubits: usize, rng: &mut R) -> PauliString {
    let max = (1u64 << n_qubits) - 1;
    PauliString::from_masks(
        n_qubits,
        rng.gen_range(0..=max),
        rng.gen_range(0..=max),
        c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
    )
    .unwrap()
}

#[test]
fn expectation_preserved_on_sector_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n_qubits in [4usize, 6] {
        let n_spatial = n_qubits / 2;
        let enc = Encoding::new(EncodingKind::JordanWigner, n_qubits, SpinOrder::Blocked).unwrap();
        let projector = Projector::new(
            &enc,
            n_spatial,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        );
        for _ in 0..40 {
            let n_particles = rng.gen_range(1..n_qubits as u32);
            let max_alpha = n_particles.min(n_spatial as u32);
            let alpha = rng.gen_range(n_particles.saturating_sub(n_spatial as u32)..=max_alpha);
            let two_sz = 2 * alpha as i32 - n_particles as i32;
            let state = random_sector_state(n_qubits, n_spatial, n_particles, two_sz, &mut rng);
            let p = random_string(n_qubits, &mut rng);
            let direct = expectation(&state, &dense_pauli(&p));
            let projected = expectation(&state, &embed(&projector.project(&p).unwrap()));
            assert!(
                (direct - projected).norm() < 1e-10,
                "string {} on {n_qubits} qubits: {direct} vs {projected}",
                p.label()
            );
        }
    }
}

#[test]
fn projection_is_the_sector_blocked_part() {
    // Stronger than expectation preservation: the embedded projected
    // operator equals sum_s P_s A P_s built from explicit projectors.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n_qubits = 4;
    let n_spatial = 2;
    let enc = Encoding::new(EncodingKind::JordanWigner, n_qubits, SpinOrder::Blocked).unwrap();
    for syms in [
        vec![Symmetry::ParticleNumber],
        vec![Symmetry::ParticleNumber, Symmetry::SpinZ],
    ] {
        let projector = Projector::new(&enc, n_spatial, &syms);
        for _ in 0..25 {
            let p = random_string(n_qubits, &mut rng);
            let dense = dense_pauli(&p);
            let dim = 1usize << n_qubits;
            // explicit sector projectors over full-register labels
            let label = |b: u64| -> (u32, i32) {
                let n = b.count_ones();
                let alpha = (b & 0b11).count_ones() as i32;
                let beta = (b >> 2).count_ones() as i32;
                let sz = alpha - beta;
                match syms.len() {
                    1 => (n, 0),
                    _ => (n, sz),
                }
            };
            let mut blocked = CMatrix::zeros(dim, dim);
            for row in 0..dim {
                for col in 0..dim {
                    if label(row as u64) == label(col as u64) {
                        blocked[(row, col)] = dense[(row, col)];
                    }
                }
            }
            let embedded = embed(&projector.project(&p).unwrap());
            assert!(
                embedded.max_abs_diff(&blocked) < 1e-12,
                "string {}",
                p.label()
            );
        }
    }
}

#[test]
fn projection_is_idempotent() {
    // Re-project the embedded projected operator through its dense Pauli
    // expansion; nothing further may be removed.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n_qubits = 3;
    let enc = Encoding::new(EncodingKind::JordanWigner, n_qubits, SpinOrder::Blocked).unwrap();
    let projector = Projector::new(&enc, n_qubits, &[Symmetry::ParticleNumber]);
    let dim = 1usize << n_qubits;
    for _ in 0..10 {
        let p = random_string(n_qubits, &mut rng);
        let once = embed(&projector.project(&p).unwrap());
        // Pauli decomposition of `once` via trace inner products
        let mut twice = CMatrix::zeros(dim, dim);
        for x in 0..(1u64 << n_qubits) {
            for z in 0..(1u64 << n_qubits) {
                let basis = PauliString::from_masks(n_qubits, x, z, c(1.0, 0.0)).unwrap();
                let dense_b = dense_pauli(&basis);
                let coeff = dense_b.adjoint().mul(&once).trace() / c(dim as f64, 0.0);
                if coeff.norm() < 1e-13 {
                    continue;
                }
                let reproj = projector.project(&basis.with_coeff(coeff)).unwrap();
                twice = twice.add(&embed(&reproj));
            }
        }
        assert!(twice.max_abs_diff(&once) < 1e-10);
    }
}

#[test]
fn projection_contracts_amplitudes() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let enc = Encoding::new(EncodingKind::JordanWigner, 5, SpinOrder::Blocked).unwrap();
    let projector = Projector::new(&enc, 5, &[Symmetry::ParticleNumber]);
    for _ in 0..50 {
        let p = random_string(5, &mut rng);
        let proj = projector.project(&p).unwrap();
        for amp in proj.entries.values() {
            assert!(amp.norm() <= p.coeff.norm() + 1e-12);
        }
    }
}

#[test]
fn entries_never_cross_sectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in [
        EncodingKind::JordanWigner,
        EncodingKind::Parity,
        EncodingKind::BravyiKitaev,
    ] {
        let n_qubits = 4;
        let n_spatial = 2;
        let enc = Encoding::new(kind, n_qubits, SpinOrder::Blocked).unwrap();
        let projector = Projector::new(
            &enc,
            n_spatial,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        );
        for _ in 0..30 {
            let p = random_string(n_qubits, &mut rng);
            let proj = projector.project(&p).unwrap();
            let support_mask = proj.support_mask();
            for &(row, col) in proj.entries.keys() {
                // scatter to the full register (free bits zero) and decode
                let r = scatter_bits(row, support_mask);
                let cbits = scatter_bits(col, support_mask);
                assert_eq!(enc.particle_number(r), enc.particle_number(cbits));
                assert_eq!(enc.two_sz(r, n_spatial), enc.two_sz(cbits, n_spatial));
            }
        }
    }
}

#[test]
fn decompose_examples_from_table_notation() {
    let p = PauliString::from_label("XYZZ", c(1.0, 0.0)).unwrap();
    let d = decompose_support(&p);
    assert_eq!(d.support, vec![0, 1]);
    assert_eq!(d.z_tail, 0b1100);
    assert_eq!(d.local.label(), "XY");
    // embedding identity: dense(p) == embed(project with no symmetries)
    let enc = Encoding::new(EncodingKind::JordanWigner, 4, SpinOrder::Blocked).unwrap();
    let projector = Projector::new(&enc, 2, &[]);
    let embedded = embed(&projector.project(&p).unwrap());
    assert!(embedded.max_abs_diff(&dense_pauli(&p)) < 1e-12);
}
