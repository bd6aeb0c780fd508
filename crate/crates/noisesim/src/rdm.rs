//! 2-RDM assembly: the ideal matrix from a statevector via ladder
//! operators, and tomographic matrices from measured Pauli expectations
//! through the naive and reduced coefficient sets.

use num_complex::Complex64;
use spt_core::dense::{apply_ladder, CMatrix, ZERO};
use spt_core::fermion::{SpinOrbital, SpinOrder};
use spt_core::reduce::TomographyPlan;

/// The 2-RDM as a dense matrix over composite spin-orbital pairs:
/// entry [(i,k), (j,l)] = <a+_i a+_k a_l a_j> with row index i*n + k.
#[derive(Debug, Clone)]
pub struct TwoRdm {
    pub n_so: usize,
    pub matrix: CMatrix,
}

impl TwoRdm {
    fn zeros(n_so: usize) -> Self {
        TwoRdm {
            n_so,
            matrix: CMatrix::zeros(n_so * n_so, n_so * n_so),
        }
    }

    /// Fills the four antisymmetric copies of one element and their
    /// Hermitian conjugates.
    fn set_element(&mut self, upper: (usize, usize), lower: (usize, usize), value: Complex64) {
        let n = self.n_so;
        let idx = |a: usize, b: usize| a * n + b;
        let (u0, u1) = upper;
        let (l0, l1) = lower;
        let signed = [
            (idx(u0, u1), idx(l0, l1), value),
            (idx(u1, u0), idx(l0, l1), -value),
            (idx(u0, u1), idx(l1, l0), -value),
            (idx(u1, u0), idx(l1, l0), value),
        ];
        for &(r, c, v) in &signed {
            self.matrix[(r, c)] = v;
            self.matrix[(c, r)] = v.conj();
        }
    }

    pub fn frobenius_distance(&self, other: &TwoRdm) -> f64 {
        self.matrix.sub(&other.matrix).frobenius_norm()
    }
}

fn mode_of(so: SpinOrbital, order: SpinOrder, n_spatial: usize) -> usize {
    order.mode_index(n_spatial, so)
}

/// Ideal 2-RDM: every element evaluated directly on the statevector with
/// ladder operators (an independent path from the Pauli machinery).
pub fn ideal_two_rdm(state: &[Complex64], plan: &TomographyPlan, order: SpinOrder) -> TwoRdm {
    let n_spatial = plan.n_spatial;
    let n_so = 2 * n_spatial;
    let mut rdm = TwoRdm::zeros(n_so);
    for element in &plan.elements {
        let spec = &element.spec;
        let modes: Vec<(usize, bool)> = spec
            .upper
            .iter()
            .map(|&so| (mode_of(so, order, n_spatial), true))
            .chain(
                spec.lower
                    .iter()
                    .rev()
                    .map(|&so| (mode_of(so, order, n_spatial), false)),
            )
            .collect();
        let mut v = state.to_vec();
        for &(mode, dagger) in modes.iter().rev() {
            v = apply_ladder(&v, mode, dagger);
        }
        let value: Complex64 = state.iter().zip(&v).map(|(s, t)| s.conj() * t).sum();
        let upper = (
            mode_of(spec.upper[0], order, n_spatial),
            mode_of(spec.upper[1], order, n_spatial),
        );
        let lower = (
            mode_of(spec.lower[0], order, n_spatial),
            mode_of(spec.lower[1], order, n_spatial),
        );
        rdm.set_element(upper, lower, value);
    }
    rdm
}

/// Naive tomographic 2-RDM: each element is its encoded Pauli expansion
/// evaluated with the supplied string expectations (indexed like
/// `plan.naive_strings`).
pub fn naive_two_rdm(plan: &TomographyPlan, expectations: &[f64], order: SpinOrder) -> TwoRdm {
    let n_spatial = plan.n_spatial;
    let mut rdm = TwoRdm::zeros(2 * n_spatial);
    for element in &plan.elements {
        let value: Complex64 = element
            .naive_terms
            .iter()
            .map(|&(slot, coeff)| coeff * expectations[slot])
            .sum();
        fill(&mut rdm, element, value, order, n_spatial);
    }
    rdm
}

/// Reduced tomographic 2-RDM: element values reconstructed from the shared
/// reduced basis, `expectations` indexed like `plan.reduced.measurements`.
/// Off-diagonal elements combine their Hermitian components as
/// (re - i*im)/2; diagonal elements are their real component directly.
pub fn reduced_two_rdm(plan: &TomographyPlan, expectations: &[f64], order: SpinOrder) -> TwoRdm {
    let n_spatial = plan.n_spatial;
    let mut rdm = TwoRdm::zeros(2 * n_spatial);
    for element in &plan.elements {
        let eval = |target_idx: usize| -> Complex64 {
            plan.reduced.targets[target_idx]
                .coeffs
                .iter()
                .zip(expectations)
                .map(|(c, &e)| c * e)
                .sum()
        };
        let value = match element.imag_target {
            None => eval(element.real_target),
            Some(imag) => {
                let re = eval(element.real_target);
                let im = eval(imag);
                (re - Complex64::new(0.0, 1.0) * im) * 0.5
            }
        };
        fill(&mut rdm, element, value, order, n_spatial);
    }
    rdm
}

fn fill(
    rdm: &mut TwoRdm,
    element: &spt_core::reduce::PlanElement,
    value: Complex64,
    order: SpinOrder,
    n_spatial: usize,
) {
    let spec = &element.spec;
    let upper = (
        mode_of(spec.upper[0], order, n_spatial),
        mode_of(spec.upper[1], order, n_spatial),
    );
    let lower = (
        mode_of(spec.lower[0], order, n_spatial),
        mode_of(spec.lower[1], order, n_spatial),
    );
    rdm.set_element(upper, lower, value);
}

/// Trace of the 2-RDM over its diagonal: sum over ordered pairs of
/// <a+_i a+_k a_k a_i> = N(N-1) for an N-particle state.
pub fn pair_trace(rdm: &TwoRdm) -> Complex64 {
    let n = rdm.n_so;
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += rdm.matrix[(i * n + k, i * n + k)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{ansatz_circuit, run_statevector};
    use spt_core::encode::EncodingKind;
    use spt_core::reduce::tomography_plan;
    use spt_core::symproj::Symmetry;

    #[test]
    fn pair_trace_is_n_times_n_minus_one() {
        let plan = tomography_plan(
            2,
            2,
            EncodingKind::JordanWigner,
            SpinOrder::Blocked,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        )
        .unwrap();
        let state = run_statevector(&ansatz_circuit([0.7, -0.3, 1.9]), 4);
        let rdm = ideal_two_rdm(&state, &plan, SpinOrder::Blocked);
        let t = pair_trace(&rdm);
        assert!((t - Complex64::new(2.0, 0.0)).norm() < 1e-10, "trace {t}");
    }

    #[test]
    fn ideal_rdm_is_hermitian() {
        let plan = tomography_plan(
            2,
            2,
            EncodingKind::JordanWigner,
            SpinOrder::Blocked,
            &[Symmetry::ParticleNumber, Symmetry::SpinZ],
        )
        .unwrap();
        let state = run_statevector(&ansatz_circuit([0.2, 0.9, -1.4]), 4);
        let rdm = ideal_two_rdm(&state, &plan, SpinOrder::Blocked);
        assert!(rdm.matrix.is_hermitian(1e-12));
    }
}
