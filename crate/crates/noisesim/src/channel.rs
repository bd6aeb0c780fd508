//! Quantum noise channels as Kraus-operator sets: thermal relaxation
//! (mixture form for T2 <= T1, Choi eigendecomposition otherwise),
//! depolarizing channels, and the average-fidelity bookkeeping that fixes
//! the depolarizing strength from a target gate error.

use crate::error::{NoiseError, Result};
use num_complex::Complex64;
use spt_core::dense::{hermitian_eigen, CMatrix, ONE, ZERO};

/// Kraus representation of a channel on one or two qubits.
#[derive(Debug, Clone)]
pub struct Channel {
    pub n_qubits: usize,
    pub kraus: Vec<CMatrix>,
}

impl Channel {
    pub fn identity(n_qubits: usize) -> Self {
        Channel {
            n_qubits,
            kraus: vec![CMatrix::identity(1 << n_qubits)],
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Deviation of sum K^H K from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let dim = self.dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for k in &self.kraus {
            acc = acc.add(&k.adjoint().mul(k));
        }
        acc.max_abs_diff(&CMatrix::identity(dim))
    }

    pub fn check_complete(&self, tol: f64) -> Result<()> {
        let defect = self.completeness_defect();
        if defect > tol {
            return Err(NoiseError::IncompleteChannel { defect });
        }
        Ok(())
    }

    /// Composition other after self (self acts first).
    pub fn then(&self, other: &Channel) -> Channel {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for b in &other.kraus {
            for a in &self.kraus {
                kraus.push(b.mul(a));
            }
        }
        Channel {
            n_qubits: self.n_qubits,
            kraus,
        }
    }

    /// Average gate fidelity against the identity target:
    /// (Tr S + d) / (d (d + 1)) with Tr S = sum_k |Tr K_k|^2.
    pub fn average_fidelity(&self) -> f64 {
        let d = self.dim() as f64;
        let trace_s: f64 = self.kraus.iter().map(|k| k.trace().norm_sqr()).sum();
        (trace_s + d) / (d * (d + 1.0))
    }

    /// Drops Kraus operators with negligible weight.
    fn pruned(mut self) -> Self {
        self.kraus.retain(|k| k.frobenius_norm() > 1e-12);
        if self.kraus.is_empty() {
            self.kraus.push(CMatrix::zeros(self.dim(), self.dim()));
        }
        self
    }
}

fn scaled_identity(factor: f64) -> CMatrix {
    CMatrix::identity(2).scale(Complex64::new(factor, 0.0))
}

/// Single-qubit thermal relaxation over a gate of length `t_gate`
/// (same time unit as t1/t2). `n1` is the equilibrium excited population.
/// `scale` multiplies every error probability; 0 gives the identity channel.
///
/// For t2 <= t1 the channel is a probabilistic mixture of identity, Z, and
/// resets; for t2 > t1 the Choi matrix is eigendecomposed into Kraus
/// operators.
pub fn thermal_relaxation_channel(
    t1: f64,
    t2: f64,
    t_gate: f64,
    n1: f64,
    scale: f64,
) -> Result<Channel> {
    if t1 <= 0.0 || t2 <= 0.0 || t_gate < 0.0 {
        return Err(NoiseError::BadParameter(format!(
            "relaxation needs positive times (t1={t1}, t2={t2}, tg={t_gate})"
        )));
    }
    let rt1 = (-t_gate / t1).exp();
    let rt2 = (-t_gate / t2).exp();
    let n0 = 1.0 - n1;
    let p_reset = scale * (1.0 - rt1);

    if t2 <= t1 {
        let p_z = scale * 0.5 * (1.0 - (1.0 - rt1)) * (1.0 - rt2 / rt1);
        let p_r0 = n0 * p_reset;
        let p_r1 = n1 * p_reset;
        let p_id = 1.0 - p_z - p_r0 - p_r1;
        if p_id < -1e-12 {
            return Err(NoiseError::BadParameter(format!(
                "mixture probabilities exceed one (p_id = {p_id})"
            )));
        }
        let mut kraus = vec![scaled_identity(p_id.max(0.0).sqrt())];
        if p_z > 0.0 {
            let mut z = CMatrix::identity(2);
            z[(1, 1)] = -ONE;
            kraus.push(z.scale(Complex64::new(p_z.sqrt(), 0.0)));
        }
        if p_r0 > 0.0 {
            // reset to |0>: |0><0| and |0><1|
            let mut k00 = CMatrix::zeros(2, 2);
            k00[(0, 0)] = ONE;
            let mut k01 = CMatrix::zeros(2, 2);
            k01[(0, 1)] = ONE;
            let w = Complex64::new(p_r0.sqrt(), 0.0);
            kraus.push(k00.scale(w));
            kraus.push(k01.scale(w));
        }
        if p_r1 > 0.0 {
            let mut k10 = CMatrix::zeros(2, 2);
            k10[(1, 0)] = ONE;
            let mut k11 = CMatrix::zeros(2, 2);
            k11[(1, 1)] = ONE;
            let w = Complex64::new(p_r1.sqrt(), 0.0);
            kraus.push(k10.scale(w));
            kraus.push(k11.scale(w));
        }
        return Ok(Channel { n_qubits: 1, kraus }.pruned());
    }

    // T2 > T1: Choi matrix in the column convention, coherence retention
    // rt2 scaled toward 1 as the error scale shrinks.
    let coher = 1.0 - scale * (1.0 - rt2);
    let choi = CMatrix::from_rows(&[
        &[
            Complex64::new(1.0 - n1 * p_reset, 0.0),
            ZERO,
            ZERO,
            Complex64::new(coher, 0.0),
        ],
        &[ZERO, Complex64::new(n1 * p_reset, 0.0), ZERO, ZERO],
        &[ZERO, ZERO, Complex64::new(n0 * p_reset, 0.0), ZERO],
        &[
            Complex64::new(coher, 0.0),
            ZERO,
            ZERO,
            Complex64::new(1.0 - n0 * p_reset, 0.0),
        ],
    ]);
    choi_to_kraus(&choi, 1)
}

/// Converts a Choi matrix (column convention: C = sum_ij |i><j| (x) E(|i><j|))
/// to Kraus operators by eigendecomposition; eigenpairs below 1e-12 are
/// dropped, eigenvalues below -1e-9 are rejected as nonphysical.
pub fn choi_to_kraus(choi: &CMatrix, n_qubits: usize) -> Result<Channel> {
    let dim = 1usize << n_qubits;
    assert_eq!(choi.rows, dim * dim);
    let (vals, vecs) = hermitian_eigen(choi);
    let mut kraus = Vec::new();
    for (idx, &lambda) in vals.iter().enumerate() {
        if lambda < -1e-9 {
            return Err(NoiseError::BadParameter(format!(
                "Choi matrix has negative eigenvalue {lambda:.3e}"
            )));
        }
        if lambda <= 1e-12 {
            continue;
        }
        let w = Complex64::new(lambda.sqrt(), 0.0);
        let mut k = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for m in 0..dim {
                // eigenvector component (i, m) -> K[m][i]
                k[(m, i)] = w * vecs[(i * dim + m, idx)];
            }
        }
        kraus.push(k);
    }
    Ok(Channel { n_qubits, kraus }.pruned())
}

const PAULI_1Q: [[[Complex64; 2]; 2]; 4] = {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let neg = Complex64::new(-1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let ni = Complex64::new(0.0, -1.0);
    [
        [[one, zero], [zero, one]],
        [[zero, one], [one, zero]],
        [[zero, ni], [i, zero]],
        [[one, zero], [zero, neg]],
    ]
};

fn pauli_matrix_1q(which: usize) -> CMatrix {
    let rows = PAULI_1Q[which];
    CMatrix::from_rows(&[&rows[0], &rows[1]])
}

/// Depolarizing channel on `n_qubits` (1 or 2) of strength lambda:
/// rho -> (1 - lambda) rho + lambda I/d, as a uniform Pauli mixture.
pub fn depolarizing_channel(n_qubits: usize, lambda: f64) -> Result<Channel> {
    let d2 = 4usize.pow(n_qubits as u32);
    let max_lambda = d2 as f64 / (d2 as f64 - 1.0);
    if !(0.0..=max_lambda + 1e-12).contains(&lambda) {
        return Err(NoiseError::BadParameter(format!(
            "depolarizing strength {lambda} outside [0, {max_lambda}]"
        )));
    }
    let p_other = lambda / d2 as f64;
    let p_id = 1.0 - lambda + p_other;
    let mut kraus = Vec::with_capacity(d2);
    for idx in 0..d2 {
        let weight = if idx == 0 { p_id } else { p_other };
        if weight <= 0.0 {
            continue;
        }
        let m = match n_qubits {
            1 => pauli_matrix_1q(idx),
            2 => pauli_matrix_1q(idx / 4).kron(&pauli_matrix_1q(idx % 4)),
            _ => {
                return Err(NoiseError::BadParameter(
                    "depolarizing channel supports 1 or 2 qubits".into(),
                ))
            }
        };
        kraus.push(m.scale(Complex64::new(weight.sqrt(), 0.0)));
    }
    Ok(Channel { n_qubits, kraus }.pruned())
}

/// Depolarizing strength that brings the composite (depolarizing after
/// relaxation) down to the target average fidelity:
/// lambda = d (F_relax - F_target) / (F_relax d - 1), clamped to the valid
/// range. Returns 0 when relaxation alone already reaches the target.
pub fn depolarizing_strength(f_target: f64, relax: &Channel, dim: usize) -> f64 {
    let d = dim as f64;
    let f_relax = relax.average_fidelity();
    if f_target >= f_relax {
        return 0.0;
    }
    let lambda = d * (f_relax - f_target) / (f_relax * d - 1.0);
    let d2 = (dim * dim) as f64;
    lambda.clamp(0.0, d2 / (d2 - 1.0))
}

/// Two-qubit channel acting as `a` on the low qubit and `b` on the high
/// qubit of the pair.
pub fn tensor_pair(a: &Channel, b: &Channel) -> Channel {
    assert_eq!(a.n_qubits, 1);
    assert_eq!(b.n_qubits, 1);
    let mut kraus = Vec::with_capacity(a.kraus.len() * b.kraus.len());
    for kb in &b.kraus {
        for ka in &a.kraus {
            // low qubit = first tensor factor in our bit convention
            kraus.push(kb.kron(ka));
        }
    }
    Channel { n_qubits: 2, kraus }
}
