//! Dense density-matrix state with gate and Kraus-channel application.

use crate::channel::Channel;
use crate::error::{NoiseError, Result};
use crate::gates::Gate;
use num_complex::Complex64;
use spt_core::dense::{hermitian_eigen, CMatrix, ONE, ZERO};
use spt_core::pauli::PauliString;

#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub n_qubits: usize,
    pub data: CMatrix,
}

impl DensityMatrix {
    pub fn ground(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let mut data = CMatrix::zeros(dim, dim);
        data[(0, 0)] = ONE;
        DensityMatrix { n_qubits, data }
    }

    pub fn from_statevector(state: &[Complex64]) -> Self {
        let dim = state.len();
        let n_qubits = dim.trailing_zeros() as usize;
        let mut data = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                data[(i, j)] = state[i] * state[j].conj();
            }
        }
        DensityMatrix { n_qubits, data }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// rho <- M rho M^H for a k-qubit matrix M acting on `qubits`
    /// (qubits[0] is the low bit of M's local index).
    fn conjugate_by(&mut self, qubits: &[usize], m: &CMatrix) {
        let k = qubits.len();
        let local_dim = 1usize << k;
        assert_eq!(m.rows, local_dim);
        let dim = self.dim();
        let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        let scatter = |loc: usize| -> usize {
            let mut out = 0;
            for (pos, &q) in qubits.iter().enumerate() {
                out |= (loc >> pos & 1) << q;
            }
            out
        };
        let rests: Vec<usize> = (0..dim).filter(|i| i & mask == 0).collect();
        let locs: Vec<usize> = (0..local_dim).map(scatter).collect();

        // left multiply: rho <- M rho
        let mut tmp = vec![ZERO; local_dim];
        for &rest_r in &rests {
            for col in 0..dim {
                for (li, t) in tmp.iter_mut().enumerate() {
                    *t = self.data[(rest_r | locs[li], col)];
                }
                for li in 0..local_dim {
                    let mut acc = ZERO;
                    for lj in 0..local_dim {
                        acc += m[(li, lj)] * tmp[lj];
                    }
                    self.data[(rest_r | locs[li], col)] = acc;
                }
            }
        }
        // right multiply: rho <- rho M^H
        for &rest_c in &rests {
            for row in 0..dim {
                for (lj, t) in tmp.iter_mut().enumerate() {
                    *t = self.data[(row, rest_c | locs[lj])];
                }
                for lj in 0..local_dim {
                    let mut acc = ZERO;
                    for lk in 0..local_dim {
                        acc += tmp[lk] * m[(lj, lk)].conj();
                    }
                    self.data[(row, rest_c | locs[lj])] = acc;
                }
            }
        }
    }

    pub fn apply_unitary(&mut self, qubits: &[usize], m: &CMatrix) {
        self.conjugate_by(qubits, m);
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match gate {
            Gate::OneQubit { qubit, matrix, .. } => {
                let m = CMatrix::from_rows(&[&matrix[0], &matrix[1]]);
                self.conjugate_by(&[*qubit], &m);
            }
            Gate::Cnot { control, target } => {
                let mut m = CMatrix::zeros(4, 4);
                // local order: qubits = [control, target]
                m[(0, 0)] = ONE; // |c=0,t=0>
                m[(2, 2)] = ONE; // |c=0,t=1>
                m[(1, 3)] = ONE; // |c=1,t=1> -> |c=1,t=0>
                m[(3, 1)] = ONE;
                self.conjugate_by(&[*control, *target], &m);
            }
        }
    }

    /// rho <- sum_k K rho K^H on the given qubits.
    pub fn apply_channel(&mut self, qubits: &[usize], channel: &Channel) -> Result<()> {
        if qubits.len() != channel.n_qubits {
            return Err(NoiseError::BadParameter(format!(
                "channel arity {} does not match {} target qubits",
                channel.n_qubits,
                qubits.len()
            )));
        }
        channel.check_complete(1e-10)?;
        let mut acc = CMatrix::zeros(self.dim(), self.dim());
        for k in &channel.kraus {
            let mut branch = self.clone();
            branch.conjugate_by(qubits, k);
            acc = acc.add(&branch.data);
        }
        self.data = acc;
        Ok(())
    }

    /// Computational-basis outcome probabilities (diagonal, clamped).
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| self.data[(i, i)].re.max(0.0))
            .collect()
    }

    /// tr(rho P).
    pub fn expectation_pauli(&self, p: &PauliString) -> Complex64 {
        let mut acc = ZERO;
        for b in 0..self.dim() as u64 {
            let (row, amp) = p.basis_action(b).expect("register sizes match");
            acc += self.data[(b as usize, row as usize)] * amp;
        }
        acc
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// Checks the state invariants: Hermitian and unit trace to 1e-10,
    /// eigenvalues above -1e-9.
    pub fn validate(&self) -> Result<()> {
        if (self.trace() - ONE).norm() > 1e-10 {
            return Err(NoiseError::BadState(format!("trace = {}", self.trace())));
        }
        if !self.data.is_hermitian(1e-10) {
            return Err(NoiseError::BadState("not Hermitian".into()));
        }
        let (vals, _) = hermitian_eigen(&self.data);
        if let Some(&min) = vals.last() {
            if min < -1e-9 {
                return Err(NoiseError::BadState(format!("eigenvalue {min:.3e}")));
            }
        }
        Ok(())
    }
}
