//! Gate-level circuit representation, the three-parameter ansatz circuit,
//! and a plain statevector simulator used for noiseless references.

use num_complex::Complex64;
use spt_core::dense::{CMatrix, ONE, ZERO};
use spt_core::pauli::{Letter, PauliString};

/// Physical class of a one-qubit gate. `Virtual` marks frame changes (Rz)
/// that cost no pulse and attract no noise; `U2`/`U3` are one- and
/// two-pulse gates with their own calibrated lengths and error rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateClass {
    U2,
    U3,
    Virtual,
}

#[derive(Debug, Clone)]
pub enum Gate {
    OneQubit {
        qubit: usize,
        matrix: [[Complex64; 2]; 2],
        class: GateClass,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

impl Gate {
    pub fn one_qubit(qubit: usize, matrix: [[Complex64; 2]; 2], class: GateClass) -> Self {
        Gate::OneQubit {
            qubit,
            matrix,
            class,
        }
    }

    pub fn is_physical_1q(&self) -> bool {
        matches!(
            self,
            Gate::OneQubit {
                class: GateClass::U2 | GateClass::U3,
                ..
            }
        )
    }
}

pub fn mat_x() -> [[Complex64; 2]; 2] {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn mat_h() -> [[Complex64; 2]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

/// Rx(phi) = exp(-i phi X / 2).
pub fn mat_rx(phi: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((phi / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(phi / 2.0).sin());
    [[c, s], [s, c]]
}

/// Rz(phi) = exp(-i phi Z / 2), implemented as a frame change on hardware.
pub fn mat_rz(phi: f64) -> [[Complex64; 2]; 2] {
    [
        [Complex64::from_polar(1.0, -phi / 2.0), ZERO],
        [ZERO, Complex64::from_polar(1.0, phi / 2.0)],
    ]
}

pub fn matmul2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// The two-electron/four-spin-orbital state-preparation circuit
/// exp(i t1 Y1X2X3X4) exp(i t2 Y1X2) exp(i t3 Y3X4) applied to the
/// |1010> reference (modes a0, b0 occupied under blocked ordering).
///
/// Each exponential compiles into single-qubit basis changes and a CNOT
/// ladder with a virtual Rz carrying the angle; adjacent ladder segments
/// and basis changes cancel between the exponentials, and neighboring
/// one-qubit gates merge into single pulses. The result has 8 CNOT gates
/// and 9 physical one-qubit gates.
pub fn ansatz_circuit(theta: [f64; 3]) -> Vec<Gate> {
    use GateClass::*;
    let [t1, t2, t3] = theta;
    let half = std::f64::consts::FRAC_PI_2;
    // X-prep merged with the first basis change on qubits 0 and 2.
    let prep0 = matmul2(mat_rx(half), mat_x());
    let prep2 = matmul2(mat_rx(half), mat_x());
    // Rx(-pi/2) from the theta3 block merged with the H opening the
    // four-body block on qubit 2.
    let mid2 = matmul2(mat_h(), mat_rx(-half));
    vec![
        Gate::one_qubit(0, prep0, U3),
        Gate::one_qubit(2, prep2, U3),
        Gate::one_qubit(3, mat_h(), U2),
        Gate::Cnot {
            control: 2,
            target: 3,
        },
        Gate::one_qubit(3, mat_rz(-2.0 * t3), Virtual),
        Gate::Cnot {
            control: 2,
            target: 3,
        },
        Gate::one_qubit(2, mid2, U3),
        Gate::one_qubit(1, mat_h(), U2),
        Gate::Cnot {
            control: 0,
            target: 1,
        },
        Gate::one_qubit(1, mat_rz(-2.0 * t2), Virtual),
        Gate::Cnot {
            control: 1,
            target: 2,
        },
        Gate::Cnot {
            control: 2,
            target: 3,
        },
        Gate::one_qubit(3, mat_rz(-2.0 * t1), Virtual),
        Gate::Cnot {
            control: 2,
            target: 3,
        },
        Gate::Cnot {
            control: 1,
            target: 2,
        },
        Gate::Cnot {
            control: 0,
            target: 1,
        },
        Gate::one_qubit(0, mat_rx(-half), U2),
        Gate::one_qubit(1, mat_h(), U2),
        Gate::one_qubit(2, mat_h(), U2),
        Gate::one_qubit(3, mat_h(), U2),
    ]
}

/// Basis-change gates rotating a measurement string's letters onto Z:
/// H for X, Rx(pi/2) for Y (one U2-class pulse each), nothing for Z or I.
pub fn measurement_rotations(basis: &PauliString) -> Vec<Gate> {
    let mut gates = Vec::new();
    for q in 0..basis.n_qubits() {
        match basis.letter(q) {
            Letter::X => gates.push(Gate::one_qubit(q, mat_h(), GateClass::U2)),
            Letter::Y => gates.push(Gate::one_qubit(
                q,
                mat_rx(std::f64::consts::FRAC_PI_2),
                GateClass::U2,
            )),
            Letter::Z | Letter::I => {}
        }
    }
    gates
}

pub fn cnot_count(gates: &[Gate]) -> usize {
    gates
        .iter()
        .filter(|g| matches!(g, Gate::Cnot { .. }))
        .count()
}

pub fn physical_1q_count(gates: &[Gate]) -> usize {
    gates.iter().filter(|g| g.is_physical_1q()).count()
}

/// Applies a gate to a statevector (little-endian: qubit 0 is bit 0).
pub fn apply_gate_state(state: &mut [Complex64], gate: &Gate) {
    match gate {
        Gate::OneQubit { qubit, matrix, .. } => {
            let bit = 1usize << qubit;
            for idx in 0..state.len() {
                if idx & bit == 0 {
                    let a = state[idx];
                    let b = state[idx | bit];
                    state[idx] = matrix[0][0] * a + matrix[0][1] * b;
                    state[idx | bit] = matrix[1][0] * a + matrix[1][1] * b;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let cbit = 1usize << control;
            let tbit = 1usize << target;
            for idx in 0..state.len() {
                if idx & cbit != 0 && idx & tbit == 0 {
                    state.swap(idx, idx | tbit);
                }
            }
        }
    }
}

pub fn run_statevector(gates: &[Gate], n_qubits: usize) -> Vec<Complex64> {
    let mut state = vec![ZERO; 1 << n_qubits];
    state[0] = ONE;
    for g in gates {
        apply_gate_state(&mut state, g);
    }
    state
}

/// Full unitary of a gate list (for small registers), built by applying
/// the circuit to each basis state.
pub fn circuit_unitary(gates: &[Gate], n_qubits: usize) -> CMatrix {
    let dim = 1usize << n_qubits;
    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut state = vec![ZERO; dim];
        state[col] = ONE;
        for g in gates {
            apply_gate_state(&mut state, g);
        }
        for row in 0..dim {
            u[(row, col)] = state[row];
        }
    }
    u
}
