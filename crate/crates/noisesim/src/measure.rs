//! Shot sampling with readout error, and Pauli expectation estimation
//! from measurement-circuit counts.

use crate::density::DensityMatrix;
use rand::Rng;
use std::collections::HashMap;

/// Per-qubit readout flip probabilities.
#[derive(Debug, Clone, Copy)]
pub struct ReadoutError {
    /// P(read 0 | true 1).
    pub p0_given_1: f64,
    /// P(read 1 | true 0).
    pub p1_given_0: f64,
}

impl ReadoutError {
    pub fn none() -> Self {
        ReadoutError {
            p0_given_1: 0.0,
            p1_given_0: 0.0,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        ReadoutError {
            p0_given_1: self.p0_given_1 * s,
            p1_given_0: self.p1_given_0 * s,
        }
    }
}

/// Samples computational-basis outcomes from the state's diagonal and
/// applies independent per-qubit readout flips. Deterministic given the
/// RNG state.
pub fn measure_counts<R: Rng>(
    rho: &DensityMatrix,
    shots: u64,
    readout: ReadoutError,
    rng: &mut R,
) -> HashMap<u64, u64> {
    let probs = rho.probabilities();
    let total: f64 = probs.iter().sum();
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p / total;
        cumulative.push(acc);
    }
    let n_qubits = rho.n_qubits;
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for _ in 0..shots {
        let r: f64 = rng.gen();
        let mut outcome = cumulative.partition_point(|&c| c < r) as u64;
        if outcome >= probs.len() as u64 {
            outcome = probs.len() as u64 - 1;
        }
        if readout.p0_given_1 > 0.0 || readout.p1_given_0 > 0.0 {
            for q in 0..n_qubits {
                let bit = outcome >> q & 1;
                let flip_p = if bit == 1 {
                    readout.p0_given_1
                } else {
                    readout.p1_given_0
                };
                if flip_p > 0.0 && rng.gen::<f64>() < flip_p {
                    outcome ^= 1 << q;
                }
            }
        }
        *counts.entry(outcome).or_insert(0) += 1;
    }
    counts
}

/// Expectation of a Z-product over the non-identity qubits of a measured
/// string: the parity average of the counts on those bits.
pub fn expectation_from_counts(counts: &HashMap<u64, u64>, shots: u64, mask: u64) -> f64 {
    let mut acc = 0i64;
    for (&outcome, &n) in counts {
        let parity = (outcome & mask).count_ones() % 2;
        acc += if parity == 0 { n as i64 } else { -(n as i64) };
    }
    acc as f64 / shots as f64
}
