//! Device calibration data and the averaged parameter set the noise model
//! consumes. Defaults mirror a 5-qubit fixed-frequency transmon device
//! benchmark (times in microseconds, gate lengths in nanoseconds).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QubitCalibration {
    pub frequency_ghz: f64,
    pub t1_us: f64,
    /// Missing where the benchmark reported none.
    pub t2_us: Option<f64>,
    /// P(read 0 | prepared 1).
    pub readout_p0_given_1: f64,
    /// P(read 1 | prepared 0).
    pub readout_p1_given_0: f64,
    pub u2_error: f64,
    pub u3_error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CnotCalibration {
    pub control: usize,
    pub target: usize,
    pub error: f64,
    pub length_ns: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DeviceParameters {
    pub qubits: Vec<QubitCalibration>,
    pub cnots: Vec<CnotCalibration>,
    pub u2_length_ns: f64,
    pub u3_length_ns: f64,
    pub temperature_k: f64,
}

impl Default for DeviceParameters {
    fn default() -> Self {
        let q = |f, t1, t2: f64, ro01, ro10, u2: f64, u3: f64| QubitCalibration {
            frequency_ghz: f,
            t1_us: t1,
            t2_us: if t2 > 0.0 { Some(t2) } else { None },
            readout_p0_given_1: ro01,
            readout_p1_given_0: ro10,
            u2_error: u2 * 1e-4,
            u3_error: u3 * 1e-4,
        };
        let cx = |c, t, e: f64, l| CnotCalibration {
            control: c,
            target: t,
            error: e * 1e-2,
            length_ns: l,
        };
        DeviceParameters {
            qubits: vec![
                q(5.000, 93.6, 133.3, 0.036, 0.080, 3.7, 4.5),
                q(4.845, 59.9, 58.5, 0.173, 0.151, 3.2, 6.5),
                q(4.783, 77.7, 120.6, 0.057, 0.036, 1.7, 3.3),
                q(4.858, 131.1, 187.1, 0.030, 0.009, 2.4, 4.8),
                q(4.978, 101.7, -1.0, 0.052, 0.026, 13.8, 27.5),
            ],
            cnots: vec![
                cx(0, 1, 2.0, 690.0),
                cx(1, 0, 2.0, 654.0),
                cx(1, 2, 1.0, 498.0),
                cx(2, 1, 1.0, 533.0),
                cx(2, 3, 1.0, 626.0),
                cx(3, 2, 1.0, 590.0),
                cx(3, 4, 4.8, 370.0),
                cx(4, 3, 4.8, 334.0),
            ],
            u2_length_ns: 35.0,
            u3_length_ns: 71.0,
            temperature_k: 0.020,
        }
    }
}

/// Parameters averaged over the device, used uniformly on every simulated
/// qubit and gate.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AveragedParameters {
    pub t1_us: f64,
    pub t2_us: f64,
    pub frequency_ghz: f64,
    pub readout_p0_given_1: f64,
    pub readout_p1_given_0: f64,
    pub u2_error: f64,
    pub u3_error: f64,
    pub cnot_error: f64,
    pub u2_length_ns: f64,
    pub u3_length_ns: f64,
    pub cnot_length_ns: f64,
    pub temperature_k: f64,
}

impl DeviceParameters {
    /// Checks the calibration invariants: positive times and lengths,
    /// probabilities in [0, 1], at least one qubit and one coupling.
    pub fn validate(&self) -> crate::error::Result<()> {
        use crate::error::NoiseError;
        let bad = |msg: String| Err(NoiseError::BadParameter(msg));
        if self.qubits.is_empty() || self.cnots.is_empty() {
            return bad("device needs at least one qubit and one coupling".into());
        }
        for (i, q) in self.qubits.iter().enumerate() {
            if q.t1_us <= 0.0 || q.t2_us.is_some_and(|t2| t2 <= 0.0) || q.frequency_ghz <= 0.0 {
                return bad(format!("qubit {i}: times and frequency must be positive"));
            }
            for p in [
                q.readout_p0_given_1,
                q.readout_p1_given_0,
                q.u2_error,
                q.u3_error,
            ] {
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("qubit {i}: probability {p} outside [0, 1]"));
                }
            }
        }
        for cx in &self.cnots {
            if cx.length_ns <= 0.0 || !(0.0..=1.0).contains(&cx.error) {
                return bad(format!(
                    "coupling {}->{}: bad length or error",
                    cx.control, cx.target
                ));
            }
        }
        if self.u2_length_ns <= 0.0 || self.u3_length_ns <= 0.0 || self.temperature_k < 0.0 {
            return bad("gate lengths must be positive, temperature non-negative".into());
        }
        Ok(())
    }

    pub fn averaged(&self) -> AveragedParameters {
        let nq = self.qubits.len() as f64;
        let mean =
            |f: &dyn Fn(&QubitCalibration) -> f64| self.qubits.iter().map(f).sum::<f64>() / nq;
        let t2s: Vec<f64> = self.qubits.iter().filter_map(|q| q.t2_us).collect();
        let t2 = t2s.iter().sum::<f64>() / t2s.len() as f64;
        let ncx = self.cnots.len() as f64;
        AveragedParameters {
            t1_us: mean(&|q| q.t1_us),
            t2_us: t2,
            frequency_ghz: mean(&|q| q.frequency_ghz),
            readout_p0_given_1: mean(&|q| q.readout_p0_given_1),
            readout_p1_given_0: mean(&|q| q.readout_p1_given_0),
            u2_error: mean(&|q| q.u2_error),
            u3_error: mean(&|q| q.u3_error),
            cnot_error: self.cnots.iter().map(|c| c.error).sum::<f64>() / ncx,
            u2_length_ns: self.u2_length_ns,
            u3_length_ns: self.u3_length_ns,
            cnot_length_ns: self.cnots.iter().map(|c| c.length_ns).sum::<f64>() / ncx,
            temperature_k: self.temperature_k,
        }
    }
}

/// Excited-state population at thermal equilibrium for a qubit of the given
/// frequency and temperature: n1 = 1 / (1 + exp(2hf / kT)).
pub fn excited_population(frequency_ghz: f64, temperature_k: f64) -> f64 {
    const H: f64 = 6.62607015e-34;
    const KB: f64 = 1.380649e-23;
    if temperature_k <= 0.0 {
        return 0.0;
    }
    let ratio = 2.0 * H * frequency_ghz * 1e9 / (KB * temperature_k);
    1.0 / (1.0 + ratio.exp())
}
