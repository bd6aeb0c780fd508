//! Density-matrix simulation of the 4-qubit tomography study: thermal
//! relaxation, depolarizing, and readout noise applied to the compiled
//! three-parameter circuit, with 2-RDM reconstruction through both the
//! naive and the symmetry-reduced measurement sets.

pub mod channel;
pub mod density;
pub mod device;
pub mod error;
pub mod experiment;
pub mod gates;
pub mod measure;
pub mod rdm;

pub use error::{NoiseError, Result};
