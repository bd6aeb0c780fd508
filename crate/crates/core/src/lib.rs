//! Symmetry-projected measurement bases for fermionic RDM tomography.
//!
//! The pipeline: second-quantized RDM element operators ([`fermion`]) are
//! mapped to Pauli sums ([`encode`]), each string is projected onto the
//! symmetry-conserving subspace over its local support ([`symproj`]), and a
//! linearly independent subset of the projected strings is selected and
//! solved against each target ([`reduce`]). The resulting measurement sets
//! are grouped into simultaneously measurable circuits by greedy coloring
//! of the qubit-wise-commutation conflict graph ([`group`]).

pub mod dense;
pub mod encode;
pub mod error;
pub mod fermion;
pub mod group;
pub mod json;
pub mod pauli;
pub mod reduce;
pub mod symproj;

pub use error::{Error, Result};
