//! Bosonic operator to qubit Pauli-string compiler with Trotter resource
//! estimation and an exact Fock-space checker.

pub mod encodings;
pub mod error;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod resources;
pub mod sweep;

pub use error::{Error, Result};
