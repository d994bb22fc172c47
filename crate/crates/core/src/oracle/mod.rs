//! Exact Fock-space matrices and checks of compiled Pauli sums against them.

mod fock;
mod suite;
mod verify;

pub use fock::{exact_matrix, FockBasis, SparseMatrix, MAX_BASIS_STATES};
pub use suite::{run_small_suite, small_cases, SmallCase};
pub use verify::{
    pauli_matrix, pauli_string_matrix, restrict, verify, verify_sum, VerifyReport,
    MAX_DENSE_QUBITS, VERIFY_TOLERANCE,
};
