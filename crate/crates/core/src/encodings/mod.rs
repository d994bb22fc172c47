//! Bosonic operator compilation under the four register mappings.
//!
//! A [`EncodingLayout`] fixes the mapping and problem size. Operators enter
//! either as an [`OperatorSpec`] or through the direct builders below and
//! come out as collected [`PauliSum`](crate::pauli::PauliSum)s.

mod compile;
mod layout;
mod register;
mod spec;

pub use compile::{
    density_correlation, encode, encode_hamiltonian, encode_rdm_term, ladder_monomial,
    local_ladder_power, local_operator, number_falling_power, number_power, LocalOp,
};
pub use layout::{ceil_log2, qubit_count, EncodingLayout, MappingKind};
pub use register::{
    encode_transition, encode_transition_binary, encode_transition_unary, pauli_decompose,
    RegisterOperator,
};
pub use spec::{OperatorSpec, Term};
