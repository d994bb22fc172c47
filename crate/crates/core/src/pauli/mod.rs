//! Pauli-string algebra: symplectic strings with phase tracking and
//! collected weighted sums.

mod string;
mod sum;

pub use string::{Pauli, PauliString, Phase};
pub use sum::{format_complex, PauliSum, DEFAULT_TOLERANCE};

pub(crate) use string::i_pow;
