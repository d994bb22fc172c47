use num_complex::Complex64;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::fock::{exact_matrix, FockBasis, SparseMatrix};
use crate::encodings::{encode, EncodingLayout, OperatorSpec};
use crate::error::{Error, Result};
use crate::pauli::{i_pow, PauliString, PauliSum};

/// Default absolute tolerance for matrix comparisons.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// Largest qubit count `pauli_matrix` will expand.
pub const MAX_DENSE_QUBITS: usize = 20;

fn packed(words: &[u64]) -> u128 {
    let lo = words.first().copied().unwrap_or(0) as u128;
    let hi = words.get(1).copied().unwrap_or(0) as u128;
    lo | hi << 64
}

struct PackedTerm {
    x: u128,
    z: u128,
    coef: Complex64,
}

fn pack(sum: &PauliSum) -> Result<Vec<PackedTerm>> {
    if sum.n_qubits() > 128 {
        return Err(Error::TooLarge {
            what: "qubits for state-vector action",
            size: sum.n_qubits(),
            limit: 128,
        });
    }
    Ok(sum
        .iter()
        .map(|(p, c)| {
            let (x, z) = (packed(p.x_words()), packed(p.z_words()));
            let y = (x & z).count_ones();
            let coef = c * p.phase().to_complex() * i_pow(y);
            PackedTerm { x, z, coef }
        })
        .collect())
}

/// `P|e>` for one packed term: target bitstring and amplitude.
fn act(t: &PackedTerm, e: u128) -> (u128, Complex64) {
    let sign = if (t.z & e).count_ones() % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    (e ^ t.x, t.coef * sign)
}

/// Full `2^n x 2^n` matrix of a Pauli sum.
pub fn pauli_matrix(sum: &PauliSum) -> Result<SparseMatrix> {
    let n = sum.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            what: "qubits for full matrix",
            size: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    let terms = pack(sum)?;
    let dim = 1usize << n;
    let mut m = SparseMatrix::zeros(dim);
    for e in 0..dim {
        for t in &terms {
            let (r, a) = act(t, e as u128);
            m.add(r as usize, e, a);
        }
    }
    Ok(m)
}

/// Matrix of a single Pauli string.
pub fn pauli_string_matrix(p: &PauliString) -> Result<SparseMatrix> {
    let mut s = PauliSum::zero(p.n_qubits());
    s.add_term(Complex64::new(1.0, 0.0), p.clone());
    pauli_matrix(&s)
}

/// Pauli sum restricted to the embedded physical basis, plus the largest
/// column norm of the part that lands outside it.
pub fn restrict(sum: &PauliSum, basis: &FockBasis) -> Result<(SparseMatrix, f64)> {
    if sum.n_qubits() != basis.layout().n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: basis.layout().n_qubits(),
            found: sum.n_qubits(),
        });
    }
    let terms = pack(sum)?;
    let embedded: FxHashMap<u128, usize> = basis
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| (basis.embed(s), i))
        .collect();
    let mut m = SparseMatrix::zeros(basis.len());
    let mut leakage: f64 = 0.0;
    let mut column: FxHashMap<u128, Complex64> = FxHashMap::default();
    for (col, label) in basis.states().iter().enumerate() {
        let e = basis.embed(label);
        column.clear();
        for t in &terms {
            let (r, a) = act(t, e);
            *column.entry(r).or_default() += a;
        }
        let mut out_norm = 0.0;
        for (r, a) in &column {
            match embedded.get(r) {
                Some(&row) => m.add(row, col, *a),
                None => out_norm += a.norm_sqr(),
            }
        }
        leakage = leakage.max(out_norm.sqrt());
    }
    Ok((m, leakage))
}

/// Outcome of one encoding check, serialized as one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mapping: String,
    pub n_particles: usize,
    pub n_modes: usize,
    pub d: Option<usize>,
    pub operator: String,
    pub n_qubits: usize,
    pub n_strings: usize,
    pub basis_dim: usize,
    pub max_abs_error: f64,
    pub leakage: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Checks an already compiled sum against the exact matrix of `spec`.
pub fn verify_sum(
    sum: &PauliSum,
    spec: &OperatorSpec,
    layout: &EncodingLayout,
    tolerance: f64,
) -> Result<VerifyReport> {
    let basis = FockBasis::new(layout)?;
    let exact = exact_matrix(spec, &basis)?;
    let (encoded, leakage) = restrict(sum, &basis)?;
    let err = encoded.max_abs_diff(&exact);
    Ok(VerifyReport {
        mapping: layout.kind().to_string(),
        n_particles: layout.n_particles(),
        n_modes: layout.n_modes(),
        d: (!layout.kind().is_first_quantized()).then(|| layout.d()),
        operator: spec.to_string(),
        n_qubits: layout.n_qubits(),
        n_strings: sum.len(),
        basis_dim: basis.len(),
        max_abs_error: err,
        leakage,
        tolerance,
        passed: err <= tolerance && leakage <= tolerance,
    })
}

/// Compiles `spec` and checks it against the exact Fock-space matrix.
pub fn verify(
    spec: &OperatorSpec,
    layout: &EncodingLayout,
    tolerance: f64,
) -> Result<VerifyReport> {
    let sum = encode(spec, layout)?;
    verify_sum(&sum, spec, layout, tolerance)
}
