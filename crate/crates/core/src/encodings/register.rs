//! Register-level building blocks: the transition operator `|l><m|` on one
//! register, and general sparse operators spanning several registers.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::layout::EncodingLayout;
use crate::error::{Error, Result};
use crate::pauli::{i_pow, Pauli, PauliString, PauliSum, DEFAULT_TOLERANCE};

/// Local qubit count up to which binary multi-register operators are
/// decomposed from a dense matrix instead of term-by-term expansion.
const DENSE_DECOMPOSE_MAX_QUBITS: usize = 10;

type LocalTerm = (Complex64, Vec<(usize, Pauli)>);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|l><m|` on a one-hot register: `S+_l S-_m` with `S+ = (X - iY)/2`
/// acting as `|1><0|` under Z|0> = |0>; the projector `(1 - Z_l)/2` when
/// `l == m`. Offsets are register-local.
fn unary_terms(l: usize, m: usize) -> Vec<LocalTerm> {
    use Pauli::*;
    if l == m {
        return vec![(c(0.5, 0.0), vec![]), (c(-0.5, 0.0), vec![(l, Z)])];
    }
    // (X_l - iY_l)(X_m + iY_m) / 4
    vec![
        (c(0.25, 0.0), vec![(l, X), (m, X)]),
        (c(0.0, 0.25), vec![(l, X), (m, Y)]),
        (c(0.0, -0.25), vec![(l, Y), (m, X)]),
        (c(0.25, 0.0), vec![(l, Y), (m, Y)]),
    ]
}

/// Single-bit `|a><b|` as two Pauli terms.
fn bit_factor(a: bool, b: bool) -> [(Complex64, Pauli); 2] {
    use Pauli::*;
    match (a, b) {
        (false, false) => [(c(0.5, 0.0), I), (c(0.5, 0.0), Z)],
        (true, true) => [(c(0.5, 0.0), I), (c(-0.5, 0.0), Z)],
        // |1><0|
        (true, false) => [(c(0.5, 0.0), X), (c(0.0, -0.5), Y)],
        // |0><1|
        (false, true) => [(c(0.5, 0.0), X), (c(0.0, 0.5), Y)],
    }
}

/// `|l><m|` on a base-2 register of `width` bits as the tensor product of
/// per-bit factors, expanded to `2^width` terms.
fn binary_terms(l: usize, m: usize, width: usize) -> Vec<LocalTerm> {
    let mut terms: Vec<LocalTerm> = vec![(c(1.0, 0.0), vec![])];
    for t in 0..width {
        let shift = width - 1 - t;
        let (a, b) = ((l >> shift) & 1 == 1, (m >> shift) & 1 == 1);
        let f = bit_factor(a, b);
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (coef, factors) in &terms {
            for &(fc, p) in &f {
                let mut fs = factors.clone();
                if p != Pauli::I {
                    fs.push((t, p));
                }
                next.push((coef * fc, fs));
            }
        }
        terms = next;
    }
    terms
}

fn check_levels(layout: &EncodingLayout, levels: &[usize], register: usize) -> Result<()> {
    for &v in levels {
        if v >= layout.register_levels() {
            return Err(Error::IndexOutOfRange {
                index: v,
                limit: layout.register_levels(),
                context: "register level",
            });
        }
    }
    if register >= layout.n_registers() {
        return Err(Error::IndexOutOfRange {
            index: register,
            limit: layout.n_registers(),
            context: "register",
        });
    }
    Ok(())
}

fn place(layout: &EncodingLayout, register: usize, terms: Vec<LocalTerm>) -> PauliSum {
    let n = layout.n_qubits();
    let mut s = PauliSum::zero(n);
    for (coef, factors) in terms {
        let global: Vec<_> = factors
            .into_iter()
            .map(|(t, p)| (layout.qubit(register, t), p))
            .collect();
        s.add_term(
            coef,
            PauliString::from_sparse(n, &global).expect("offset within register"),
        );
    }
    s.prune(DEFAULT_TOLERANCE);
    s
}

/// `|l><m|` on register `register` of a unary layout.
pub fn encode_transition_unary(
    l: usize,
    m: usize,
    register: usize,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    if !layout.kind().is_unary() {
        return Err(Error::Unsupported(format!(
            "{} is not a unary mapping",
            layout.kind()
        )));
    }
    check_levels(layout, &[l, m], register)?;
    Ok(place(layout, register, unary_terms(l, m)))
}

/// `|l><m|` on register `register` of a binary layout.
pub fn encode_transition_binary(
    l: usize,
    m: usize,
    register: usize,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    if layout.kind().is_unary() {
        return Err(Error::Unsupported(format!(
            "{} is not a binary mapping",
            layout.kind()
        )));
    }
    check_levels(layout, &[l, m], register)?;
    Ok(place(
        layout,
        register,
        binary_terms(l, m, layout.register_width()),
    ))
}

/// `|l><m|` on one register, dispatching on the layout's mapping.
pub fn encode_transition(
    l: usize,
    m: usize,
    register: usize,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    if layout.kind().is_unary() {
        encode_transition_unary(l, m, register, layout)
    } else {
        encode_transition_binary(l, m, register, layout)
    }
}

/// Sparse operator on `arity` registers: each key lists one `(row, col)`
/// transition per register, and the term is their tensor product.
#[derive(Debug, Clone, Default)]
pub struct RegisterOperator {
    arity: usize,
    entries: FxHashMap<Vec<(usize, usize)>, Complex64>,
}

impl RegisterOperator {
    pub fn new(arity: usize) -> Self {
        RegisterOperator {
            arity,
            entries: FxHashMap::default(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, transitions: Vec<(usize, usize)>, coefficient: Complex64) {
        assert_eq!(transitions.len(), self.arity, "one transition per register");
        *self.entries.entry(transitions).or_default() += coefficient;
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[(usize, usize)], Complex64)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// Encodes onto `registers` (one per arity slot, distinct).
    pub fn encode(&self, layout: &EncodingLayout, registers: &[usize]) -> Result<PauliSum> {
        assert_eq!(registers.len(), self.arity);
        for (key, _) in self.entries() {
            for (i, &(r, c)) in key.iter().enumerate() {
                check_levels(layout, &[r, c], registers[i])?;
            }
        }
        let width = layout.register_width();
        let local_qubits = width * self.arity;
        let dense_is_cheaper = !layout.kind().is_unary()
            && local_qubits <= DENSE_DECOMPOSE_MAX_QUBITS
            && (self.entries.len() as f64) * (1u64 << local_qubits) as f64
                > (1u64 << (2 * local_qubits)) as f64;
        if dense_is_cheaper {
            Ok(self.encode_dense(layout, registers))
        } else {
            Ok(self.encode_expanded(layout, registers))
        }
    }

    /// Term-by-term expansion; per-register transition expansions are cached.
    pub fn encode_expanded(&self, layout: &EncodingLayout, registers: &[usize]) -> PauliSum {
        let n = layout.n_qubits();
        let width = layout.register_width();
        let unary = layout.kind().is_unary();
        let mut cache: FxHashMap<(usize, usize, usize), Vec<(Complex64, PauliString)>> =
            FxHashMap::default();
        let mut acc = PauliSum::zero(n);
        for (key, coef) in self.entries() {
            let mut partial: Vec<(Complex64, PauliString)> = vec![(coef, PauliString::identity(n))];
            for (i, &(row, col)) in key.iter().enumerate() {
                let reg = registers[i];
                let local = cache.entry((i, row, col)).or_insert_with(|| {
                    let terms = if unary {
                        unary_terms(row, col)
                    } else {
                        binary_terms(row, col, width)
                    };
                    terms
                        .into_iter()
                        .map(|(tc, fs)| {
                            let g: Vec<_> = fs
                                .into_iter()
                                .map(|(t, p)| (layout.qubit(reg, t), p))
                                .collect();
                            (tc, PauliString::from_sparse(n, &g).expect("in range"))
                        })
                        .collect()
                });
                let mut next = Vec::with_capacity(partial.len() * local.len());
                for (pc, ps) in &partial {
                    for (lc, ls) in local.iter() {
                        next.push((pc * lc, ps.or_disjoint(ls)));
                    }
                }
                partial = next;
            }
            for (pc, ps) in partial {
                acc.add_term(pc, ps);
            }
        }
        acc.prune(DEFAULT_TOLERANCE);
        acc
    }

    /// Builds the dense matrix on the registers' local qubits and reads off
    /// Pauli coefficients with a Walsh-Hadamard transform per x-pattern.
    pub fn encode_dense(&self, layout: &EncodingLayout, registers: &[usize]) -> PauliSum {
        let width = layout.register_width();
        let nq = width * self.arity;
        let dim = 1usize << nq;
        let mut matrix = vec![Complex64::default(); dim * dim];
        for (key, coef) in self.entries() {
            let (mut row, mut col) = (0usize, 0usize);
            for (i, &(r, c)) in key.iter().enumerate() {
                row |= (layout.level_code(r) as usize) << (i * width);
                col |= (layout.level_code(c) as usize) << (i * width);
            }
            matrix[row * dim + col] += coef;
        }
        let local_map: Vec<usize> = (0..nq)
            .map(|q| layout.qubit(registers[q / width.max(1)], q % width.max(1)))
            .collect();
        let mut out = PauliSum::zero(layout.n_qubits());
        for (coef, x, z) in pauli_decompose(nq, &matrix) {
            let mut s = PauliString::identity(layout.n_qubits());
            for (q, &g) in local_map.iter().enumerate() {
                let p = Pauli::from_bits(x >> q & 1 == 1, z >> q & 1 == 1);
                if p != Pauli::I {
                    s.set(g, p);
                }
            }
            out.add_term(coef, s);
        }
        out
    }
}

/// Pauli coefficients of a dense `2^n x 2^n` row-major matrix, returned as
/// `(coefficient, x_mask, z_mask)` with |coefficient| above the default
/// tolerance. Qubit q is bit q of the basis index.
pub fn pauli_decompose(n_qubits: usize, matrix: &[Complex64]) -> Vec<(Complex64, u64, u64)> {
    let dim = 1usize << n_qubits;
    assert_eq!(matrix.len(), dim * dim);
    let norm = 1.0 / dim as f64;
    let mut out = Vec::new();
    let mut v = vec![Complex64::default(); dim];
    for x in 0..dim {
        // Tr(P A) = i^{|x&z|} sum_k (-1)^{z.k} A[k][k^x]
        let mut any = false;
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = matrix[k * dim + (k ^ x)];
            any |= slot.norm_sqr() > 0.0;
        }
        if !any {
            continue;
        }
        walsh_hadamard(&mut v);
        for (z, &val) in v.iter().enumerate() {
            let coef = val * norm * i_pow((x & z).count_ones());
            if coef.norm() > DEFAULT_TOLERANCE {
                out.push((coef, x as u64, z as u64));
            }
        }
    }
    out
}

fn walsh_hadamard(v: &mut [Complex64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for k in start..start + h {
                let (a, b) = (v[k], v[k + h]);
                v[k] = a + b;
                v[k + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::layout::MappingKind;
    use Pauli::*;

    fn layout(kind: MappingKind, n: usize, m: usize, d: Option<usize>) -> EncodingLayout {
        EncodingLayout::new(kind, n, m, d).unwrap()
    }

    fn ps(n: usize, f: &[(usize, Pauli)]) -> PauliString {
        PauliString::from_sparse(n, f).unwrap()
    }

    #[test]
    fn unary_off_diagonal_has_four_weight_two_strings() {
        let l = layout(MappingKind::U1Q, 1, 2, None);
        let s = encode_transition_unary(0, 1, 0, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(p, _)| p.weight() == 2));
        assert_eq!(s.coefficient(&ps(2, &[(0, X), (1, X)])), c(0.25, 0.0));
        assert_eq!(s.coefficient(&ps(2, &[(0, Y), (1, Y)])), c(0.25, 0.0));
        // signs fixed by the matrix check in the oracle tests
        assert_eq!(s.coefficient(&ps(2, &[(0, X), (1, Y)])), c(0.0, 0.25));
        assert_eq!(s.coefficient(&ps(2, &[(0, Y), (1, X)])), c(0.0, -0.25));
    }

    #[test]
    fn unary_projector() {
        let l = layout(MappingKind::U1Q, 1, 2, None);
        let s = encode_transition_unary(0, 0, 0, &l).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&PauliString::identity(2)), c(0.5, 0.0));
        assert_eq!(s.coefficient(&ps(2, &[(0, Z)])), c(-0.5, 0.0));
    }

    #[test]
    fn unary_symmetric_pair_is_half_xx_plus_yy() {
        let l = layout(MappingKind::U1Q, 1, 2, None);
        let mut s = encode_transition_unary(0, 1, 0, &l).unwrap();
        s.add_sum(&encode_transition_unary(1, 0, 0, &l).unwrap())
            .unwrap();
        s.prune(1e-12);
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&ps(2, &[(0, X), (1, X)])), c(0.5, 0.0));
        assert_eq!(s.coefficient(&ps(2, &[(0, Y), (1, Y)])), c(0.5, 0.0));
    }

    #[test]
    fn binary_single_bit_raise() {
        let l = layout(MappingKind::B1Q, 1, 2, None);
        let s = encode_transition_binary(1, 0, 0, &l).unwrap();
        assert_eq!(s.coefficient(&ps(1, &[(0, X)])), c(0.5, 0.0));
        assert_eq!(s.coefficient(&ps(1, &[(0, Y)])), c(0.0, -0.5));
    }

    #[test]
    fn binary_counts_and_weights() {
        let l = layout(MappingKind::B1Q, 1, 4, None);
        // 01 -> 10: Hamming distance 2
        let s = encode_transition_binary(1, 2, 0, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(p, _)| p.weight() == 2));
        // 00 -> 01: Hamming distance 1
        let s = encode_transition_binary(0, 1, 0, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().filter(|(p, _)| p.weight() == 1).count(), 2);
        assert!(s.iter().all(|(p, _)| p.weight() <= 2));
    }

    #[test]
    fn binary_off_diagonal_always_full_count() {
        let l = layout(MappingKind::B1Q, 1, 8, None);
        for a in 0..8 {
            for b in 0..8 {
                if a == b {
                    continue;
                }
                let s = encode_transition_binary(a, b, 0, &l).unwrap();
                assert_eq!(s.len(), 8);
                let hd = (a ^ b).count_ones() as usize;
                assert!(s.iter().all(|(p, _)| p.weight() >= hd && p.weight() <= 3));
                if hd == 3 {
                    assert!(s.iter().all(|(p, _)| p.weight() == 3));
                }
            }
        }
    }

    #[test]
    fn out_of_range_levels() {
        let l = layout(MappingKind::U1Q, 2, 3, None);
        assert!(encode_transition_unary(0, 3, 0, &l).is_err());
        assert!(encode_transition_unary(0, 1, 2, &l).is_err());
        assert!(encode_transition_binary(0, 1, 0, &l).is_err());
    }

    #[test]
    fn dense_and_expanded_agree() {
        let l = layout(MappingKind::B1Q, 3, 5, None);
        let mut op = RegisterOperator::new(2);
        let mut k: f64 = 0.0;
        for a in 0..5 {
            for b in 0..5 {
                k += 0.37;
                op.add(
                    vec![(a, b), ((a + 2) % 5, (b * 3) % 5)],
                    c(k.sin(), k.cos()),
                );
            }
        }
        let e = op.encode_expanded(&l, &[2, 0]);
        let d = op.encode_dense(&l, &[2, 0]);
        assert!(e.max_abs_diff(&d) < 1e-12, "{}", e.max_abs_diff(&d));
    }
}
