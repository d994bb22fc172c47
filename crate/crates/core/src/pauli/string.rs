use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Symplectic (x, z) bits. Y is stored as its own symbol, not as XZ.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Overall phase `i^k`, k in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        i_pow(self.0 as u32)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub(crate) fn words_for(n_qubits: usize) -> usize {
    n_qubits.div_ceil(64)
}

/// Tensor product of single-qubit Paulis with an overall phase, stored in
/// symplectic form: `bits[..w]` is the x-part, `bits[w..]` the z-part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    bits: Box<[u64]>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            n_qubits,
            bits: vec![0; 2 * words_for(n_qubits)].into_boxed_slice(),
            phase: Phase::ONE,
        }
    }

    /// Dense constructor: `factors[q]` acts on qubit q.
    pub fn from_paulis(factors: &[Pauli]) -> Self {
        let mut s = PauliString::identity(factors.len());
        for (q, &p) in factors.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    /// Sparse constructor from `(qubit, factor)` pairs. Later pairs overwrite
    /// earlier ones on the same qubit.
    pub fn from_sparse(n_qubits: usize, factors: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = PauliString::identity(n_qubits);
        for &(q, p) in factors {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            s.set(q, p);
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// The same string with phase +1.
    pub fn unphased(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    pub fn x_words(&self) -> &[u64] {
        &self.bits[..self.bits.len() / 2]
    }

    pub fn z_words(&self) -> &[u64] {
        &self.bits[self.bits.len() / 2..]
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let (w, b) = (q / 64, q % 64);
        let x = self.x_words()[w] >> b & 1 == 1;
        let z = self.z_words()[w] >> b & 1 == 1;
        Pauli::from_bits(x, z)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let half = self.bits.len() / 2;
        let (w, b) = (q / 64, q % 64);
        let (x, z) = p.bits();
        let mask = 1u64 << b;
        self.bits[w] = (self.bits[w] & !mask) | if x { mask } else { 0 };
        self.bits[half + w] = (self.bits[half + w] & !mask) | if z { mask } else { 0 };
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x_words()
            .iter()
            .zip(self.z_words())
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Qubits carrying a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, (x, z)) in self.x_words().iter().zip(self.z_words()).enumerate() {
            let mut m = x | z;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                m &= m - 1;
            }
        }
        out
    }

    /// `(qubit, factor)` pairs over the support.
    pub fn factors(&self) -> Vec<(usize, Pauli)> {
        self.support()
            .into_iter()
            .map(|q| (q, self.get(q)))
            .collect()
    }

    /// Number of Y factors; the string equals `phase * i^ny * X^x Z^z`.
    pub(crate) fn y_count(&self) -> u32 {
        self.x_words()
            .iter()
            .zip(self.z_words())
            .map(|(x, z)| (x & z).count_ones())
            .sum()
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliString) -> PauliString {
        // Write each string as i^{ny} X^x Z^z. Moving Z^{z1} past X^{x2} costs
        // (-1)^{|z1 & x2|}; the product's own Y factors absorb i^{ny3}.
        let (x1, z1) = (self.x_words(), self.z_words());
        let (x2, z2) = (other.x_words(), other.z_words());
        let w = x1.len();
        let mut bits = Vec::with_capacity(2 * w);
        let mut exp: u32 = self.phase.0 as u32 + other.phase.0 as u32;
        exp += self.y_count() + other.y_count();
        let mut anti = 0u32;
        let mut y3 = 0u32;
        for i in 0..w {
            let x = x1[i] ^ x2[i];
            bits.push(x);
            anti += (z1[i] & x2[i]).count_ones();
        }
        for i in 0..w {
            let z = z1[i] ^ z2[i];
            y3 += (bits[i] & z).count_ones();
            bits.push(z);
        }
        exp += 2 * anti;
        // subtract y3 modulo 4
        exp += 4 * (y3 / 4 + 1) - y3;
        PauliString {
            n_qubits: self.n_qubits,
            bits: bits.into_boxed_slice(),
            phase: Phase::from_exponent(exp),
        }
    }

    /// Tensor product of strings with disjoint supports; no phase arises.
    pub(crate) fn or_disjoint(&self, other: &PauliString) -> PauliString {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(a, b)| a | b)
            .collect();
        PauliString {
            n_qubits: self.n_qubits,
            bits: bits.into_boxed_slice(),
            phase: self.phase * other.phase,
        }
    }

    /// True iff on every qubit the factors are equal or one is the identity.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        let (x1, z1) = (self.x_words(), self.z_words());
        let (x2, z2) = (other.x_words(), other.z_words());
        Ok((0..x1.len()).all(|i| {
            let both = (x1[i] | z1[i]) & (x2[i] | z2[i]);
            ((x1[i] ^ x2[i]) | (z1[i] ^ z2[i])) & both == 0
        }))
    }

    /// Full (not qubit-wise) commutation via the symplectic form.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        let (x1, z1) = (self.x_words(), self.z_words());
        let (x2, z2) = (other.x_words(), other.z_words());
        let n: u32 = (0..x1.len())
            .map(|i| (x1[i] & z2[i]).count_ones() + (z1[i] & x2[i]).count_ones())
            .sum();
        Ok(n.is_multiple_of(2))
    }

    /// Moves factor on qubit q to `map[q]` in a string of `n_qubits` qubits.
    pub fn relocate(&self, map: &[usize], n_qubits: usize) -> PauliString {
        let mut out = PauliString::identity(n_qubits).with_phase(self.phase);
        for (q, p) in self.factors() {
            out.set(map[q], p);
        }
        out
    }

    /// Canonical order: weight, then the ascending `(qubit, symbol)` sequence
    /// of the support compared lexicographically (X < Y < Z). Phase is ignored.
    pub fn canonical_cmp(&self, other: &PauliString) -> Ordering {
        let by_weight = self.weight().cmp(&other.weight());
        if by_weight != Ordering::Equal {
            return by_weight;
        }
        let (x1, z1) = (self.x_words(), self.z_words());
        let (x2, z2) = (other.x_words(), other.z_words());
        for i in 0..x1.len() {
            let diff = (x1[i] ^ x2[i]) | (z1[i] ^ z2[i]);
            if diff == 0 {
                continue;
            }
            let q = i * 64 + diff.trailing_zeros() as usize;
            let (a, b) = (self.get(q), other.get(q));
            // The side with the identity has its next support entry further
            // right, so it sorts after.
            return match (a, b) {
                (Pauli::I, _) => Ordering::Greater,
                (_, Pauli::I) => Ordering::Less,
                _ => a.cmp(&b),
            };
        }
        Ordering::Equal
    }
}

impl fmt::Display for PauliString {
    /// Sparse form, e.g. `X0 Y3`; the identity prints as `I`. Phase is not shown.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return write!(f, "I");
        }
        for (i, (q, p)) in factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p.symbol(), q)?;
        }
        Ok(())
    }
}
