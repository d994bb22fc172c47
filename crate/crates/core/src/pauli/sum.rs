use std::fmt;

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::string::{Pauli, PauliString, Phase};
use crate::error::{Error, Result};

/// Default pruning floor for collected coefficients.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Weighted sum of phase-free Pauli strings.
///
/// Phases of inserted strings are folded into the coefficients, so no two
/// stored keys are equal up to phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: FxHashMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: FxHashMap::default(),
        }
    }

    pub fn identity(n_qubits: usize, coefficient: Complex64) -> Self {
        let mut s = PauliSum::zero(n_qubits);
        s.add_term(coefficient, PauliString::identity(n_qubits));
        s
    }

    /// Sums coefficients of identical strings and drops every term whose
    /// magnitude is at most `tolerance`.
    pub fn collect<I>(n_qubits: usize, terms: I, tolerance: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        let mut s = PauliSum::zero(n_qubits);
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: p.n_qubits(),
                });
            }
            s.add_term(c, p);
        }
        s.prune(tolerance);
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * p`, folding the string's phase into the coefficient.
    /// Panics on a qubit-count mismatch; use [`PauliSum::collect`] for
    /// checked construction.
    pub fn add_term(&mut self, c: Complex64, p: PauliString) {
        assert_eq!(p.n_qubits(), self.n_qubits, "qubit count mismatch");
        let c = c * p.phase().to_complex();
        let key = if p.phase() == Phase::ONE {
            p
        } else {
            p.with_phase(Phase::ONE)
        };
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms
            .get(&p.unphased())
            .map(|c| c * p.phase().to_complex().conj())
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Terms in canonical order (see [`PauliString::canonical_cmp`]).
    pub fn sorted_terms(&self) -> Vec<(&PauliString, Complex64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(p, c)| (p, *c)).collect();
        v.sort_by(|a, b| a.0.canonical_cmp(b.0));
        v
    }

    pub fn prune(&mut self, tolerance: f64) {
        self.terms.retain(|_, c| c.norm() > tolerance);
    }

    pub fn add_sum(&mut self, other: &PauliSum) -> Result<()> {
        self.check(other)?;
        for (p, c) in &other.terms {
            *self
                .terms
                .entry(p.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &PauliSum, scale: Complex64) -> Result<()> {
        self.check(other)?;
        for (p, c) in &other.terms {
            *self
                .terms
                .entry(p.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += c * scale;
        }
        Ok(())
    }

    pub fn scaled(&self, scale: Complex64) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c * scale))
                .collect(),
        }
    }

    /// Operator product `self * other`, collected at `tolerance`.
    pub fn multiply(&self, other: &PauliSum, tolerance: f64) -> Result<PauliSum> {
        self.check(other)?;
        let mut out = PauliSum::zero(self.n_qubits);
        out.terms.reserve(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(ca * cb, a.mul_unchecked(b));
            }
        }
        out.prune(tolerance);
        Ok(out)
    }

    /// Product of sums known to act on disjoint qubit sets; skips phase
    /// bookkeeping. Debug builds assert disjointness.
    pub(crate) fn tensor_disjoint(&self, other: &PauliSum) -> PauliSum {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let mut out = PauliSum::zero(self.n_qubits);
        out.terms.reserve(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                debug_assert!(
                    a.qubitwise_commutes(b).unwrap() && {
                        let sa = a.support();
                        b.support().iter().all(|q| !sa.contains(q))
                    }
                );
                *out.terms
                    .entry(a.or_disjoint(b))
                    .or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        out
    }

    /// Hermitian adjoint. Pauli strings are Hermitian, so only the
    /// coefficients are conjugated.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.conj()))
                .collect(),
        }
    }

    /// A sum is Hermitian iff every folded coefficient is real.
    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tolerance)
    }

    /// Moves every string onto new qubits through `map` (old -> new).
    pub fn relocate(&self, map: &[usize], n_qubits: usize) -> PauliSum {
        PauliSum {
            n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.relocate(map, n_qubits), *c))
                .collect(),
        }
    }

    /// Largest coefficient difference against `other`, term by term.
    pub fn max_abs_diff(&self, other: &PauliSum) -> f64 {
        let mut m: f64 = 0.0;
        for (p, c) in &self.terms {
            let d = c - other.terms.get(p).copied().unwrap_or_default();
            m = m.max(d.norm());
        }
        for (p, c) in &other.terms {
            if !self.terms.contains_key(p) {
                m = m.max(c.norm());
            }
        }
        m
    }

    fn check(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Parses the listing produced by `Display`: one term per line,
    /// `(re+imj) P_q P_q ...`.
    pub fn parse(n_qubits: usize, text: &str) -> Result<PauliSum> {
        let mut s = PauliSum::zero(n_qubits);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let close = line
                .find(')')
                .ok_or_else(|| Error::Parse(format!("missing coefficient in {line:?}")))?;
            let coeff = parse_complex(&line[..=close])?;
            let mut factors = Vec::new();
            for tok in line[close + 1..].split_whitespace() {
                let mut chars = tok.chars();
                let sym = chars.next().and_then(Pauli::from_symbol);
                let rest: String = chars.collect();
                match sym {
                    Some(Pauli::I) if rest.is_empty() => {}
                    Some(p) => {
                        let q: usize = rest
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad factor {tok:?}")))?;
                        factors.push((q, p));
                    }
                    None => return Err(Error::Parse(format!("bad factor {tok:?}"))),
                }
            }
            s.add_term(coeff, PauliString::from_sparse(n_qubits, &factors)?);
        }
        Ok(s)
    }
}

/// Python-style complex literal, e.g. `(0.25+0j)` or `(-0-0.5j)`.
pub fn format_complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}j)", c.re, sign, c.im.abs())
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("bad coefficient {s:?}"));
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix("j)"))
        .ok_or_else(err)?;
    // split at the last sign that is not part of an exponent or leading
    let bytes = inner.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(err)?;
    let re: f64 = inner[..split].parse().map_err(|_| err())?;
    let im: f64 = inner[split..].parse().map_err(|_| err())?;
    Ok(Complex64::new(re, im))
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in self.sorted_terms() {
            writeln!(f, "{} {}", format_complex(c), p)?;
        }
        Ok(())
    }
}
