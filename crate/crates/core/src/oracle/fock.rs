use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::encodings::{EncodingLayout, OperatorSpec, Term};
use crate::error::{Error, Result};

/// Largest basis the oracle will enumerate.
pub const MAX_BASIS_STATES: usize = 1 << 20;

/// Physical basis of a layout, labelled by occupation vectors (second
/// quantized, one entry per mode in `0..d`) or by particle positions (first
/// quantized, one mode index per particle). First-quantized bases are the
/// full labelled `M^N` space, not just its symmetric part.
#[derive(Debug, Clone)]
pub struct FockBasis {
    layout: EncodingLayout,
    states: Vec<Vec<usize>>,
    index: FxHashMap<Vec<usize>, usize>,
}

impl FockBasis {
    pub fn new(layout: &EncodingLayout) -> Result<Self> {
        let (slots, levels) = if layout.kind().is_first_quantized() {
            (layout.n_particles(), layout.n_modes())
        } else {
            (layout.n_modes(), layout.d())
        };
        let size = (levels as f64).powi(slots as i32);
        if size > MAX_BASIS_STATES as f64 {
            return Err(Error::TooLarge {
                what: "basis states",
                size: size.min(usize::MAX as f64) as usize,
                limit: MAX_BASIS_STATES,
            });
        }
        let mut states = vec![vec![]];
        for _ in 0..slots {
            states = states
                .into_iter()
                .flat_map(|s| {
                    (0..levels).map(move |v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(FockBasis {
            layout: *layout,
            states,
            index,
        })
    }

    pub fn layout(&self) -> &EncodingLayout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn index_of(&self, label: &[usize]) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Computational-basis bitstring of a label (qubit q is bit q).
    pub fn embed(&self, label: &[usize]) -> u128 {
        let w = self.layout.register_width();
        label.iter().enumerate().fold(0u128, |acc, (r, &v)| {
            acc | (self.layout.level_code(v) as u128) << (r * w)
        })
    }

    /// Total particle number of a basis state.
    pub fn particle_number(&self, i: usize) -> usize {
        if self.layout.kind().is_first_quantized() {
            self.layout.n_particles()
        } else {
            self.states[i].iter().sum()
        }
    }

    /// Site occupations of a basis state.
    pub fn occupations(&self, i: usize) -> Vec<usize> {
        let s = &self.states[i];
        if self.layout.kind().is_first_quantized() {
            let mut occ = vec![0; self.layout.n_modes()];
            for &m in s {
                occ[m] += 1;
            }
            occ
        } else {
            s.clone()
        }
    }
}

/// Square complex matrix stored as a coordinate map.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    entries: FxHashMap<(usize, usize), Complex64>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            entries: FxHashMap::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&mut self, row: usize, col: usize, v: Complex64) {
        debug_assert!(row < self.dim && col < self.dim);
        *self.entries.entry((row, col)).or_default() += v;
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn adjoint(&self) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.conj()))
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &SparseMatrix, s: Complex64) {
        assert_eq!(self.dim, other.dim);
        for (&(r, c), v) in &other.entries {
            self.add(r, c, v * s);
        }
    }

    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        let mut m: f64 = 0.0;
        for (k, v) in &self.entries {
            m = m.max((v - other.entries.get(k).copied().unwrap_or_default()).norm());
        }
        for (k, v) in &other.entries {
            if !self.entries.contains_key(k) {
                m = m.max(v.norm());
            }
        }
        m
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); self.dim * self.dim];
        for (&(r, c), v) in &self.entries {
            out[r * self.dim + c] = *v;
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let mut by_row: FxHashMap<usize, Vec<(usize, Complex64)>> = FxHashMap::default();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, *v));
        }
        let mut out = SparseMatrix::zeros(self.dim);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }
}

fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Ladder product `a†_{c1}..a†_{ck} a_{a1}..a_{aq}` on an occupation vector,
/// rightmost factor first; creation past level d-1 gives zero.
fn ladder_on_occupations(
    occ: &[usize],
    creators: &[usize],
    annihilators: &[usize],
    d: usize,
) -> Option<(Vec<usize>, f64)> {
    let mut s = occ.to_vec();
    let mut amp = 1.0;
    for &j in annihilators.iter().rev() {
        if s[j] == 0 {
            return None;
        }
        amp *= (s[j] as f64).sqrt();
        s[j] -= 1;
    }
    for &j in creators.iter().rev() {
        if s[j] + 1 >= d {
            return None;
        }
        s[j] += 1;
        amp *= (s[j] as f64).sqrt();
    }
    Some((s, amp))
}

/// Ordered tuples of `k` distinct values below `n`.
fn ordered_distinct(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for v in (0..n).filter(|v| !t.contains(v)) {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// First-quantized `sum over distinct particles` of `prod_i |to_i><from_i|`.
fn transitions_on_particles(label: &[usize], pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for alphas in ordered_distinct(label.len(), pairs.len()) {
        if alphas
            .iter()
            .zip(pairs)
            .all(|(&a, &(_, from))| label[a] == from)
        {
            let mut t = label.to_vec();
            for (&a, &(to, _)) in alphas.iter().zip(pairs) {
                t[a] = to;
            }
            out.push(t);
        }
    }
    out
}

fn falling(n: usize, p: usize) -> f64 {
    if p > n {
        return 0.0;
    }
    (0..p).map(|i| (n - i) as f64).product()
}

/// Matrix of a ladder monomial on the basis (no Hermitian part).
fn ladder_matrix(
    basis: &FockBasis,
    creators: &[usize],
    annihilators: &[usize],
) -> Result<SparseMatrix> {
    let layout = basis.layout();
    let mut m = SparseMatrix::zeros(basis.len());
    if layout.kind().is_first_quantized() {
        if creators.len() != annihilators.len() {
            return Err(Error::Unsupported(
                "first-quantized mappings need particle-conserving terms".into(),
            ));
        }
        let k = creators.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .map(|i| (creators[i], annihilators[k - 1 - i]))
            .collect();
        for (col, label) in basis.states().iter().enumerate() {
            for t in transitions_on_particles(label, &pairs) {
                m.add(basis.index_of(&t).expect("in basis"), col, c1());
            }
        }
    } else {
        for (col, label) in basis.states().iter().enumerate() {
            if let Some((t, a)) = ladder_on_occupations(label, creators, annihilators, layout.d()) {
                m.add(
                    basis.index_of(&t).expect("in basis"),
                    col,
                    Complex64::new(a, 0.0),
                );
            }
        }
    }
    Ok(m)
}

fn diagonal_matrix(basis: &FockBasis, f: impl Fn(&[usize]) -> f64) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(basis.len());
    for i in 0..basis.len() {
        let v = f(&basis.occupations(i));
        if v != 0.0 {
            m.add(i, i, Complex64::new(v, 0.0));
        }
    }
    m
}

/// Exact matrix of `spec` on the physical basis, built directly from the
/// ladder-operator action on basis labels.
pub fn exact_matrix(spec: &OperatorSpec, basis: &FockBasis) -> Result<SparseMatrix> {
    spec.validate(basis.layout().n_modes())?;
    Ok(match spec {
        OperatorSpec::RdmTerm {
            creators,
            annihilators,
            symmetric,
        } => {
            let m = ladder_matrix(basis, creators, annihilators)?;
            if *symmetric {
                let mut s = m.adjoint();
                s.add_scaled(&m, c1());
                s
            } else {
                m
            }
        }
        OperatorSpec::NumberPower { site, power } => {
            diagonal_matrix(basis, |occ| (occ[*site] as f64).powi(*power as i32))
        }
        OperatorSpec::NumberFallingPower { site, power } => {
            diagonal_matrix(basis, |occ| falling(occ[*site], *power as usize))
        }
        OperatorSpec::DensityCorrelation { sites } => {
            diagonal_matrix(basis, |occ| sites.iter().map(|&j| occ[j] as f64).product())
        }
        OperatorSpec::Hamiltonian { terms } => {
            let mut h = SparseMatrix::zeros(basis.len());
            for t in terms {
                match t {
                    Term::Ladder {
                        coefficient,
                        creators,
                        annihilators,
                        plus_hc,
                    } => {
                        let m = ladder_matrix(basis, creators, annihilators)?;
                        h.add_scaled(&m, *coefficient);
                        if *plus_hc {
                            h.add_scaled(&m.adjoint(), coefficient.conj());
                        }
                    }
                    Term::FallingNumber {
                        coefficient,
                        site,
                        power,
                    } => {
                        let m = diagonal_matrix(basis, |occ| falling(occ[*site], *power as usize));
                        h.add_scaled(&m, *coefficient);
                    }
                }
            }
            h
        }
    })
}
