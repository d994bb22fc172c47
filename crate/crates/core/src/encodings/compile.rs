//! Operator-level compilation: ladder operators, density powers, k-RDM
//! elements and Hamiltonians for each mapping.

use std::collections::hash_map::Entry;

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use super::layout::EncodingLayout;
use super::register::{encode_transition, RegisterOperator};
use super::spec::{OperatorSpec, Term};
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, DEFAULT_TOLERANCE};

/// Site-local second-quantized operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalOp {
    Create,
    Annihilate,
    Number,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn require_second_quantized(layout: &EncodingLayout) -> Result<()> {
    if layout.kind().is_first_quantized() {
        return Err(Error::Unsupported(format!(
            "{} has no site-local registers",
            layout.kind()
        )));
    }
    Ok(())
}

fn check_mode(j: usize, layout: &EncodingLayout) -> Result<()> {
    if j >= layout.n_modes() {
        return Err(Error::IndexOutOfRange {
            index: j,
            limit: layout.n_modes(),
            context: "mode index",
        });
    }
    Ok(())
}

/// Nonzero entries `(row, col, value)` of `(a†)^creates a^annihilates` on a
/// d-level truncated mode. Normal ordered, so only the creation steps can hit
/// the truncation.
pub fn ladder_monomial(d: usize, creates: usize, annihilates: usize) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for n in annihilates..d {
        let mid = n - annihilates;
        let target = mid + creates;
        if target >= d {
            continue;
        }
        // sqrt(n!/mid!) * sqrt(target!/mid!)
        let down: f64 = (mid + 1..=n).map(|v| v as f64).product();
        let up: f64 = (mid + 1..=target).map(|v| v as f64).product();
        out.push((target, n, (down * up).sqrt()));
    }
    out
}

fn falling(n: usize, p: usize) -> f64 {
    (0..p)
        .map(|i| n as f64 - i as f64)
        .product::<f64>()
        .max(0.0)
}

fn diagonal_operator(d: usize, f: impl Fn(usize) -> f64) -> RegisterOperator {
    let mut op = RegisterOperator::new(1);
    for n in 0..d {
        let v = f(n);
        if v != 0.0 {
            op.add(vec![(n, n)], real(v));
        }
    }
    op
}

fn monomial_operator(d: usize, creates: usize, annihilates: usize) -> RegisterOperator {
    let mut op = RegisterOperator::new(1);
    for (r, c, v) in ladder_monomial(d, creates, annihilates) {
        op.add(vec![(r, c)], real(v));
    }
    op
}

/// `a†_j`, `a_j` or `n_j` on mode register j of a second-quantized layout.
pub fn local_operator(j: usize, which: LocalOp, layout: &EncodingLayout) -> Result<PauliSum> {
    require_second_quantized(layout)?;
    check_mode(j, layout)?;
    let d = layout.d();
    let op = match which {
        LocalOp::Create => monomial_operator(d, 1, 0),
        LocalOp::Annihilate => monomial_operator(d, 0, 1),
        LocalOp::Number => diagonal_operator(d, |n| n as f64),
    };
    op.encode(layout, &[j])
}

/// `(a†_j)^power` or `(a_j)^power` as a single sum over `d - power`
/// transitions rather than a power-fold product. Empty when `power >= d`.
pub fn local_ladder_power(
    j: usize,
    which: LocalOp,
    power: usize,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    require_second_quantized(layout)?;
    check_mode(j, layout)?;
    if power == 0 {
        return Err(Error::InvalidOperator("power must be >= 1".into()));
    }
    let d = layout.d();
    let op = match which {
        LocalOp::Create => monomial_operator(d, power, 0),
        LocalOp::Annihilate => monomial_operator(d, 0, power),
        LocalOp::Number => {
            return Err(Error::InvalidOperator(
                "use number_power for powers of the density".into(),
            ))
        }
    };
    op.encode(layout, &[j])
}

/// Stirling numbers of the second kind S(k, p), p = 0..=k.
fn stirling2_row(k: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for n in 1..=k {
        let mut next = vec![0.0; n + 1];
        for p in 1..=n {
            let keep = if p < row.len() {
                p as f64 * row[p]
            } else {
                0.0
            };
            next[p] = keep + row[p - 1];
        }
        row = next;
    }
    row
}

/// Sums a `p`-register template over every ordered tuple of distinct
/// particle registers. Empty when `p > N`.
fn sum_over_distinct_registers(
    template: &RegisterOperator,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    let p = template.arity();
    let n_reg = layout.n_registers();
    let nq = layout.n_qubits();
    if p > n_reg || template.is_empty() {
        return Ok(PauliSum::zero(nq));
    }
    let first: Vec<usize> = (0..p).collect();
    let base = template.encode(layout, &first)?;
    let width = layout.register_width();
    let reg_map = |regs: &[usize]| -> Vec<usize> {
        (0..nq)
            .map(|q| {
                let (r, t) = (q / width, q % width);
                if r < p {
                    regs[r] * width + t
                } else {
                    q
                }
            })
            .collect()
    };
    // symmetrize over register permutations, then place on sorted subsets
    let mut sym = PauliSum::zero(nq);
    for perm in permutations(p) {
        sym.add_sum(&base.relocate(&reg_map(&perm), nq))?;
    }
    sym.prune(DEFAULT_TOLERANCE);
    let mut out = PauliSum::zero(nq);
    for subset in combinations(n_reg, p) {
        if subset == first {
            out.add_sum(&sym)?;
        } else {
            out.add_sum(&sym.relocate(&reg_map(&subset), nq))?;
        }
    }
    out.prune(DEFAULT_TOLERANCE);
    Ok(out)
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `n_j(n_j - 1)...(n_j - power + 1)`. First quantized this is
/// `power! * sum_{a1 > ... > ap} prod |a_i, j><a_i, j|`, binomial(N, power)
/// projector products; empty when `power > N`.
pub fn number_falling_power(site: usize, power: u32, layout: &EncodingLayout) -> Result<PauliSum> {
    check_mode(site, layout)?;
    let p = power as usize;
    if p == 0 {
        return Err(Error::InvalidOperator("power must be >= 1".into()));
    }
    if layout.kind().is_first_quantized() {
        let mut t = RegisterOperator::new(p);
        t.add(vec![(site, site); p], real(1.0));
        sum_over_distinct_registers(&t, layout)
    } else {
        diagonal_operator(layout.d(), |n| falling(n, p)).encode(layout, &[site])
    }
}

/// `(n_site)^power`. Second quantized: `sum_n n^power |n><n|` (d terms).
/// First quantized: expanded into falling powers through Stirling numbers,
/// each falling power using the projector-product form.
pub fn number_power(site: usize, power: u32, layout: &EncodingLayout) -> Result<PauliSum> {
    check_mode(site, layout)?;
    if power == 0 {
        return Err(Error::InvalidOperator("power must be >= 1".into()));
    }
    if !layout.kind().is_first_quantized() {
        return diagonal_operator(layout.d(), |n| (n as f64).powi(power as i32))
            .encode(layout, &[site]);
    }
    let stirling = stirling2_row(power as usize);
    let mut out = PauliSum::zero(layout.n_qubits());
    for (p, &s) in stirling.iter().enumerate().skip(1) {
        if s != 0.0 {
            out.add_scaled(&number_falling_power(site, p as u32, layout)?, real(s))?;
        }
    }
    out.prune(DEFAULT_TOLERANCE);
    Ok(out)
}

/// `n_{j1} ... n_{jk}` over distinct sites as a plain product of the
/// single-site density operators (d^k or N^k projector products).
pub fn density_correlation(sites: &[usize], layout: &EncodingLayout) -> Result<PauliSum> {
    OperatorSpec::DensityCorrelation {
        sites: sites.to_vec(),
    }
    .validate(layout.n_modes())?;
    let mut acc = PauliSum::identity(layout.n_qubits(), real(1.0));
    for &j in sites {
        acc = acc.multiply(&number_power(j, 1, layout)?, DEFAULT_TOLERANCE)?;
    }
    Ok(acc)
}

/// Second quantized monomial: per-site `(a†)^a a^b` encoded on each mode
/// register, tensored across registers.
fn second_quantized_monomial(
    creators: &[usize],
    annihilators: &[usize],
    layout: &EncodingLayout,
    cache: &mut FxHashMap<(usize, usize, usize), PauliSum>,
) -> Result<PauliSum> {
    let mut counts: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for &c in creators {
        counts.entry(c).or_default().0 += 1;
    }
    for &a in annihilators {
        counts.entry(a).or_default().1 += 1;
    }
    let mut acc = PauliSum::identity(layout.n_qubits(), real(1.0));
    for (site, (a, b)) in counts {
        let key = (site, a, b);
        let local = match cache.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                e.insert(monomial_operator(layout.d(), a, b).encode(layout, &[site])?)
            }
        };
        if local.is_empty() {
            return Ok(PauliSum::zero(layout.n_qubits()));
        }
        acc = acc.tensor_disjoint(local);
    }
    Ok(acc)
}

/// One-body first-quantized operator `sum_alpha |l><m|_alpha`.
fn one_body_sum(l: usize, m: usize, layout: &EncodingLayout) -> Result<PauliSum> {
    let mut s = PauliSum::zero(layout.n_qubits());
    for alpha in 0..layout.n_registers() {
        s.add_sum(&encode_transition(l, m, alpha, layout)?)?;
    }
    Ok(s)
}

/// k-RDM element `a†_{l1}..a†_{lk} a_{m1}..a_{mk}`, plus H.C. if `symmetric`.
///
/// First quantized, register i of each particle tuple carries
/// `|l_i><m_{k+1-i}|`. When all 2k indices are distinct the element equals
/// the product of the one-body sums `E(l_i, m_{k+1-i})`; coincident-register
/// terms of that product vanish on physical states, so it is used as is and
/// gives `4^k N^k` strings in U1Q. Repeated indices fall back to the sum
/// over distinct register tuples.
pub fn encode_rdm_term(
    creators: &[usize],
    annihilators: &[usize],
    symmetric: bool,
    layout: &EncodingLayout,
) -> Result<PauliSum> {
    OperatorSpec::rdm(creators, annihilators, symmetric).validate(layout.n_modes())?;
    let k = creators.len();
    let base = if layout.kind().is_first_quantized() {
        if k > layout.n_particles() {
            return Err(Error::InvalidOperator(format!(
                "{k}-body term needs at least {k} particles, layout has {}",
                layout.n_particles()
            )));
        }
        let mut all: Vec<usize> = creators.iter().chain(annihilators).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() == 2 * k {
            let mut acc = PauliSum::identity(layout.n_qubits(), real(1.0));
            for i in 0..k {
                let e = one_body_sum(creators[i], annihilators[k - 1 - i], layout)?;
                acc = acc.multiply(&e, DEFAULT_TOLERANCE)?;
            }
            acc
        } else {
            let mut t = RegisterOperator::new(k);
            t.add(
                (0..k)
                    .map(|i| (creators[i], annihilators[k - 1 - i]))
                    .collect(),
                real(1.0),
            );
            sum_over_distinct_registers(&t, layout)?
        }
    } else {
        second_quantized_monomial(creators, annihilators, layout, &mut FxHashMap::default())?
    };
    Ok(with_hc(base, symmetric))
}

fn with_hc(mut s: PauliSum, symmetric: bool) -> PauliSum {
    if symmetric {
        let adj = s.adjoint();
        s.add_sum(&adj).expect("same layout");
    }
    s.prune(DEFAULT_TOLERANCE);
    s
}

/// Hamiltonian given as a term list.
///
/// Second quantized, each term is encoded per mode register and the local
/// encodings are cached. First quantized, terms are gathered by body order
/// into one register template each, which is then summed over distinct
/// particle tuples.
pub fn encode_hamiltonian(terms: &[Term], layout: &EncodingLayout) -> Result<PauliSum> {
    let spec = OperatorSpec::Hamiltonian {
        terms: terms.to_vec(),
    };
    spec.validate(layout.n_modes())?;
    let nq = layout.n_qubits();
    let mut out = PauliSum::zero(nq);
    if layout.kind().is_first_quantized() {
        let mut templates: std::collections::BTreeMap<usize, RegisterOperator> = Default::default();
        for t in terms {
            match t {
                Term::Ladder {
                    coefficient,
                    creators,
                    annihilators,
                    plus_hc,
                } => {
                    let p = creators.len();
                    if annihilators.len() != p {
                        return Err(Error::Unsupported(
                            "first-quantized mappings need particle-conserving terms".into(),
                        ));
                    }
                    if p == 0 {
                        out.add_sum(&PauliSum::identity(
                            nq,
                            *coefficient * if *plus_hc { 2.0 } else { 1.0 },
                        ))?;
                        continue;
                    }
                    let tpl = templates
                        .entry(p)
                        .or_insert_with(|| RegisterOperator::new(p));
                    let fwd: Vec<_> = (0..p)
                        .map(|i| (creators[i], annihilators[p - 1 - i]))
                        .collect();
                    if *plus_hc {
                        let back: Vec<_> = fwd.iter().map(|&(r, c)| (c, r)).collect();
                        tpl.add(back, coefficient.conj());
                    }
                    tpl.add(fwd, *coefficient);
                }
                Term::FallingNumber {
                    coefficient,
                    site,
                    power,
                } => {
                    let p = *power as usize;
                    templates
                        .entry(p)
                        .or_insert_with(|| RegisterOperator::new(p))
                        .add(vec![(*site, *site); p], *coefficient);
                }
            }
        }
        for tpl in templates.values() {
            out.add_sum(&sum_over_distinct_registers(tpl, layout)?)?;
        }
    } else {
        let mut cache = FxHashMap::default();
        for t in terms {
            match t {
                Term::Ladder {
                    coefficient,
                    creators,
                    annihilators,
                    plus_hc,
                } => {
                    let m = second_quantized_monomial(creators, annihilators, layout, &mut cache)?;
                    out.add_scaled(&m, *coefficient)?;
                    if *plus_hc {
                        out.add_scaled(&m.adjoint(), coefficient.conj())?;
                    }
                }
                Term::FallingNumber {
                    coefficient,
                    site,
                    power,
                } => {
                    let p = *power as usize;
                    let key = (*site, p, p);
                    let local = match cache.entry(key) {
                        Entry::Occupied(e) => e.into_mut(),
                        Entry::Vacant(e) => e.insert(
                            diagonal_operator(layout.d(), |n| falling(n, p))
                                .encode(layout, &[*site])?,
                        ),
                    };
                    out.add_scaled(local, *coefficient)?;
                }
            }
        }
    }
    out.prune(DEFAULT_TOLERANCE);
    Ok(out)
}

/// Compiles any operator spec under a layout.
pub fn encode(spec: &OperatorSpec, layout: &EncodingLayout) -> Result<PauliSum> {
    match spec {
        OperatorSpec::RdmTerm {
            creators,
            annihilators,
            symmetric,
        } => encode_rdm_term(creators, annihilators, *symmetric, layout),
        OperatorSpec::NumberPower { site, power } => number_power(*site, *power, layout),
        OperatorSpec::NumberFallingPower { site, power } => {
            number_falling_power(*site, *power, layout)
        }
        OperatorSpec::DensityCorrelation { sites } => density_correlation(sites, layout),
        OperatorSpec::Hamiltonian { terms } => encode_hamiltonian(terms, layout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::layout::MappingKind::{self, *};
    use crate::pauli::{Pauli::*, PauliString};

    fn lay(kind: MappingKind, n: usize, m: usize, d: Option<usize>) -> EncodingLayout {
        EncodingLayout::new(kind, n, m, d).unwrap()
    }

    fn ps(n: usize, f: &[(usize, crate::pauli::Pauli)]) -> PauliString {
        PauliString::from_sparse(n, f).unwrap()
    }

    fn assert_coef(s: &PauliSum, p: &PauliString, re: f64) {
        let c = s.coefficient(p);
        assert!((c - real(re)).norm() < 1e-12, "{p}: {c} != {re}");
    }

    #[test]
    fn ladder_monomial_entries() {
        // a^2 on d = 3: sqrt(2) |0><2|
        assert_eq!(ladder_monomial(3, 0, 2), vec![(0, 2, 2f64.sqrt())]);
        // a^3 on d = 4: sqrt(6) |0><3|
        let e = ladder_monomial(4, 0, 3);
        assert_eq!(e.len(), 1);
        assert!((e[0].2 - 6f64.sqrt()).abs() < 1e-15);
        assert!(ladder_monomial(2, 0, 2).is_empty());
        // a† truncates at d - 1
        assert_eq!(ladder_monomial(3, 1, 0).len(), 2);
        // n(n-1) from (a†)^2 a^2
        let nn: Vec<_> = ladder_monomial(4, 2, 2)
            .into_iter()
            .map(|e| e.2.round() as i64)
            .collect();
        assert_eq!(nn, vec![2, 6]);
    }

    #[test]
    fn u2q_create_d2() {
        let l = lay(U2Q, 1, 1, Some(2));
        let s = local_operator(0, LocalOp::Create, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s
            .iter()
            .all(|(p, c)| p.weight() == 2 && (c.norm() - 0.25).abs() < 1e-15));
    }

    #[test]
    fn u2q_create_string_count_is_4_d_minus_1() {
        for d in 2..7 {
            let l = lay(U2Q, 1, 2, Some(d));
            let s = local_operator(1, LocalOp::Annihilate, &l).unwrap();
            assert_eq!(s.len(), 4 * (d - 1));
            assert!(s.iter().all(|(p, _)| p.weight() == 2));
        }
    }

    #[test]
    fn u2q_number_d3() {
        let l = lay(U2Q, 2, 1, Some(3));
        let s = local_operator(0, LocalOp::Number, &l).unwrap();
        assert_eq!(s.len(), 3);
        assert_coef(&s, &PauliString::identity(3), 1.5);
        assert_coef(&s, &ps(3, &[(1, Z)]), -0.5);
        assert_coef(&s, &ps(3, &[(2, Z)]), -1.0);
    }

    #[test]
    fn b2q_number_d2() {
        let l = lay(B2Q, 1, 1, Some(2));
        let s = local_operator(0, LocalOp::Number, &l).unwrap();
        assert_eq!(s.len(), 2);
        assert_coef(&s, &PauliString::identity(1), 0.5);
        assert_coef(&s, &ps(1, &[(0, Z)]), -0.5);
    }

    #[test]
    fn ladder_power_is_single_transition() {
        let l = lay(U2Q, 2, 1, Some(3));
        let s = local_ladder_power(0, LocalOp::Annihilate, 2, &l).unwrap();
        // sqrt(2) S+_0 S-_2: four strings with |c| = sqrt(2)/4
        assert_eq!(s.len(), 4);
        assert!(s
            .iter()
            .all(|(_, c)| (c.norm() - 2f64.sqrt() / 4.0).abs() < 1e-15));
        let l2 = lay(U2Q, 1, 1, Some(2));
        assert!(local_ladder_power(0, LocalOp::Annihilate, 2, &l2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn u1q_density_has_n_plus_one_strings() {
        let l = lay(U1Q, 3, 4, None);
        let s = number_power(2, 1, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert_coef(&s, &PauliString::identity(12), 1.5);
        for a in 0..3 {
            assert_coef(&s, &ps(12, &[(a * 4 + 2, Z)]), -0.5);
        }
    }

    #[test]
    fn u2q_density_square() {
        let l = lay(U2Q, 2, 1, Some(3));
        let s = number_power(0, 2, &l).unwrap();
        assert_eq!(s.len(), 3);
        assert_coef(&s, &PauliString::identity(3), 2.5);
        assert_coef(&s, &ps(3, &[(1, Z)]), -0.5);
        assert_coef(&s, &ps(3, &[(2, Z)]), -2.0);
    }

    #[test]
    fn u1q_falling_square_two_particles() {
        let l = lay(U1Q, 2, 1, None);
        let s = number_falling_power(0, 2, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert_coef(&s, &PauliString::identity(2), 0.5);
        assert_coef(&s, &ps(2, &[(0, Z)]), -0.5);
        assert_coef(&s, &ps(2, &[(1, Z)]), -0.5);
        assert_coef(&s, &ps(2, &[(0, Z), (1, Z)]), 0.5);
        // more factors than particles vanishes
        assert!(number_falling_power(0, 3, &l).unwrap().is_empty());
    }

    #[test]
    fn falling_projector_products_count_binomial() {
        // N = 5, p = 2: C(5,2) = 10 ZZ strings
        let l = lay(U1Q, 5, 2, None);
        let s = number_falling_power(1, 2, &l).unwrap();
        assert_eq!(s.iter().filter(|(p, _)| p.weight() == 2).count(), 10);
    }

    #[test]
    fn density_correlation_is_z_type() {
        let l = lay(U2Q, 1, 2, Some(2));
        let s = density_correlation(&[0, 1], &l).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(p, _)| p.x_words().iter().all(|&w| w == 0)));
        // single site reduces to the density
        let l = lay(B1Q, 2, 3, None);
        let a = density_correlation(&[2], &l).unwrap();
        let b = number_power(2, 1, &l).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
        assert!(density_correlation(&[1, 1], &l).is_err());
    }

    #[test]
    fn u1q_symmetric_one_rdm_counts() {
        let l = lay(U1Q, 3, 2, None);
        let s = encode_rdm_term(&[0], &[1], true, &l).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s
            .iter()
            .all(|(p, c)| p.weight() == 2 && (c.re - 0.5).abs() < 1e-15 && c.im == 0.0));
    }

    #[test]
    fn u2q_symmetric_one_rdm_single_particle() {
        let l = lay(U2Q, 1, 2, None);
        let s = encode_rdm_term(&[0], &[1], true, &l).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.iter().all(|(p, _)| p.weight() == 4));
        assert!(s.is_hermitian(1e-14));
    }

    #[test]
    fn b1q_hamming_two_rdm() {
        let l = lay(B1Q, 1, 4, None);
        let s = encode_rdm_term(&[0], &[3], false, &l).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(p, _)| p.weight() == 2));
    }

    #[test]
    fn first_quantized_k_above_n_rejected() {
        let l = lay(U1Q, 1, 4, None);
        assert!(encode_rdm_term(&[0, 1], &[2, 3], false, &l).is_err());
    }

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling2_row(3), vec![0.0, 1.0, 3.0, 1.0]);
        assert_eq!(stirling2_row(4), vec![0.0, 1.0, 7.0, 6.0, 1.0]);
    }

    #[test]
    fn combinatorics_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
