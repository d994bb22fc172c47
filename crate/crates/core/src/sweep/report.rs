use std::collections::BTreeMap;
use std::fmt::Write;

use super::run::SweepRow;
use crate::encodings::MappingKind;

/// (family, N, numerator mapping, Rz range, CNOT range).
type Reference = (&'static str, usize, MappingKind, (f64, f64), (f64, f64));

/// Reference ratio ranges shown alongside measured ones.
const REFERENCE: &[Reference] = &[
    ("bhm", 3, MappingKind::U2Q, (9.9, 9.9), (24.0, 24.0)),
    ("bhm", 16, MappingKind::U2Q, (14.4, 14.4), (40.4, 40.4)),
    ("ho", 3, MappingKind::U2Q, (106.0, 190.0), (130.0, 223.0)),
    ("ho", 3, MappingKind::B2Q, (12.0, 31.0), (14.0, 36.0)),
];

/// Relative slack used for the informational flag.
const SLACK: f64 = 0.25;

fn range(v: &[f64]) -> Option<(f64, f64)> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (!v.is_empty()).then_some((lo, hi))
}

fn overlaps(measured: (f64, f64), reference: (f64, f64)) -> bool {
    measured.0 <= reference.1 * (1.0 + SLACK) && measured.1 >= reference.0 * (1.0 - SLACK)
}

/// Per-M ratios of `numerator` over U1Q for one family and N, as
/// `(M, rz ratio, cnot ratio)`.
pub fn ratios_to_u1q(
    rows: &[SweepRow],
    family: &str,
    n: usize,
    numerator: MappingKind,
) -> Vec<(usize, f64, f64)> {
    let mut base: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    let mut num: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.family == family && r.n == n) {
        let (Some(rz), Some(cx)) = (r.n_rz, r.n_cnot) else {
            continue;
        };
        if r.mapping == MappingKind::U1Q {
            base.insert(r.m, (rz, cx));
        }
        if r.mapping == numerator {
            num.insert(r.m, (rz, cx));
        }
    }
    num.iter()
        .filter_map(|(m, &(rz, cx))| {
            let &(brz, bcx) = base.get(m)?;
            (brz > 0 && bcx > 0).then(|| (*m, rz as f64 / brz as f64, cx as f64 / bcx as f64))
        })
        .collect()
}

/// Measured ratio ranges next to the reference ones. Informational only:
/// the reference values depend on conventions the sweep does not fix.
pub fn reproduction_report(rows: &[SweepRow]) -> String {
    let mut s = String::from("# ratio reproduction (informational)\n");
    for &(family, n, kind, p_rz, p_cx) in REFERENCE {
        let r = ratios_to_u1q(rows, family, n, kind);
        if r.is_empty() {
            continue;
        }
        let rz: Vec<f64> = r.iter().map(|x| x.1).collect();
        let cx: Vec<f64> = r.iter().map(|x| x.2).collect();
        let (m_rz, m_cx) = (range(&rz).unwrap(), range(&cx).unwrap());
        let flag = if overlaps(m_rz, p_rz) && overlaps(m_cx, p_cx) {
            "within 25%"
        } else {
            "outside 25%"
        };
        let _ = writeln!(
            s,
            "{family} N={n} {kind}/U1Q over M={}..{}: Rz {:.1}-{:.1} (reference {}-{}), CNOT {:.1}-{:.1} (reference {}-{}) [{flag}]",
            r.first().unwrap().0,
            r.last().unwrap().0,
            m_rz.0,
            m_rz.1,
            p_rz.0,
            p_rz.1,
            m_cx.0,
            m_cx.1,
            p_cx.0,
            p_cx.1,
        );
    }
    s
}
