use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{IndexPolicy, SweepConfig, SweepFamily};
use crate::encodings::{encode, EncodingLayout, MappingKind, OperatorSpec};
use crate::error::{Error, Result};
use crate::models::{build_bhm, build_ho, BhmParams, Boundary, HoParams};
use crate::resources::{bhm_pbc_counts, bwcp_group_count, gate_counts, krdm_odt_counts};

pub const ENCODER_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One CSV row. Optional fields serialize as empty cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mapping: MappingKind,
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub n_qubits: Option<usize>,
    pub n_strings: Option<usize>,
    pub n_rz: Option<u64>,
    pub n_cnot: Option<u64>,
    pub n_bwcp_groups: Option<usize>,
    pub n_rz_analytic: Option<u64>,
    pub n_cnot_analytic: Option<u64>,
    pub index_policy: String,
    pub indices: String,
    pub status: String,
}

fn hamming(a: usize, b: usize) -> u32 {
    (a ^ b).count_ones()
}

/// Lexicographically first pair `(a, b)`, `a < b`, from `pool` with the
/// largest Hamming distance.
fn max_hamming_pair(pool: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(u32, usize, usize)> = None;
    for (i, &a) in pool.iter().enumerate() {
        for &b in &pool[i + 1..] {
            let h = hamming(a, b);
            if best.is_none_or(|(bh, ..)| h > bh) {
                best = Some((h, a, b));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

/// `(creators, annihilators)` of the swept k-RDM term. Register slot i
/// pairs `creators[i]` with `annihilators[k - 1 - i]`.
pub fn rdm_indices(
    family: SweepFamily,
    kind: MappingKind,
    policy: IndexPolicy,
    m: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let k = family
        .order()
        .ok_or_else(|| Error::InvalidParams(format!("{family} is not a k-RDM family")))?;
    let need = 2 * k;
    if m < need {
        return Err(Error::InvalidParams(format!("{family} needs M >= {need}")));
    }
    if kind != MappingKind::B1Q {
        return Ok(match k {
            1 => (vec![0], vec![1]),
            _ => (vec![0, 2], vec![1, 3]),
        });
    }
    let pairs = match policy {
        IndexPolicy::MinHamming => vec![(0, 1), (2, 3)],
        IndexPolicy::MaxHamming => {
            let mut pool: Vec<usize> = (0..m).collect();
            let mut out = Vec::new();
            for _ in 0..k {
                let (a, b) = max_hamming_pair(&pool).expect("enough indices");
                pool.retain(|&x| x != a && x != b);
                out.push((a, b));
            }
            out
        }
    };
    let pairs = &pairs[..k];
    let creators = pairs.iter().map(|p| p.0).collect();
    let annihilators = pairs.iter().rev().map(|p| p.1).collect();
    Ok((creators, annihilators))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Operator evaluated at one grid point, with its index label.
pub fn point_spec(
    cfg: &SweepConfig,
    kind: MappingKind,
    n: usize,
    m: usize,
) -> Result<(OperatorSpec, String)> {
    match cfg.family {
        SweepFamily::Rdm1 | SweepFamily::Rdm2 => {
            let (c, a) = rdm_indices(cfg.family, kind, cfg.b1q_index_policy, m)?;
            let label = format!("{};{}", join(&c), join(&a));
            Ok((OperatorSpec::rdm(&c, &a, cfg.symmetric), label))
        }
        SweepFamily::Bhm => {
            let p = BhmParams {
                n_sites: m,
                n_particles: n,
                hopping: cfg.hopping,
                interaction: cfg.interaction,
                boundary: cfg.boundary,
            };
            Ok((build_bhm(&p)?, String::new()))
        }
        SweepFamily::Ho => {
            let p = HoParams {
                n_modes: m,
                n_particles: n,
                omega: cfg.omega,
                g: cfg.g,
            };
            Ok((build_ho(&p)?, String::new()))
        }
    }
}

fn analytic(
    cfg: &SweepConfig,
    kind: MappingKind,
    n: usize,
    m: usize,
    d: usize,
) -> (Option<u64>, Option<u64>) {
    match cfg.family {
        SweepFamily::Rdm1 | SweepFamily::Rdm2 => {
            // binary second-quantized bound is stated for d = N + 1 only
            if kind == MappingKind::B2Q && d != n + 1 {
                return (None, None);
            }
            let k = cfg.family.order().unwrap() as u64;
            let sym = cfg.symmetric && kind.is_unary();
            let a = krdm_odt_counts(kind, n as u64, m as u64, k, d as u64, sym);
            (a.n_rz, a.n_cnot)
        }
        SweepFamily::Bhm if cfg.boundary == Boundary::Periodic && m > 2 && d == n + 1 => {
            match bhm_pbc_counts(kind, n as u64, m as u64) {
                Ok(a) => (a.n_rz, a.n_cnot),
                Err(_) => (None, None),
            }
        }
        _ => (None, None),
    }
}

/// Evaluates one grid point. Failures land in the row's status.
pub fn run_point(cfg: &SweepConfig, kind: MappingKind, n: usize, m: usize) -> SweepRow {
    let d = cfg.d.unwrap_or(n + 1);
    let mut row = SweepRow {
        mapping: kind,
        family: cfg.family.name().into(),
        n,
        m,
        k: cfg.family.order(),
        d: (!kind.is_first_quantized()).then_some(d),
        n_qubits: None,
        n_strings: None,
        n_rz: None,
        n_cnot: None,
        n_bwcp_groups: None,
        n_rz_analytic: None,
        n_cnot_analytic: None,
        index_policy: if kind == MappingKind::B1Q && cfg.family.order().is_some() {
            cfg.b1q_index_policy.to_string()
        } else {
            "fixed".into()
        },
        indices: String::new(),
        status: "ok".into(),
    };
    (row.n_rz_analytic, row.n_cnot_analytic) = analytic(cfg, kind, n, m, d);
    let result = (|| -> Result<()> {
        let layout = EncodingLayout::new(kind, n, m, Some(d))?;
        row.n_qubits = Some(layout.n_qubits());
        let (spec, label) = point_spec(cfg, kind, n, m)?;
        row.indices = label;
        let sum = encode(&spec, &layout)?;
        let r = gate_counts(&sum);
        row.n_strings = Some(r.n_strings);
        row.n_rz = Some(r.n_rz);
        row.n_cnot = Some(r.n_cnot);
        if cfg.bwcp && sum.len() <= cfg.bwcp_max_strings {
            row.n_bwcp_groups = Some(bwcp_group_count(&sum));
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.status = format!("error: {e}");
    }
    row
}

/// All rows of a sweep, evaluated in parallel and returned in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    Ok(cfg
        .grid()
        .into_par_iter()
        .map(|(kind, n, m)| run_point(cfg, kind, n, m))
        .collect())
}

/// Metadata header followed by the CSV table.
pub fn write_csv<W: Write>(cfg: &SweepConfig, rows: &[SweepRow], mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Io {
        path: "<csv>".into(),
        source: e,
    };
    let d = cfg.d.map_or("N+1".to_string(), |d| d.to_string());
    writeln!(out, "# bosonq sweep").map_err(io)?;
    writeln!(out, "# encoder_version: {ENCODER_VERSION}").map_err(io)?;
    writeln!(out, "# family: {}", cfg.family).map_err(io)?;
    writeln!(out, "# b1q_index_policy: {}", cfg.b1q_index_policy).map_err(io)?;
    writeln!(out, "# symmetric: {}", cfg.symmetric).map_err(io)?;
    writeln!(out, "# boundary: {}", cfg.boundary).map_err(io)?;
    writeln!(out, "# d: {d}").map_err(io)?;
    writeln!(
        out,
        "# params: J={} U={} omega={} g={}",
        cfg.hopping, cfg.interaction, cfg.omega, cfg.g
    )
    .map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Schema(format!("csv: {e}")))?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

/// Reads rows back, skipping `#` metadata lines.
pub fn read_csv(text: &str) -> Result<Vec<SweepRow>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(format!("csv: {e}"))))
        .collect()
}
