use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::encodings::{ceil_log2, qubit_count, MappingKind};
use crate::error::{Error, Result};

/// Closed-form families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Qubit count per mapping.
    Qubits,
    /// One k-RDM off-diagonal term with all indices distinct.
    KrdmOdt,
    /// Bose-Hubbard chain with periodic boundaries.
    BhmPbc,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "qubits" => Ok(Family::Qubits),
            "krdmodt" => Ok(Family::KrdmOdt),
            "bhmpbc" => Ok(Family::BhmPbc),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Qubits => "qubits",
            Family::KrdmOdt => "kRDM_ODT",
            Family::BhmPbc => "BHM_PBC",
        })
    }
}

/// Predicted counts. `exact` is false for the binary upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticCounts {
    pub n_qubits: Option<u64>,
    pub n_rz: Option<u64>,
    pub n_cnot: Option<u64>,
    pub exact: bool,
}

fn pow(b: u64, e: u64) -> u64 {
    b.checked_pow(e as u32)
        .expect("closed-form count overflows u64")
}

/// Strings and CNOTs of one k-RDM ODT. Unary kinds are exact; binary kinds
/// give the string-count and string-length upper bounds. `d` only matters
/// for U2Q (the binary second-quantized bound assumes d = N + 1).
pub fn krdm_odt_counts(
    kind: MappingKind,
    n: u64,
    m: u64,
    k: u64,
    d: u64,
    symmetric: bool,
) -> AnalyticCounts {
    let halve = |x: u64| if symmetric { x / 2 } else { x };
    match kind {
        MappingKind::U1Q => {
            let strings = pow(4, k) * pow(n, k);
            AnalyticCounts {
                n_qubits: Some(n * m),
                n_rz: Some(halve(strings)),
                n_cnot: Some(halve(2 * (2 * k - 1) * strings)),
                exact: true,
            }
        }
        MappingKind::U2Q => {
            let strings = pow(4 * (d - 1), 2 * k);
            AnalyticCounts {
                n_qubits: Some(m * d),
                n_rz: Some(halve(strings)),
                n_cnot: Some(halve(2 * (4 * k - 1) * strings)),
                exact: true,
            }
        }
        MappingKind::B1Q => {
            let w = ceil_log2(m as usize) as u64;
            let strings = pow(2, k * w) * pow(n, k);
            let len = k * w;
            AnalyticCounts {
                n_qubits: Some(n * w),
                n_rz: Some(strings),
                n_cnot: Some(strings * 2 * len.saturating_sub(1)),
                exact: false,
            }
        }
        MappingKind::B2Q => {
            let w = ceil_log2(n as usize + 1) as u64;
            let strings = pow(2, 2 * k * w) * pow(n, 2 * k);
            let len = 2 * k * w;
            AnalyticCounts {
                n_qubits: Some(m * w),
                n_rz: Some(strings),
                n_cnot: Some(strings * 2 * len.saturating_sub(1)),
                exact: false,
            }
        }
    }
}

/// Periodic BHM counts for the unary mappings:
/// U1Q `2MN + MN(N-1)/2` Rz and `4MN + MN(N-1)` CNOT,
/// U2Q `8MN^2 + M(N+1)` Rz and `48MN^2` CNOT.
pub fn bhm_pbc_counts(kind: MappingKind, n: u64, m: u64) -> Result<AnalyticCounts> {
    let (rz, cnot) = match kind {
        MappingKind::U1Q => (2 * m * n + m * n * (n - 1) / 2, 4 * m * n + m * n * (n - 1)),
        MappingKind::U2Q => (8 * m * n * n + m * (n + 1), 48 * m * n * n),
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form BHM count for {kind}"
            )))
        }
    };
    Ok(AnalyticCounts {
        n_qubits: Some(qubit_count(kind, n as usize, m as usize) as u64),
        n_rz: Some(rz),
        n_cnot: Some(cnot),
        exact: true,
    })
}

/// Dispatcher over the closed-form families. `k` and `d` are ignored where
/// they do not apply; `d = None` means N + 1.
pub fn analytic_counts(
    family: Family,
    kind: MappingKind,
    n: usize,
    m: usize,
    k: usize,
    d: Option<usize>,
) -> Result<AnalyticCounts> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParams("N and M must be >= 1".into()));
    }
    let (n64, m64) = (n as u64, m as u64);
    match family {
        Family::Qubits => {
            let q = match (kind.is_first_quantized(), d) {
                (false, Some(d)) if kind.is_unary() => m * d,
                (false, Some(d)) => m * ceil_log2(d),
                _ => qubit_count(kind, n, m),
            };
            Ok(AnalyticCounts {
                n_qubits: Some(q as u64),
                n_rz: None,
                n_cnot: None,
                exact: true,
            })
        }
        Family::KrdmOdt => {
            if k < 1 {
                return Err(Error::InvalidParams("k must be >= 1".into()));
            }
            let d = d.unwrap_or(n + 1) as u64;
            Ok(krdm_odt_counts(kind, n64, m64, k as u64, d, false))
        }
        Family::BhmPbc => bhm_pbc_counts(kind, n64, m64),
    }
}

/// U2Q over U1Q CNOT ratio for a k-RDM ODT with d = N + 1:
/// `(4 - 1/k) / (2 - 1/k) * (4N)^k`.
pub fn krdm_cnot_ratio(n: usize, k: usize) -> f64 {
    let kf = k as f64;
    (4.0 - 1.0 / kf) / (2.0 - 1.0 / kf) * (4.0 * n as f64).powi(k as i32)
}

/// Reference U2Q/U1Q ratio formulas for the periodic BHM, `(Rz, CNOT)`:
/// `16 - 16 (2N-1) / (N(N+3))` and `48 - 144N / (N(N+3))`.
pub fn bhm_ratio_formulas(n: usize) -> (f64, f64) {
    let n = n as f64;
    (
        16.0 - 16.0 * (2.0 * n - 1.0) / (n * (n + 3.0)),
        48.0 - 144.0 * n / (n * (n + 3.0)),
    )
}

/// Ratios of the periodic BHM count formulas themselves, `(Rz, CNOT)`.
pub fn bhm_count_ratios(n: usize, m: usize) -> (f64, f64) {
    let u1 = bhm_pbc_counts(MappingKind::U1Q, n as u64, m as u64).expect("unary");
    let u2 = bhm_pbc_counts(MappingKind::U2Q, n as u64, m as u64).expect("unary");
    (
        u2.n_rz.unwrap() as f64 / u1.n_rz.unwrap() as f64,
        u2.n_cnot.unwrap() as f64 / u1.n_cnot.unwrap() as f64,
    )
}

/// U1Q CNOT count of a k-RDM ODT as a real function.
fn cnot_u1q(n: f64, k: i32) -> f64 {
    2.0 * (2.0 * k as f64 - 1.0) * 4f64.powi(k) * n.powi(k)
}

/// U2Q CNOT count of a k-RDM ODT as a real function of the truncation d.
fn cnot_u2q(d: f64, k: i32) -> f64 {
    2.0 * (4.0 * k as f64 - 1.0) * (4.0 * (d - 1.0)).powi(2 * k)
}

/// Real truncation d at which the U2Q CNOT count of a k-RDM ODT equals the
/// U1Q count for N particles. Solved by bisection on the count equality.
pub fn break_even_d(n: usize, k: usize) -> Result<f64> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParams("N and k must be >= 1".into()));
    }
    let (nf, k) = (n as f64, k as i32);
    let target = cnot_u1q(nf, k);
    let (mut lo, mut hi) = (1.0, 2.0);
    while cnot_u2q(hi, k) < target {
        hi = 1.0 + 2.0 * (hi - 1.0);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cnot_u2q(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
