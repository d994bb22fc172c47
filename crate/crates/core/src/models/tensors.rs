use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::encodings::{OperatorSpec, Term};
use crate::error::{Error, Result};

/// Tolerance for the Hermiticity and exchange-symmetry checks.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Generic one- and two-body coefficients: `h` is row-major M x M, `v` a
/// sparse list of `(k, l, m, n)` entries (duplicates summed).
#[derive(Debug, Clone, PartialEq)]
pub struct GenericTensors {
    n_modes: usize,
    h: Vec<Complex64>,
    v: Vec<([usize; 4], Complex64)>,
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    #[serde(rename = "M")]
    n_modes: usize,
    h: Value,
    #[serde(rename = "V", default)]
    v: Vec<[f64; 6]>,
}

fn parse_pair(v: &Value) -> Option<Complex64> {
    let a = v.as_array()?;
    match a.as_slice() {
        [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

/// Accepts a flat list of `M*M` `[re, im]` pairs or an M x M nested list.
fn parse_h(value: &Value, m: usize) -> Result<Vec<Complex64>> {
    let bad = || Error::Schema("h must be M*M [re, im] pairs, flat or nested by row".into());
    let rows = value.as_array().ok_or_else(bad)?;
    let flat: Vec<&Value> = if rows.len() == m && rows.iter().all(|r| parse_pair(r).is_none()) {
        rows.iter()
            .map(|r| r.as_array().filter(|r| r.len() == m).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect()
    } else {
        rows.iter().collect()
    };
    if flat.len() != m * m {
        return Err(bad());
    }
    flat.into_iter()
        .map(|p| parse_pair(p).ok_or_else(bad))
        .collect()
}

fn index(x: f64, m: usize) -> Result<usize> {
    if x.fract() != 0.0 || x < 0.0 || x >= m as f64 {
        return Err(Error::Schema(format!(
            "V index {x} is not an integer in [0, {m})"
        )));
    }
    Ok(x as usize)
}

impl GenericTensors {
    /// Validates shape, Hermiticity of `h` and `V_klmn = V_lknm`.
    pub fn new(n_modes: usize, h: Vec<Complex64>, v: Vec<([usize; 4], Complex64)>) -> Result<Self> {
        let m = n_modes;
        if m < 1 {
            return Err(Error::Schema("M must be >= 1".into()));
        }
        if h.len() != m * m {
            return Err(Error::Schema(format!(
                "h has {} entries, expected {}",
                h.len(),
                m * m
            )));
        }
        for k in 0..m {
            for l in 0..m {
                let d = (h[k * m + l] - h[l * m + k].conj()).norm();
                if d > SYMMETRY_TOLERANCE {
                    return Err(Error::Schema(format!(
                        "h is not Hermitian: |h[{k}][{l}] - conj(h[{l}][{k}])| = {d:.3e}"
                    )));
                }
            }
        }
        let mut merged: std::collections::BTreeMap<[usize; 4], Complex64> = Default::default();
        for (idx, c) in v {
            if let Some(&bad) = idx.iter().find(|&&i| i >= m) {
                return Err(Error::Schema(format!(
                    "V index {bad} out of range for M = {m}"
                )));
            }
            *merged.entry(idx).or_default() += c;
        }
        for (&[k, l, mm, n], c) in &merged {
            let partner = merged.get(&[l, k, n, mm]).copied().unwrap_or_default();
            let d = (c - partner).norm();
            if d > SYMMETRY_TOLERANCE {
                return Err(Error::Schema(format!(
                    "V[{k},{l},{mm},{n}] != V[{l},{k},{n},{mm}] (difference {d:.3e})"
                )));
            }
        }
        Ok(GenericTensors {
            n_modes: m,
            h,
            v: merged.into_iter().collect(),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn h(&self, k: usize, l: usize) -> Complex64 {
        self.h[k * self.n_modes + l]
    }

    pub fn v_entries(&self) -> &[([usize; 4], Complex64)] {
        &self.v
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: TensorFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("tensor file: {e}")))?;
        let h = parse_h(&f.h, f.n_modes)?;
        let v =
            f.v.iter()
                .map(|e| {
                    let idx = [
                        index(e[0], f.n_modes)?,
                        index(e[1], f.n_modes)?,
                        index(e[2], f.n_modes)?,
                        index(e[3], f.n_modes)?,
                    ];
                    Ok((idx, Complex64::new(e[4], e[5])))
                })
                .collect::<Result<Vec<_>>>()?;
        GenericTensors::new(f.n_modes, h, v)
    }

    /// Flat-`h` JSON document readable by [`ingest_tensors`].
    pub fn to_json(&self) -> String {
        let f = TensorFile {
            n_modes: self.n_modes,
            h: Value::Array(
                self.h
                    .iter()
                    .map(|c| serde_json::json!([c.re, c.im]))
                    .collect(),
            ),
            v: self
                .v
                .iter()
                .map(|([k, l, m, n], c)| [*k as f64, *l as f64, *m as f64, *n as f64, c.re, c.im])
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("tensors serialize")
    }
}

/// Reads and validates a tensor file.
pub fn ingest_tensors(path: impl AsRef<Path>) -> Result<GenericTensors> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    GenericTensors::from_json(&text)
}

/// `c a†_k a†_l a_m a_n`; the all-equal case becomes `c n_k(n_k - 1)`.
pub(crate) fn two_body_term([k, l, m, n]: [usize; 4], c: Complex64) -> Term {
    if k == l && l == m && m == n {
        Term::FallingNumber {
            coefficient: c,
            site: k,
            power: 2,
        }
    } else {
        Term::Ladder {
            coefficient: c,
            creators: vec![k, l],
            annihilators: vec![m, n],
            plus_hc: false,
        }
    }
}

/// `sum h_kl a†_k a_l + 1/2 sum V_klmn a†_k a†_l a_m a_n`. Off-diagonal `h`
/// pairs become one Hermitian-pair term each.
pub fn build_generic(t: &GenericTensors) -> OperatorSpec {
    let m = t.n_modes;
    let mut terms = Vec::new();
    for k in 0..m {
        for l in k..m {
            let c = t.h(k, l);
            if c.norm() <= super::ho::V_DROP_TOLERANCE {
                continue;
            }
            terms.push(Term::Ladder {
                coefficient: c,
                creators: vec![k],
                annihilators: vec![l],
                plus_hc: k != l,
            });
        }
    }
    for &(idx, c) in &t.v {
        if c.norm() > super::ho::V_DROP_TOLERANCE {
            terms.push(two_body_term(idx, c / 2.0));
        }
    }
    OperatorSpec::Hamiltonian { terms }
}
