use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::encodings::{OperatorSpec, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Open,
    #[default]
    Periodic,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

/// One-dimensional Bose-Hubbard chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BhmParams {
    #[serde(rename = "M")]
    pub n_sites: usize,
    #[serde(rename = "N")]
    pub n_particles: usize,
    #[serde(rename = "J")]
    pub hopping: f64,
    #[serde(rename = "U")]
    pub interaction: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

impl BhmParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::InvalidParams("BHM needs M >= 2".into()));
        }
        if self.n_particles < 1 {
            return Err(Error::InvalidParams("BHM needs N >= 1".into()));
        }
        if !self.hopping.is_finite() || !self.interaction.is_finite() {
            return Err(Error::InvalidParams("J and U must be finite".into()));
        }
        Ok(())
    }

    /// Bonds `(j, j+1)`, plus `(M-1, 0)` when periodic and M > 2.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let m = self.n_sites;
        let mut b: Vec<_> = (0..m - 1).map(|j| (j, j + 1)).collect();
        if self.boundary == Boundary::Periodic && m > 2 {
            b.push((m - 1, 0));
        }
        b
    }
}

/// `-J sum_j (a†_j a_{j+1} + h.c.) + U/2 sum_j n_j(n_j - 1)`.
///
/// The on-site part is stored as falling-number terms so every mapping
/// encodes it through its diagonal form.
pub fn build_bhm(p: &BhmParams) -> Result<OperatorSpec> {
    p.validate()?;
    let mut terms = Vec::new();
    if p.hopping != 0.0 {
        for (i, j) in p.bonds() {
            terms.push(Term::Ladder {
                coefficient: Complex64::new(-p.hopping, 0.0),
                creators: vec![i],
                annihilators: vec![j],
                plus_hc: true,
            });
        }
    }
    if p.interaction != 0.0 {
        for j in 0..p.n_sites {
            terms.push(Term::FallingNumber {
                coefficient: Complex64::new(p.interaction / 2.0, 0.0),
                site: j,
                power: 2,
            });
        }
    }
    Ok(OperatorSpec::Hamiltonian { terms })
}

/// One- and two-body tensors of the BHM in the generic form
/// `sum h_kl a†_k a_l + 1/2 sum V_klmn a†_k a†_l a_m a_n`.
pub fn bhm_tensors(p: &BhmParams) -> Result<super::GenericTensors> {
    p.validate()?;
    let m = p.n_sites;
    let mut h = vec![Complex64::default(); m * m];
    for (i, j) in p.bonds() {
        h[i * m + j] += -p.hopping;
        h[j * m + i] += -p.hopping;
    }
    let v = (0..m)
        .filter(|_| p.interaction != 0.0)
        .map(|j| ([j, j, j, j], Complex64::new(p.interaction, 0.0)))
        .collect();
    super::GenericTensors::new(m, h, v)
}
