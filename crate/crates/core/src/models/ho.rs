use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encodings::{OperatorSpec, Term};
use crate::error::{Error, Result};

/// Interaction elements at or below this magnitude are dropped.
pub const V_DROP_TOLERANCE: f64 = 1e-12;

/// Nodes and weights of the `q`-point Gauss-Hermite rule for weight
/// `exp(-y^2)`, nodes ascending. Newton iteration on the normalized
/// Hermite recurrence.
pub fn gauss_hermite(q: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1);
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; q];
    let mut w = vec![0.0; q];
    let mut z: f64 = 0.0;
    let qf = q as f64;
    for i in 0..q.div_ceil(2) {
        // standard asymptotic starting guesses, largest root first
        z = match i {
            0 => (2.0 * qf + 1.0).sqrt() - 1.85575 * (2.0 * qf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * qf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..q {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * qf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[q - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[q - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    (x, w)
}

/// Polynomial parts `h_0..h_n` of the oscillator eigenfunctions
/// `phi_j(x) = h_j(x) exp(-x^2/2)`.
fn hermite_parts(x: f64, n: usize) -> Vec<f64> {
    let mut h = vec![0.0; n + 1];
    h[0] = PI.powf(-0.25);
    if n >= 1 {
        h[1] = 2f64.sqrt() * x * h[0];
    }
    for j in 1..n {
        let jf = j as f64;
        h[j + 1] = (2.0 / (jf + 1.0)).sqrt() * x * h[j] - (jf / (jf + 1.0)).sqrt() * h[j - 1];
    }
    h
}

/// Quadrature rule sized for indices up to `max_index`: exact for the
/// quartic integrand since 2Q - 1 >= 4 max_index.
pub struct HoQuadrature {
    max_index: usize,
    weights: Vec<f64>,
    // parts[i][j] = h_j(y_i / sqrt 2)
    parts: Vec<Vec<f64>>,
}

impl HoQuadrature {
    pub fn new(max_index: usize) -> Self {
        let (y, weights) = gauss_hermite(2 * (max_index + 1));
        let parts = y
            .iter()
            .map(|&yi| hermite_parts(yi / 2f64.sqrt(), max_index))
            .collect();
        HoQuadrature {
            max_index,
            weights,
            parts,
        }
    }

    /// `g * integral phi_k phi_l phi_m phi_n dx`.
    pub fn v(&self, k: usize, l: usize, m: usize, n: usize, g: f64) -> f64 {
        assert!(k.max(l).max(m).max(n) <= self.max_index);
        if (k + l + m + n) % 2 == 1 {
            return 0.0;
        }
        let s: f64 = self
            .weights
            .iter()
            .zip(&self.parts)
            .map(|(w, h)| w * h[k] * h[l] * h[m] * h[n])
            .sum();
        g * s / 2f64.sqrt()
    }
}

/// Contact-interaction matrix element between oscillator eigenstates.
pub fn v_klmn(k: usize, l: usize, m: usize, n: usize, g: f64) -> f64 {
    HoQuadrature::new(k.max(l).max(m).max(n)).v(k, l, m, n, g)
}

/// Bosons in a harmonic trap with contact interactions, in the oscillator
/// eigenbasis truncated to M modes (hbar = mass = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoParams {
    #[serde(rename = "M")]
    pub n_modes: usize,
    #[serde(rename = "N")]
    pub n_particles: usize,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub g: f64,
}

fn one() -> f64 {
    1.0
}

impl HoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_modes < 1 || self.n_particles < 1 {
            return Err(Error::InvalidParams("HO needs M >= 1 and N >= 1".into()));
        }
        if !self.omega.is_finite() || !self.g.is_finite() {
            return Err(Error::InvalidParams("omega and g must be finite".into()));
        }
        Ok(())
    }
}

/// Nonzero `V_klmn` over all index quadruples, in lexicographic order.
pub fn ho_interaction(n_modes: usize, g: f64) -> Vec<([usize; 4], f64)> {
    let quad = HoQuadrature::new(n_modes - 1);
    let m = n_modes;
    (0..m * m * m * m)
        .into_par_iter()
        .filter_map(|flat| {
            let idx = [
                flat / (m * m * m),
                flat / (m * m) % m,
                flat / m % m,
                flat % m,
            ];
            let v = quad.v(idx[0], idx[1], idx[2], idx[3], g);
            (v.abs() > V_DROP_TOLERANCE).then_some((idx, v))
        })
        .collect()
}

/// `sum_l omega (l + 1/2) n_l + 1/2 sum V_klmn a†_k a†_l a_m a_n`.
pub fn build_ho(p: &HoParams) -> Result<OperatorSpec> {
    p.validate()?;
    let mut terms = Vec::new();
    for l in 0..p.n_modes {
        terms.push(Term::Ladder {
            coefficient: Complex64::new(p.omega * (l as f64 + 0.5), 0.0),
            creators: vec![l],
            annihilators: vec![l],
            plus_hc: false,
        });
    }
    if p.g != 0.0 {
        for ([k, l, m, n], v) in ho_interaction(p.n_modes, p.g) {
            terms.push(super::tensors::two_body_term(
                [k, l, m, n],
                Complex64::new(v / 2.0, 0.0),
            ));
        }
    }
    Ok(OperatorSpec::Hamiltonian { terms })
}
