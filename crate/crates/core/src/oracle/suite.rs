use num_complex::Complex64;
use rayon::prelude::*;

use super::verify::{verify, VerifyReport};
use crate::encodings::{EncodingLayout, MappingKind, OperatorSpec};
use crate::error::Result;
use crate::models::{
    build_bhm, build_generic, build_ho, BhmParams, Boundary, GenericTensors, HoParams,
};

/// One (layout, operator) pair of the small verification grid.
#[derive(Debug, Clone)]
pub struct SmallCase {
    pub layout: EncodingLayout,
    pub spec: OperatorSpec,
}

fn specs_for(n: usize, m: usize, first_quantized: bool) -> Vec<OperatorSpec> {
    let mut out = Vec::new();
    let rdm = OperatorSpec::rdm;
    out.push(rdm(&[0], &[0], false));
    if m >= 2 {
        out.push(rdm(&[0], &[1], false));
        out.push(rdm(&[0], &[1], true));
        out.push(rdm(&[m - 1], &[0], true));
    }
    if !first_quantized || n >= 2 {
        out.push(rdm(&[0, 0], &[0, 0], false));
        if m >= 2 {
            out.push(rdm(&[0, 0], &[1, 1], true));
            out.push(rdm(&[0, 1], &[0, 1], false));
            out.push(rdm(&[0, 1], &[1, 0], true));
        }
        if m >= 3 {
            out.push(rdm(&[0, 1], &[2, 2], true));
        }
        if m >= 4 {
            out.push(rdm(&[0, 2], &[1, 3], false));
            out.push(rdm(&[0, 2], &[1, 3], true));
        }
    }
    for power in 1..=3 {
        out.push(OperatorSpec::NumberPower { site: m - 1, power });
        out.push(OperatorSpec::NumberFallingPower { site: 0, power });
    }
    if m >= 2 {
        out.push(OperatorSpec::DensityCorrelation { sites: vec![0, 1] });
    }
    if m >= 3 {
        out.push(OperatorSpec::DensityCorrelation {
            sites: vec![2, 0, 1],
        });
    }
    if m >= 2 {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let p = BhmParams {
                n_sites: m,
                n_particles: n,
                hopping: 1.0,
                interaction: 2.0,
                boundary,
            };
            out.push(build_bhm(&p).expect("valid BHM"));
        }
        // complex hopping plus a two-body exchange term
        let c = |re, im| Complex64::new(re, im);
        let mut h = vec![c(0.0, 0.0); m * m];
        h[0] = c(0.7, 0.0);
        h[1] = c(0.3, 0.4);
        h[m] = c(0.3, -0.4);
        let v = vec![([0, 1, 1, 0], c(0.25, 0.0)), ([1, 0, 0, 1], c(0.25, 0.0))];
        out.push(build_generic(
            &GenericTensors::new(m, h, v).expect("valid tensors"),
        ));
    }
    if m <= 3 {
        let p = HoParams {
            n_modes: m,
            n_particles: n,
            omega: 1.0,
            g: 1.0,
        };
        out.push(build_ho(&p).expect("valid HO"));
    }
    out
}

/// Every operator family on every mapping with N <= 3, M <= 4 and, for the
/// second-quantized kinds, every d in 2..=4.
pub fn small_cases() -> Vec<SmallCase> {
    let mut out = Vec::new();
    for kind in MappingKind::ALL {
        for n in 1..=3 {
            for m in 1..=4 {
                let ds: Vec<Option<usize>> = if kind.is_first_quantized() {
                    vec![None]
                } else {
                    (2..=4).map(Some).collect()
                };
                for d in ds {
                    let layout = EncodingLayout::new(kind, n, m, d).expect("valid layout");
                    for spec in specs_for(n, m, kind.is_first_quantized()) {
                        out.push(SmallCase { layout, spec });
                    }
                }
            }
        }
    }
    out
}

/// Runs `small_cases` in parallel, results in case order.
pub fn run_small_suite(tolerance: f64) -> Vec<(SmallCase, Result<VerifyReport>)> {
    small_cases()
        .into_par_iter()
        .map(|c| {
            let r = verify(&c.spec, &c.layout, tolerance);
            (c, r)
        })
        .collect()
}
