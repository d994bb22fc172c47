use std::collections::HashMap;
use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use bosonq::encodings::{encode, EncodingLayout, MappingKind, OperatorSpec, Term};
use bosonq::models::{
    bhm_tensors, build_bhm, build_generic, build_ho, ho_interaction, ingest_tensors, v_klmn,
    BhmParams, Boundary, GenericTensors, HoParams, V_DROP_TOLERANCE,
};
use bosonq::oracle::{exact_matrix, restrict, FockBasis, SparseMatrix};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Real block of `m` on the basis states `keep`.
fn block(m: &SparseMatrix, keep: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(keep.len(), keep.len(), |i, j| {
        let v = m.get(keep[i], keep[j]);
        assert!(v.im.abs() < 1e-12);
        v.re
    })
}

#[test]
fn two_site_bhm_spectrum() {
    for (j, u) in [(1.0, 2.0), (0.3, -1.1), (2.5, 0.0)] {
        let p = BhmParams {
            n_sites: 2,
            n_particles: 2,
            hopping: j,
            interaction: u,
            boundary: Boundary::Open,
        };
        // |2,0>, |1,1>, |0,2>: on-site energy U on doubly occupied sites,
        // hopping amplitude -J sqrt 2 between neighbours
        let s2 = 2f64.sqrt();
        let hand = DMatrix::from_row_slice(
            3,
            3,
            &[u, -j * s2, 0.0, -j * s2, 0.0, -j * s2, 0.0, -j * s2, u],
        );
        let expect = sorted_eigenvalues(hand);

        let spec = build_bhm(&p).unwrap();
        let layout = EncodingLayout::new(MappingKind::U2Q, 2, 2, Some(3)).unwrap();
        let basis = FockBasis::new(&layout).unwrap();
        let sector: Vec<usize> = (0..basis.len())
            .filter(|&i| basis.particle_number(i) == 2)
            .collect();
        assert_eq!(sector.len(), 3);
        let exact = sorted_eigenvalues(block(&exact_matrix(&spec, &basis).unwrap(), &sector));
        for kind in [MappingKind::U2Q, MappingKind::B2Q] {
            let layout = EncodingLayout::new(kind, 2, 2, Some(3)).unwrap();
            let basis = FockBasis::new(&layout).unwrap();
            let (encoded, _) = restrict(&encode(&spec, &layout).unwrap(), &basis).unwrap();
            let enc = sorted_eigenvalues(block(&encoded, &sector));
            for (a, b) in enc.iter().zip(&expect) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            }
        }
        for (a, b) in exact.iter().zip(&expect) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }
}

/// Normalized oscillator eigenfunctions from the physicists' Hermite
/// recurrence `H_{n+1} = 2x H_n - 2n H_{n-1}`.
fn oscillator_functions(x: f64, n_max: usize) -> Vec<f64> {
    let mut h = vec![1.0, 2.0 * x];
    for n in 1..n_max {
        h.push(2.0 * x * h[n] - 2.0 * n as f64 * h[n - 1]);
    }
    let mut fact = 1.0;
    (0..=n_max)
        .map(|n| {
            if n > 0 {
                fact *= n as f64;
            }
            h[n] * (-x * x / 2.0).exp() / (2f64.powi(n as i32) * fact * PI.sqrt()).sqrt()
        })
        .collect()
}

#[test]
fn contact_matrix_elements_match_trapezoid_rule() {
    const POINTS: usize = 10_000;
    const N_MAX: usize = 6;
    let (a, b) = (-10.0, 10.0);
    let step = (b - a) / (POINTS - 1) as f64;
    let samples: Vec<(f64, Vec<f64>)> = (0..POINTS)
        .map(|i| {
            let w = if i == 0 || i == POINTS - 1 {
                0.5 * step
            } else {
                step
            };
            (w, oscillator_functions(a + i as f64 * step, N_MAX))
        })
        .collect();
    let g = 0.7;
    let mut worst: f64 = 0.0;
    for k in 0..=N_MAX {
        for l in 0..=N_MAX {
            for m in 0..=N_MAX {
                for n in 0..=N_MAX {
                    let trap: f64 = samples
                        .iter()
                        .map(|(w, f)| w * f[k] * f[l] * f[m] * f[n])
                        .sum();
                    worst = worst.max((v_klmn(k, l, m, n, g) - g * trap).abs());
                }
            }
        }
    }
    assert!(worst < 1e-8, "worst deviation {worst:e}");
    // ground state: 1 / sqrt(2 pi)
    assert_abs_diff_eq!(
        v_klmn(0, 0, 0, 0, 1.0),
        1.0 / (2.0 * PI).sqrt(),
        epsilon = 1e-14
    );
}

/// Rebuilds the two-body tensor `V_klmn` from the terms of a built HO
/// Hamiltonian.
fn two_body_from_spec(spec: &OperatorSpec) -> HashMap<[usize; 4], f64> {
    let OperatorSpec::Hamiltonian { terms } = spec else {
        panic!("HO is a Hamiltonian")
    };
    let mut v = HashMap::new();
    for t in terms {
        match t {
            Term::Ladder {
                coefficient,
                creators,
                annihilators,
                plus_hc,
            } if creators.len() == 2 => {
                assert!(!plus_hc);
                let key = [creators[0], creators[1], annihilators[0], annihilators[1]];
                assert!(
                    v.insert(key, 2.0 * coefficient.re).is_none(),
                    "duplicate {key:?}"
                );
            }
            Term::FallingNumber {
                coefficient,
                site,
                power: 2,
            } => {
                assert!(v.insert([*site; 4], 2.0 * coefficient.re).is_none());
            }
            _ => {}
        }
    }
    v
}

#[test]
fn build_ho_keeps_every_nonzero_element() {
    for m in [1, 2, 4, 5] {
        let spec = build_ho(&HoParams {
            n_modes: m,
            n_particles: 3,
            omega: 1.0,
            g: 1.0,
        })
        .unwrap();
        let v = two_body_from_spec(&spec);
        for k in 0..m {
            for l in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        let expect = v_klmn(k, l, i, j, 1.0);
                        let got = v.get(&[k, l, i, j]).copied().unwrap_or(0.0);
                        if expect.abs() > V_DROP_TOLERANCE {
                            assert_abs_diff_eq!(got, expect, epsilon = 1e-13);
                        } else {
                            assert_eq!(got, 0.0);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn ho_term_count_four_modes() {
    // nonzero quadruples over M = 4 need an even index sum: 128 of 256,
    // none of which vanish, plus one number term per mode
    let spec = build_ho(&HoParams {
        n_modes: 4,
        n_particles: 3,
        omega: 1.0,
        g: 1.0,
    })
    .unwrap();
    let OperatorSpec::Hamiltonian { terms } = &spec else {
        panic!()
    };
    let even = (0..256usize)
        .filter(|f| (f / 64 + f / 16 % 4 + f / 4 % 4 + f % 4) % 2 == 0)
        .count();
    assert_eq!(even, 128);
    assert_eq!(ho_interaction(4, 1.0).len(), even);
    assert_eq!(terms.len(), 4 + even);
    let diag: Vec<f64> = terms[..4].iter().map(|t| t.coefficient().re).collect();
    assert_eq!(diag, [0.5, 1.5, 2.5, 3.5]);
}

#[test]
fn ho_tensor_symmetry() {
    let v: HashMap<[usize; 4], f64> = ho_interaction(4, 1.3).into_iter().collect();
    for (&[k, l, m, n], &x) in &v {
        for key in [[l, k, n, m], [m, n, k, l], [k, l, n, m], [n, l, m, k]] {
            assert_abs_diff_eq!(v[&key], x, epsilon = 1e-13);
        }
    }
}

#[test]
fn bhm_tensor_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (m, boundary) in [
        (2, Boundary::Periodic),
        (3, Boundary::Periodic),
        (5, Boundary::Open),
    ] {
        let p = BhmParams {
            n_sites: m,
            n_particles: 2,
            hopping: 0.8,
            interaction: 1.7,
            boundary,
        };
        let path = dir.path().join(format!("bhm{m}.json"));
        std::fs::write(&path, bhm_tensors(&p).unwrap().to_json()).unwrap();
        let rebuilt = build_generic(&ingest_tensors(&path).unwrap());
        assert_eq!(rebuilt.canonical(), build_bhm(&p).unwrap().canonical());
    }
}

#[test]
fn identity_one_body_is_total_number() {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let t = GenericTensors::new(2, vec![one, zero, zero, one], vec![]).unwrap();
    let layout = EncodingLayout::new(MappingKind::U2Q, 2, 2, Some(3)).unwrap();
    let basis = FockBasis::new(&layout).unwrap();
    let m = exact_matrix(&build_generic(&t), &basis).unwrap();
    for ((r, c), v) in m.iter() {
        let expect = if r == c {
            basis.particle_number(r) as f64
        } else {
            0.0
        };
        assert_abs_diff_eq!(v.re, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0);
    }
    for i in 0..basis.len() {
        assert_abs_diff_eq!(
            m.get(i, i).re,
            basis.particle_number(i) as f64,
            epsilon = 1e-12
        );
    }
}

#[test]
fn invalid_tensors_are_rejected() {
    let c = |re, im| Complex64::new(re, im);
    let non_hermitian = vec![c(1.0, 0.0), c(0.5, 0.0), c(0.4, 0.0), c(1.0, 0.0)];
    assert!(GenericTensors::new(2, non_hermitian, vec![]).is_err());
    let h = vec![c(0.0, 0.0); 4];
    assert!(GenericTensors::new(2, h.clone(), vec![([0, 1, 1, 0], c(1.0, 0.0))]).is_err());
    assert!(GenericTensors::new(
        2,
        h,
        vec![([0, 1, 1, 0], c(1.0, 0.0)), ([1, 0, 0, 1], c(1.0, 0.0))]
    )
    .is_ok());
    assert!(GenericTensors::from_json(r#"{"M":2,"h":[[1,0]],"V":[]}"#).is_err());
}
