//! Hamiltonian builders and the JSON operator documents accepted by the CLI.

mod bhm;
mod ho;
mod tensors;

pub use bhm::{bhm_tensors, build_bhm, BhmParams, Boundary};
pub use ho::{
    build_ho, gauss_hermite, ho_interaction, v_klmn, HoParams, HoQuadrature, V_DROP_TOLERANCE,
};
pub use tensors::{build_generic, ingest_tensors, GenericTensors, SYMMETRY_TOLERANCE};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::encodings::OperatorSpec;
use crate::error::{Error, Result};

/// Model documents, tagged by `"model"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Bhm(BhmParams),
    Ho(HoParams),
    Tensors { path: String },
}

impl ModelSpec {
    pub fn build(&self) -> Result<OperatorSpec> {
        match self {
            ModelSpec::Bhm(p) => build_bhm(p),
            ModelSpec::Ho(p) => build_ho(p),
            ModelSpec::Tensors { path } => Ok(build_generic(&ingest_tensors(path)?)),
        }
    }

    /// Particle count carried by the document, if any.
    pub fn n_particles(&self) -> Option<usize> {
        match self {
            ModelSpec::Bhm(p) => Some(p.n_particles),
            ModelSpec::Ho(p) => Some(p.n_particles),
            ModelSpec::Tensors { .. } => None,
        }
    }

    /// Mode count carried by the document, if any.
    pub fn n_modes(&self) -> Option<usize> {
        match self {
            ModelSpec::Bhm(p) => Some(p.n_sites),
            ModelSpec::Ho(p) => Some(p.n_modes),
            ModelSpec::Tensors { .. } => None,
        }
    }
}

/// Either an operator (`"kind"` key) or a model (`"model"` key).
#[derive(Debug, Clone, PartialEq)]
pub enum SpecDocument {
    Operator(OperatorSpec),
    Model(ModelSpec),
}

impl SpecDocument {
    /// Parses JSON. `"kind": "rdm_term_symmetric"` is read as `rdm_term`
    /// with `symmetric: true`, and `"kind": "number"` as `number_power`
    /// with `power` defaulting to 1.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut v: Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
        let obj = v
            .as_object_mut()
            .ok_or_else(|| Error::Schema("spec must be a JSON object".into()))?;
        if obj.contains_key("model") {
            return serde_json::from_value(v)
                .map(SpecDocument::Model)
                .map_err(|e| Error::Schema(format!("model document: {e}")));
        }
        if obj.get("kind").and_then(Value::as_str) == Some("rdm_term_symmetric") {
            obj.insert("kind".into(), Value::from("rdm_term"));
            obj.insert("symmetric".into(), Value::from(true));
        }
        if obj.get("kind").and_then(Value::as_str) == Some("number") {
            obj.insert("kind".into(), Value::from("number_power"));
            obj.entry("power").or_insert(Value::from(1));
        }
        if !obj.contains_key("kind") {
            return Err(Error::Schema(
                "spec needs a \"kind\" or \"model\" field".into(),
            ));
        }
        serde_json::from_value(v)
            .map(SpecDocument::Operator)
            .map_err(|e| Error::Schema(format!("operator spec: {e}")))
    }

    pub fn build(&self) -> Result<OperatorSpec> {
        match self {
            SpecDocument::Operator(s) => Ok(s.clone()),
            SpecDocument::Model(m) => m.build(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::Term;
    use num_complex::Complex64;

    fn bhm(m: usize, boundary: Boundary) -> BhmParams {
        BhmParams {
            n_sites: m,
            n_particles: 2,
            hopping: 1.0,
            interaction: 2.0,
            boundary,
        }
    }

    #[test]
    fn bhm_periodic_ring() {
        let OperatorSpec::Hamiltonian { terms } = build_bhm(&bhm(3, Boundary::Periodic)).unwrap()
        else {
            panic!()
        };
        let hops: Vec<_> = terms
            .iter()
            .filter_map(|t| match t {
                Term::Ladder {
                    creators,
                    annihilators,
                    plus_hc: true,
                    ..
                } => Some((creators[0], annihilators[0])),
                _ => None,
            })
            .collect();
        assert_eq!(hops, vec![(0, 1), (1, 2), (2, 0)]);
        let onsite = terms
            .iter()
            .filter(|t| matches!(t, Term::FallingNumber { power: 2, .. }))
            .count();
        assert_eq!(onsite, 3);
    }

    #[test]
    fn bhm_two_sites_boundary_irrelevant() {
        assert_eq!(
            build_bhm(&bhm(2, Boundary::Periodic)).unwrap(),
            build_bhm(&bhm(2, Boundary::Open)).unwrap()
        );
        assert!(build_bhm(&bhm(1, Boundary::Open)).is_err());
    }

    #[test]
    fn bhm_without_interaction_is_hopping_only() {
        let mut p = bhm(4, Boundary::Open);
        p.interaction = 0.0;
        let OperatorSpec::Hamiltonian { terms } = build_bhm(&p).unwrap() else {
            panic!()
        };
        assert_eq!(terms.len(), 3);
        assert!(terms.iter().all(|t| matches!(t, Term::Ladder { .. })));
    }

    #[test]
    fn bhm_tensor_round_trip() {
        for boundary in [Boundary::Open, Boundary::Periodic] {
            let p = bhm(4, boundary);
            let t = bhm_tensors(&p).unwrap();
            let back = GenericTensors::from_json(&t.to_json()).unwrap();
            assert_eq!(back, t);
            assert_eq!(
                build_generic(&back).canonical(),
                build_bhm(&p).unwrap().canonical()
            );
        }
    }

    #[test]
    fn generic_identity_h_is_number_sum() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::default();
        let t = GenericTensors::new(2, vec![one, zero, zero, one], vec![]).unwrap();
        let OperatorSpec::Hamiltonian { terms } = build_generic(&t) else {
            panic!()
        };
        assert_eq!(terms.len(), 2);
        for (j, term) in terms.iter().enumerate() {
            assert_eq!(
                term,
                &Term::Ladder {
                    coefficient: one,
                    creators: vec![j],
                    annihilators: vec![j],
                    plus_hc: false
                }
            );
        }
    }

    #[test]
    fn tensor_validation() {
        let bad_h = r#"{"M":2,"h":[[0,0],[1,0],[2,0],[0,0]],"V":[]}"#;
        assert!(matches!(
            GenericTensors::from_json(bad_h),
            Err(Error::Schema(_))
        ));
        let nested = r#"{"M":2,"h":[[[0,0],[1,0.5]],[[1,-0.5],[3,0]]],"V":[[0,1,1,0,0.5,0],[1,0,0,1,0.5,0]]}"#;
        let t = GenericTensors::from_json(nested).unwrap();
        assert_eq!(t.h(0, 1), Complex64::new(1.0, 0.5));
        let asym = r#"{"M":2,"h":[[0,0],[0,0],[0,0],[0,0]],"V":[[0,1,1,0,0.5,0]]}"#;
        assert!(GenericTensors::from_json(asym).is_err());
        let range = r#"{"M":2,"h":[[0,0],[0,0],[0,0],[0,0]],"V":[[0,0,0,2,1,0]]}"#;
        assert!(GenericTensors::from_json(range).is_err());
        assert!(GenericTensors::from_json("{}").is_err());
    }

    #[test]
    fn ho_single_mode() {
        let p = HoParams {
            n_modes: 1,
            n_particles: 2,
            omega: 1.0,
            g: 1.0,
        };
        let OperatorSpec::Hamiltonian { terms } = build_ho(&p).unwrap() else {
            panic!()
        };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].coefficient(), Complex64::new(0.5, 0.0));
        let expect = 1.0 / (2.0 * std::f64::consts::PI).sqrt() / 2.0;
        assert!((terms[1].coefficient().re - expect).abs() < 1e-14);
    }

    #[test]
    fn ho_without_coupling_is_diagonal() {
        let p = HoParams {
            n_modes: 4,
            n_particles: 2,
            omega: 2.0,
            g: 0.0,
        };
        let OperatorSpec::Hamiltonian { terms } = build_ho(&p).unwrap() else {
            panic!()
        };
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[3].coefficient(), Complex64::new(7.0, 0.0));
    }

    #[test]
    fn gauss_hermite_moments() {
        let (x, w) = gauss_hermite(7);
        let pi = std::f64::consts::PI;
        assert!((w.iter().sum::<f64>() - pi.sqrt()).abs() < 1e-13);
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m2 - pi.sqrt() / 2.0).abs() < 1e-13);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn v_klmn_values() {
        let expect = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((v_klmn(0, 0, 0, 0, 1.0) - expect).abs() < 1e-14);
        assert_eq!(v_klmn(0, 0, 0, 1, 1.0), 0.0);
        assert!((v_klmn(1, 2, 3, 0, 0.7) - v_klmn(0, 3, 2, 1, 0.7)).abs() < 1e-14);
    }

    #[test]
    fn documents() {
        let d = SpecDocument::from_json(
            r#"{"kind":"rdm_term_symmetric","creators":[0],"annihilators":[1]}"#,
        )
        .unwrap();
        assert_eq!(d.build().unwrap(), OperatorSpec::rdm(&[0], &[1], true));
        let d = SpecDocument::from_json(r#"{"model":"bhm","M":3,"N":2,"J":1.0,"U":2.0}"#).unwrap();
        let SpecDocument::Model(ModelSpec::Bhm(p)) = &d else {
            panic!()
        };
        assert_eq!(p.boundary, Boundary::Periodic);
        let d = SpecDocument::from_json(r#"{"kind":"number","site":2}"#).unwrap();
        assert_eq!(
            d.build().unwrap(),
            OperatorSpec::NumberPower { site: 2, power: 1 }
        );
        assert!(SpecDocument::from_json(r#"{"creators":[0]}"#).is_err());
        assert!(SpecDocument::from_json("[1]").is_err());
    }
}
