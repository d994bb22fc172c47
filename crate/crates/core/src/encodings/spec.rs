use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term of a Hamiltonian operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Term {
    /// `coefficient * a†_{c1}...a†_{ck} a_{a1}...a_{aq}`, plus its Hermitian
    /// conjugate when `plus_hc` is set.
    Ladder {
        coefficient: Complex64,
        creators: Vec<usize>,
        annihilators: Vec<usize>,
        #[serde(default)]
        plus_hc: bool,
    },
    /// `coefficient * n(n-1)...(n-power+1)` on `site`, i.e. the normal-ordered
    /// `(a†)^power a^power`.
    FallingNumber {
        coefficient: Complex64,
        site: usize,
        power: u32,
    },
}

impl Term {
    pub fn coefficient(&self) -> Complex64 {
        match self {
            Term::Ladder { coefficient, .. } | Term::FallingNumber { coefficient, .. } => {
                *coefficient
            }
        }
    }

    fn sites(&self) -> Vec<usize> {
        match self {
            Term::Ladder {
                creators,
                annihilators,
                ..
            } => creators.iter().chain(annihilators).copied().collect(),
            Term::FallingNumber { site, .. } => vec![*site],
        }
    }
}

/// Symbolic bosonic operator: the compiler's input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    /// k-RDM element `a†_{l1}..a†_{lk} a_{m1}..a_{mk}` (+ H.C. if symmetric).
    RdmTerm {
        creators: Vec<usize>,
        annihilators: Vec<usize>,
        #[serde(default)]
        symmetric: bool,
    },
    /// `(n_site)^power`.
    NumberPower {
        site: usize,
        power: u32,
    },
    /// `n(n-1)...(n-power+1)` on `site`.
    NumberFallingPower {
        site: usize,
        power: u32,
    },
    /// `n_{j1} n_{j2} ... n_{jk}` over distinct sites.
    DensityCorrelation {
        sites: Vec<usize>,
    },
    Hamiltonian {
        terms: Vec<Term>,
    },
}

impl OperatorSpec {
    pub fn rdm(creators: &[usize], annihilators: &[usize], symmetric: bool) -> Self {
        OperatorSpec::RdmTerm {
            creators: creators.to_vec(),
            annihilators: annihilators.to_vec(),
            symmetric,
        }
    }

    fn mode_indices(&self) -> Vec<usize> {
        match self {
            OperatorSpec::RdmTerm {
                creators,
                annihilators,
                ..
            } => creators.iter().chain(annihilators).copied().collect(),
            OperatorSpec::NumberPower { site, .. }
            | OperatorSpec::NumberFallingPower { site, .. } => {
                vec![*site]
            }
            OperatorSpec::DensityCorrelation { sites } => sites.clone(),
            OperatorSpec::Hamiltonian { terms } => terms.iter().flat_map(Term::sites).collect(),
        }
    }

    /// Structural checks against a mode count.
    pub fn validate(&self, n_modes: usize) -> Result<()> {
        for j in self.mode_indices() {
            if j >= n_modes {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    limit: n_modes,
                    context: "mode index",
                });
            }
        }
        match self {
            OperatorSpec::RdmTerm {
                creators,
                annihilators,
                ..
            } => {
                if creators.is_empty() || creators.len() != annihilators.len() {
                    return Err(Error::InvalidOperator(format!(
                        "k-RDM term needs equal, non-empty index lists (got {} and {})",
                        creators.len(),
                        annihilators.len()
                    )));
                }
            }
            OperatorSpec::NumberPower { power, .. }
            | OperatorSpec::NumberFallingPower { power, .. } => {
                if *power == 0 {
                    return Err(Error::InvalidOperator("power must be >= 1".into()));
                }
            }
            OperatorSpec::DensityCorrelation { sites } => {
                if sites.is_empty() {
                    return Err(Error::InvalidOperator("no sites given".into()));
                }
                let mut s = sites.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() != sites.len() {
                    return Err(Error::InvalidOperator(
                        "density correlation sites must be distinct; use number_power for on-site powers"
                            .into(),
                    ));
                }
            }
            OperatorSpec::Hamiltonian { terms } => {
                for t in terms {
                    if let Term::FallingNumber { power: 0, .. } = t {
                        return Err(Error::InvalidOperator("power must be >= 1".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same operator with Hamiltonian terms in a fixed order; Hermitian pairs
    /// are written with the lexicographically smaller index list first.
    pub fn canonical(&self) -> OperatorSpec {
        let OperatorSpec::Hamiltonian { terms } = self else {
            return self.clone();
        };
        let mut terms: Vec<Term> = terms
            .iter()
            .map(|t| match t {
                Term::Ladder {
                    coefficient,
                    creators,
                    annihilators,
                    plus_hc: true,
                } if annihilators < creators => Term::Ladder {
                    coefficient: coefficient.conj(),
                    creators: annihilators.clone(),
                    annihilators: creators.clone(),
                    plus_hc: true,
                },
                _ => t.clone(),
            })
            .collect();
        let key = |t: &Term| match t {
            Term::Ladder {
                creators,
                annihilators,
                plus_hc,
                ..
            } => (0, creators.clone(), annihilators.clone(), *plus_hc as u32),
            Term::FallingNumber { site, power, .. } => (1, vec![*site], vec![], *power),
        };
        terms.sort_by_key(key);
        OperatorSpec::Hamiltonian { terms }
    }

    /// Whether the operator commutes with total particle number.
    pub fn conserves_particles(&self) -> bool {
        match self {
            OperatorSpec::Hamiltonian { terms } => terms.iter().all(|t| match t {
                Term::Ladder {
                    creators,
                    annihilators,
                    ..
                } => creators.len() == annihilators.len(),
                Term::FallingNumber { .. } => true,
            }),
            _ => true,
        }
    }

    /// Whether the operator is Hermitian by construction.
    pub fn is_symmetric(&self) -> bool {
        match self {
            OperatorSpec::RdmTerm { symmetric, .. } => *symmetric,
            OperatorSpec::Hamiltonian { terms } => terms.iter().all(|t| match t {
                Term::Ladder { plus_hc: true, .. } => true,
                Term::Ladder {
                    coefficient,
                    creators,
                    annihilators,
                    ..
                } => {
                    let mut c = creators.clone();
                    let mut a = annihilators.clone();
                    c.sort_unstable();
                    a.sort_unstable();
                    c == a && coefficient.im == 0.0
                }
                Term::FallingNumber { coefficient, .. } => coefficient.im == 0.0,
            }),
            _ => true,
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::RdmTerm {
                creators,
                annihilators,
                symmetric,
            } => write!(
                f,
                "rdm[{};{}]{}",
                join(creators),
                join(annihilators),
                if *symmetric { "+hc" } else { "" }
            ),
            OperatorSpec::NumberPower { site, power } => write!(f, "n{site}^{power}"),
            OperatorSpec::NumberFallingPower { site, power } => write!(f, "n{site}_({power})"),
            OperatorSpec::DensityCorrelation { sites } => write!(f, "nn[{}]", join(sites)),
            OperatorSpec::Hamiltonian { terms } => write!(f, "H[{} terms]", terms.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let s: OperatorSpec = serde_json::from_str(
            r#"{"kind":"rdm_term","creators":[0],"annihilators":[1],"symmetric":true}"#,
        )
        .unwrap();
        assert_eq!(s, OperatorSpec::rdm(&[0], &[1], true));
        let h: OperatorSpec = serde_json::from_str(
            r#"{"kind":"hamiltonian","terms":[
                {"type":"ladder","coefficient":[-1.0,0.0],"creators":[0],"annihilators":[1],"plus_hc":true},
                {"type":"falling_number","coefficient":[0.5,0.0],"site":1,"power":2}]}"#,
        )
        .unwrap();
        assert!(h.is_symmetric());
        let back: OperatorSpec = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn validation() {
        assert!(OperatorSpec::rdm(&[0], &[2], false).validate(2).is_err());
        assert!(OperatorSpec::rdm(&[0, 1], &[2], false).validate(4).is_err());
        assert!(OperatorSpec::rdm(&[], &[], false).validate(4).is_err());
        let dup = OperatorSpec::DensityCorrelation { sites: vec![1, 1] };
        assert!(dup.validate(4).is_err());
        assert!(OperatorSpec::NumberPower { site: 0, power: 0 }
            .validate(1)
            .is_err());
        assert!(OperatorSpec::NumberPower { site: 0, power: 3 }
            .validate(1)
            .is_ok());
    }
}
