use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::encodings::MappingKind;
use crate::error::{Error, Result};
use crate::models::Boundary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    /// One symmetric 1-RDM off-diagonal term.
    Rdm1,
    /// One symmetric 2-RDM off-diagonal term.
    Rdm2,
    Bhm,
    Ho,
}

impl SweepFamily {
    pub fn name(self) -> &'static str {
        match self {
            SweepFamily::Rdm1 => "rdm1",
            SweepFamily::Rdm2 => "rdm2",
            SweepFamily::Bhm => "bhm",
            SweepFamily::Ho => "ho",
        }
    }

    /// Body order of the single-term families.
    pub fn order(self) -> Option<usize> {
        match self {
            SweepFamily::Rdm1 => Some(1),
            SweepFamily::Rdm2 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How B1Q picks the indices of k-RDM terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexPolicy {
    /// Pairs `(0, 1)` and `(2, 3)`: Hamming distance 1.
    #[default]
    MinHamming,
    /// Greedy: the lexicographically first pair below M with the largest
    /// Hamming distance, then the same among the remaining indices.
    MaxHamming,
}

impl fmt::Display for IndexPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexPolicy::MinHamming => "min_hamming",
            IndexPolicy::MaxHamming => "max_hamming",
        })
    }
}

fn default_mappings() -> Vec<MappingKind> {
    MappingKind::ALL.to_vec()
}
fn yes() -> bool {
    true
}
fn one() -> f64 {
    1.0
}
fn default_bwcp_max() -> usize {
    200_000
}

/// One sweep over a (mapping, N, M) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub family: SweepFamily,
    #[serde(default = "default_mappings")]
    pub mappings: Vec<MappingKind>,
    #[serde(rename = "N_list")]
    pub n_list: Vec<usize>,
    #[serde(rename = "M_list")]
    pub m_list: Vec<usize>,
    #[serde(default)]
    pub b1q_index_policy: IndexPolicy,
    /// Adds the Hermitian conjugate to k-RDM terms.
    #[serde(default = "yes")]
    pub symmetric: bool,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(rename = "J", default = "one")]
    pub hopping: f64,
    #[serde(rename = "U", default = "one")]
    pub interaction: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub g: f64,
    /// Local dimension of the second-quantized kinds; absent means N + 1.
    #[serde(default)]
    pub d: Option<usize>,
    /// Compute BWCP group counts.
    #[serde(default = "yes")]
    pub bwcp: bool,
    /// Sums with more strings than this get no group count.
    #[serde(default = "default_bwcp_max")]
    pub bwcp_max_strings: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            family: SweepFamily::Rdm1,
            mappings: default_mappings(),
            n_list: vec![3, 7],
            m_list: (2..=32).collect(),
            b1q_index_policy: IndexPolicy::MinHamming,
            symmetric: true,
            boundary: Boundary::Periodic,
            hopping: 1.0,
            interaction: 1.0,
            omega: 1.0,
            g: 1.0,
            d: None,
            bwcp: true,
            bwcp_max_strings: default_bwcp_max(),
            output: Some("sweep.csv".into()),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Schema(m.to_string()));
        if self.mappings.is_empty() || self.n_list.is_empty() || self.m_list.is_empty() {
            return bad("mappings, N_list and M_list must be non-empty");
        }
        if self.n_list.contains(&0) || self.m_list.contains(&0) {
            return bad("N and M values must be >= 1");
        }
        let mut seen = self.mappings.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.mappings.len() {
            return bad("mappings must not repeat");
        }
        if matches!(self.d, Some(d) if d < 2) {
            return bad("d must be >= 2");
        }
        for (name, v) in [
            ("J", self.hopping),
            ("U", self.interaction),
            ("omega", self.omega),
            ("g", self.g),
        ] {
            if !v.is_finite() {
                return Err(Error::Schema(format!("{name} must be finite")));
            }
        }
        Ok(())
    }

    /// Parses JSON or TOML, chosen by content (a leading `{` means JSON).
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SweepConfig = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("sweep config: {e}")))?
        } else {
            toml::from_str(text).map_err(|e| Error::Schema(format!("sweep config: {e}")))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Why a grid point is skipped, if it is.
    pub fn skip_reason(&self, kind: MappingKind, n: usize, m: usize) -> Option<&'static str> {
        match self.family {
            SweepFamily::Rdm1 if m < 2 => Some("1-RDM ODT needs M >= 2"),
            SweepFamily::Rdm2 if m < 4 => Some("2-RDM ODT needs M >= 4"),
            SweepFamily::Bhm if m < 2 => Some("BHM needs M >= 2"),
            f if kind.is_first_quantized() && f.order().is_some_and(|k| k > n) => {
                Some("first-quantized k-body term needs k <= N")
            }
            _ => None,
        }
    }

    /// Grid points that produce rows, in output order: mapping (U1Q, B1Q,
    /// U2Q, B2Q), then N, then M ascending.
    pub fn grid(&self) -> Vec<(MappingKind, usize, usize)> {
        let mut kinds = self.mappings.clone();
        kinds.sort();
        let mut ns = self.n_list.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut ms = self.m_list.clone();
        ms.sort_unstable();
        ms.dedup();
        let mut out = Vec::new();
        for &kind in &kinds {
            for &n in &ns {
                for &m in &ms {
                    if self.skip_reason(kind, n, m).is_none() {
                        out.push((kind, n, m));
                    }
                }
            }
        }
        out
    }
}
