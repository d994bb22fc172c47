use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pauli::{PauliString, PauliSum};

/// Trotter-step cost of one collected Pauli sum under the CNOT staircase.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResourceReport {
    pub n_qubits: usize,
    /// Collected strings, identity included.
    pub n_strings: usize,
    pub n_rz: u64,
    pub n_cnot: u64,
    pub weight_histogram: BTreeMap<usize, usize>,
    pub n_bwcp_groups: Option<usize>,
}

/// Staircase counts: one Rz and `2 (weight - 1)` CNOTs per non-identity
/// string. The identity is a global phase and costs nothing.
pub fn gate_counts(s: &PauliSum) -> ResourceReport {
    let mut r = ResourceReport {
        n_qubits: s.n_qubits(),
        n_strings: s.len(),
        ..Default::default()
    };
    for (p, _) in s.iter() {
        let w = p.weight();
        *r.weight_histogram.entry(w).or_default() += 1;
        if w > 0 {
            r.n_rz += 1;
            r.n_cnot += 2 * (w as u64 - 1);
        }
    }
    r
}

/// `gate_counts` plus the BWCP group count.
pub fn resource_report(s: &PauliSum) -> ResourceReport {
    let mut r = gate_counts(s);
    r.n_bwcp_groups = Some(bwcp_group_count(s));
    r
}

struct Group {
    x: Vec<u64>,
    z: Vec<u64>,
    members: Vec<usize>,
}

fn fits(g: &Group, x: &[u64], z: &[u64]) -> bool {
    (0..x.len()).all(|i| {
        let overlap = (x[i] | z[i]) & (g.x[i] | g.z[i]);
        ((x[i] ^ g.x[i]) | (z[i] ^ g.z[i])) & overlap == 0
    })
}

fn first_fit<'a>(strings: impl Iterator<Item = &'a PauliString>) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for (i, p) in strings.enumerate() {
        let (x, z) = (p.x_words(), p.z_words());
        match groups.iter_mut().find(|g| fits(g, x, z)) {
            Some(g) => {
                for w in 0..x.len() {
                    g.x[w] |= x[w];
                    g.z[w] |= z[w];
                }
                g.members.push(i);
            }
            None => groups.push(Group {
                x: x.to_vec(),
                z: z.to_vec(),
                members: vec![i],
            }),
        }
    }
    groups
}

/// Qubit-wise commuting groups by first fit over the canonical term order.
/// A group's members agree qubit by qubit, so each group is tracked by the
/// union of its members' factors. The identity string is not measured and
/// is left out.
pub fn bwcp_partition(s: &PauliSum) -> Vec<Vec<PauliString>> {
    let strings: Vec<&PauliString> = s
        .sorted_terms()
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| !p.is_identity())
        .collect();
    first_fit(strings.iter().copied())
        .into_iter()
        .map(|g| g.members.into_iter().map(|i| strings[i].clone()).collect())
        .collect()
}

pub fn bwcp_group_count(s: &PauliSum) -> usize {
    let strings: Vec<&PauliString> = s
        .sorted_terms()
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| !p.is_identity())
        .collect();
    first_fit(strings.into_iter()).len()
}
