use crate::pauli::{Pauli, PauliSum};

/// Gates of a staircase Trotter circuit. `Basis(q, p, true)` rotates the
/// measurement basis of qubit q from `p` to Z; `false` rotates back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Basis(usize, Pauli, bool),
    Cnot(usize, usize),
    Rz(usize),
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Basis(q, ..) | Gate::Rz(q) => (q, None),
            Gate::Cnot(c, t) => (c, Some(t)),
        }
    }

    fn cancels(&self, other: &Gate) -> bool {
        match (self, other) {
            (Gate::Cnot(a, b), Gate::Cnot(c, d)) => a == c && b == d,
            (Gate::Basis(q, p, f), Gate::Basis(r, s, g)) => q == r && p == s && f != g,
            _ => false,
        }
    }
}

/// Staircase circuits of every non-identity string, in canonical order:
/// basis change, CNOT chain up the support, Rz on the last qubit, reverse.
pub fn staircase_circuit(s: &PauliSum) -> Vec<Gate> {
    let mut gates = Vec::new();
    for (p, _) in s.sorted_terms() {
        let f = p.factors();
        if f.is_empty() {
            continue;
        }
        let rotated: Vec<_> = f.iter().filter(|(_, p)| *p != Pauli::Z).collect();
        gates.extend(rotated.iter().map(|&&(q, p)| Gate::Basis(q, p, true)));
        gates.extend(f.windows(2).map(|w| Gate::Cnot(w[0].0, w[1].0)));
        gates.push(Gate::Rz(f.last().unwrap().0));
        gates.extend(f.windows(2).rev().map(|w| Gate::Cnot(w[0].0, w[1].0)));
        gates.extend(rotated.iter().map(|&&(q, p)| Gate::Basis(q, p, false)));
    }
    gates
}

/// Removes adjacent inverse pairs (no gate in between on any of their
/// qubits), cascading as pairs disappear. Returns the surviving gates.
pub fn cancel_adjacent(gates: &[Gate]) -> Vec<Gate> {
    let n = gates
        .iter()
        .map(|g| {
            let (a, b) = g.qubits();
            a.max(b.unwrap_or(0)) + 1
        })
        .max()
        .unwrap_or(0);
    let mut alive = vec![true; gates.len()];
    let mut last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, g) in gates.iter().enumerate() {
        let (a, b) = g.qubits();
        let top_a = last[a].last().copied();
        let partner = match (top_a, b) {
            (Some(j), None) => Some(j),
            (Some(j), Some(b)) if last[b].last() == Some(&j) => Some(j),
            _ => None,
        }
        .filter(|&j| gates[j].cancels(g) && gates[j].qubits() == g.qubits());
        match partner {
            Some(j) => {
                alive[i] = false;
                alive[j] = false;
                last[a].pop();
                if let Some(b) = b {
                    last[b].pop();
                }
            }
            None => {
                last[a].push(i);
                if let Some(b) = b {
                    last[b].push(i);
                }
            }
        }
    }
    gates
        .iter()
        .zip(alive)
        .filter_map(|(g, keep)| keep.then_some(*g))
        .collect()
}

/// CNOTs left after cancelling adjacent pairs between consecutive
/// staircases. Never exceeds the plain staircase count.
pub fn peephole_cnot_count(s: &PauliSum) -> u64 {
    cancel_adjacent(&staircase_circuit(s))
        .iter()
        .filter(|g| matches!(g, Gate::Cnot(..)))
        .count() as u64
}
