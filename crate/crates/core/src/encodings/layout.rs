use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four bosonic qubit mappings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MappingKind {
    /// Unary first quantized: one one-hot register of width M per particle.
    U1Q,
    /// Binary first quantized: one base-2 register of width ceil(log2 M) per particle.
    B1Q,
    /// Unary second quantized: one one-hot register of width d per mode.
    U2Q,
    /// Binary second quantized: one base-2 register of width ceil(log2 d) per mode.
    B2Q,
}

impl MappingKind {
    pub const ALL: [MappingKind; 4] = [
        MappingKind::U1Q,
        MappingKind::B1Q,
        MappingKind::U2Q,
        MappingKind::B2Q,
    ];

    pub fn is_first_quantized(self) -> bool {
        matches!(self, MappingKind::U1Q | MappingKind::B1Q)
    }

    pub fn is_unary(self) -> bool {
        matches!(self, MappingKind::U1Q | MappingKind::U2Q)
    }

    pub fn name(self) -> &'static str {
        match self {
            MappingKind::U1Q => "U1Q",
            MappingKind::B1Q => "B1Q",
            MappingKind::U2Q => "U2Q",
            MappingKind::B2Q => "B2Q",
        }
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MappingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "U1Q" => Ok(MappingKind::U1Q),
            "B1Q" => Ok(MappingKind::B1Q),
            "U2Q" => Ok(MappingKind::U2Q),
            "B2Q" => Ok(MappingKind::B2Q),
            _ => Err(Error::Parse(format!("unknown mapping {s:?}"))),
        }
    }
}

/// Bits needed to label `levels` states: ceil(log2 levels), 0 for one level.
pub fn ceil_log2(levels: usize) -> usize {
    assert!(levels >= 1, "need at least one level");
    (usize::BITS - (levels - 1).leading_zeros()) as usize
}

/// Mapping plus problem size: which registers exist and where their
/// qubits live. Registers are sequential, so register r, offset t sits on
/// qubit `r * register_width + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EncodingLayout {
    kind: MappingKind,
    n_particles: usize,
    n_modes: usize,
    local_dim: usize,
}

impl EncodingLayout {
    /// `local_dim` is only meaningful for second-quantized kinds and
    /// defaults to `n_particles + 1` there.
    pub fn new(
        kind: MappingKind,
        n_particles: usize,
        n_modes: usize,
        local_dim: Option<usize>,
    ) -> Result<Self> {
        if n_particles < 1 {
            return Err(Error::InvalidLayout("particle count must be >= 1".into()));
        }
        if n_modes < 1 {
            return Err(Error::InvalidLayout("mode count must be >= 1".into()));
        }
        let d = local_dim.unwrap_or(n_particles + 1);
        if !kind.is_first_quantized() && d < 2 {
            return Err(Error::InvalidLayout(format!("local dimension {d} < 2")));
        }
        Ok(EncodingLayout {
            kind,
            n_particles,
            n_modes,
            local_dim: d,
        })
    }

    pub fn kind(&self) -> MappingKind {
        self.kind
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Local Hilbert-space dimension d of the second-quantized kinds.
    pub fn d(&self) -> usize {
        self.local_dim
    }

    /// Number of levels each register encodes: M (first quantized) or d.
    pub fn register_levels(&self) -> usize {
        if self.kind.is_first_quantized() {
            self.n_modes
        } else {
            self.local_dim
        }
    }

    /// N registers (one per particle) or M registers (one per mode).
    pub fn n_registers(&self) -> usize {
        if self.kind.is_first_quantized() {
            self.n_particles
        } else {
            self.n_modes
        }
    }

    pub fn register_width(&self) -> usize {
        let levels = self.register_levels();
        if self.kind.is_unary() {
            levels
        } else {
            ceil_log2(levels)
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_registers() * self.register_width()
    }

    pub fn qubit(&self, register: usize, offset: usize) -> usize {
        debug_assert!(register < self.n_registers() && offset < self.register_width());
        register * self.register_width() + offset
    }

    /// Bit pattern of `level` inside its register: unary sets bit `level`,
    /// binary stores the base-2 code most-significant bit first.
    pub fn level_code(&self, level: usize) -> u64 {
        if self.kind.is_unary() {
            1u64 << level
        } else {
            let w = self.register_width();
            (0..w).fold(0u64, |acc, t| {
                acc | ((level as u64 >> (w - 1 - t)) & 1) << t
            })
        }
    }
}

impl fmt::Display for EncodingLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.is_first_quantized() {
            write!(
                f,
                "{}(N={},M={})",
                self.kind, self.n_particles, self.n_modes
            )
        } else {
            write!(
                f,
                "{}(N={},M={},d={})",
                self.kind, self.n_particles, self.n_modes, self.local_dim
            )
        }
    }
}

/// Qubit count of a mapping with the default truncation d = N + 1.
pub fn qubit_count(kind: MappingKind, n_particles: usize, n_modes: usize) -> usize {
    match kind {
        MappingKind::U1Q => n_particles * n_modes,
        MappingKind::B1Q => n_particles * ceil_log2(n_modes),
        MappingKind::U2Q => n_modes * (n_particles + 1),
        MappingKind::B2Q => n_modes * ceil_log2(n_particles + 1),
    }
}
