//! Parameter sweeps over (mapping, N, M) grids with deterministic CSV output.

mod config;
mod report;
mod run;

pub use config::{IndexPolicy, SweepConfig, SweepFamily};
pub use report::{ratios_to_u1q, reproduction_report};
pub use run::{
    point_spec, rdm_indices, read_csv, run_point, run_sweep, write_csv, SweepRow, ENCODER_VERSION,
};
