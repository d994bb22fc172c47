//! Trotter-step gate counts, measurement grouping and closed-form counts.

mod analytic;
mod circuit;
mod counts;

pub use analytic::{
    analytic_counts, bhm_count_ratios, bhm_pbc_counts, bhm_ratio_formulas, break_even_d,
    krdm_cnot_ratio, krdm_odt_counts, AnalyticCounts, Family,
};
pub use circuit::{cancel_adjacent, peephole_cnot_count, staircase_circuit, Gate};
pub use counts::{bwcp_group_count, bwcp_partition, gate_counts, resource_report, ResourceReport};
