//! Construction and verification toolkit for fractional repetition (FR)
//! codes on distributed storage systems.
//!
//! A code places `θ` packets on `n` nodes ([`FrCode`]). The crate builds the
//! partial-regular-graph, ring and circulant t-construction families, brute
//! forces coverage `M(k)` and reconstruction degree, checks the universal
//! goodness inequalities, plans single-node repair, and regenerates or
//! audits parameter tables.

pub mod analysis;
pub mod code;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod packet_set;
pub mod repair;
pub mod subsets;
pub mod sweep;

pub use analysis::{
    coverage_profile, goodness_arithmetic, goodness_structural, min_coverage, predicted_k_ring,
    prg_margin, reconstruction_degree, ring_margin_case1, ring_margin_case2, Coverage,
    CoverageProfile, GoodnessReport, StructuralReport,
};
pub use code::{CodeProfile, DssParams, FrCode, IdentityKind, IdentityReport, IncidenceMatrix, NodeId, PacketId};
pub use constructions::{build_prg, build_ring, build_t_code, PrgSpec, RingSpec, TSpec};
pub use error::{FrcError, Result};
pub use packet_set::PacketSet;
pub use repair::{plan_repair, plan_repair_first_replica, repair_degree_profile, RepairPlan};
pub use subsets::Budget;
pub use sweep::{audit_table, conjecture_harness, sweep_ring, Family, TableRow};
