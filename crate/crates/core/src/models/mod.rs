//! Random matrix ensembles, the two-step base model, and matching combinatorics.

mod audit;
mod base;
mod matrix;
mod profile;
mod sample;

pub use audit::{audit_base, q2_pair_count, AuditConfig, BaseAudit, Q1Report, Q2Method, Q2Report, Q2Witness};
pub use base::{
    cross_edges, difference_vector, level_set_stats, union_components, Base, BitChoices,
    LevelSetStats, Matching,
};
pub use matrix::{IntMatrix, ModelTag};
pub use profile::{ExponentProfile, Preset};
pub use sample::{
    assemble_from_base, sample_base, sample_bits, sample_gaussian, sample_q_via_base,
    sample_rademacher, sample_row_regular,
};
