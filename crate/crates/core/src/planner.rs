//! Reconfiguration plans: canonical forms, pushing districts between
//! blocks, and end-to-end planning between two maps.

mod align;
mod biconnected;
mod blocks;
mod general;
mod path;

pub use align::{align_pseudo_canonical, potential};
pub use biconnected::canonical_biconnected;
pub use blocks::{
    classify_blocks, is_pseudo_canonical, BlockClassification, BlockRecord, RootedBlocks, TypeTag,
    View,
};
pub use general::{pseudo_canonical, pseudo_canonical_marked, push_district, PhaseMarks};
pub use path::{plan_path, PathPlan, PlanMeta, PlanOutcome, LENGTH_CONSTANT};
