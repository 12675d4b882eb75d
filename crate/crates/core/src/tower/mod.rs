//! Iterated exponentiations and mixed towers.

mod build;
mod regroup;
mod spec;

pub use build::{build_tower, level_projection, Tower, TowerLevel};
pub use regroup::{
    composite_levels, regroup_bijection, regroup_mixed, regroup_positions, ConjugacyCheck, HLevel, HTowerLevel,
    RegroupComparison, Regrouping,
};
pub use spec::{LevelSpec, TowerSpec};
