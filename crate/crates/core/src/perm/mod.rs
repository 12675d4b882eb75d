//! Permutations, permutation groups and stabilizer chains.

pub mod catalog;
mod chain;
mod group;
mod orbit;
mod permutation;
mod text;

pub use chain::StabChain;
pub use group::PermGroup;
pub use orbit::Orbit;
pub use permutation::Permutation;
pub use text::{format_cycles, format_images, format_permutation, parse_permutation, PermStyle};
