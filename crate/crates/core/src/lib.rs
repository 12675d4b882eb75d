//! Finite truncations of iterated wreath products in product action.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! * [`perm`]: permutations, orbits and a deterministic Schreier–Sims
//!   stabilizer chain giving exact orders and membership,
//! * [`wreath`]: structured wreath-product elements under the product
//!   (exponentiation) and imprimitive actions, the lexicographic tuple codec,
//!   flattening and the rebracketing bijection,
//! * [`tower`]: iterated exponentiations and mixed towers with exact
//!   degree/order bookkeeping, and the regrouping of mixed towers,
//! * [`schemes`]: hypothesis checks and the explicit generator constructions,
//! * [`bounds`]: the lower bound for `d(A^N wr B)` together with its oracles.
//!
//! Points are 1-based in every public API.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
mod count;
mod error;
pub mod perm;
pub mod schemes;
pub mod tower;
pub mod wreath;

pub use count::BigCount;
pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation};

/// Default cap on the degree of any flattened permutation group.
pub const DEFAULT_DEGREE_CAP: usize = 1_000_000;

/// Whether the standing hypotheses of the constructions are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Hypothesis gates fail fast.
    #[default]
    Strict,
    /// Gates are evaluated and reported but never fail a run.
    Lab,
}
