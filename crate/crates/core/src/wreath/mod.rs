//! Wreath products in product action and in imprimitive action.

mod codec;
mod element;
mod group;
mod kaluzhnin;

pub use codec::{precedes, TupleCodec};
pub use element::{Action, Elem, Shape, WreathElement, MAX_COORDINATES};
pub use group::{build_exponentiation, build_perm_wreath, Embedding, StructuredGroup};
pub use kaluzhnin::{kaluzhnin_bijection, kaluzhnin_check, Counterexample, KaluzhninCertificate};
