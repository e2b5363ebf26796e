//! The diagram model and the base computations on it.

mod model;
mod trace;
mod validate;

pub use model::*;
pub use trace::*;
pub use validate::*;
