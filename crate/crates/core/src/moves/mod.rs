//! Equivalence moves on torus diagrams and a randomized invariance checker.

mod faces;
mod fuzz;
mod iso;
mod lattice_moves;
mod reidemeister;

pub use faces::*;
pub use fuzz::*;
pub use iso::*;
pub use lattice_moves::*;
pub use reidemeister::*;
