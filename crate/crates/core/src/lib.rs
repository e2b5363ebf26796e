//! Doubly periodic tangle motifs encoded as link diagrams on the flat torus.

pub mod error;
pub mod lattice;
pub mod motif;

pub use error::{DptError, Result};
pub mod compound;
pub mod direction;
pub mod report;
pub mod geometry;
mod symmetry;
pub mod moves;
pub mod catalog;
pub mod format;
pub mod svg;
