//! Exact evaluation of the Magnus functor and the Alexander functor on
//! three-dimensional cobordisms presented by Heegaard data.

pub mod alexander;
pub mod cobordism;
pub mod error;
pub mod free_group;
pub mod gen;
pub mod json;
pub mod lagrangian;
pub mod linalg;
pub mod magnus;
pub mod ring;
pub mod surface;
pub mod verify;

pub use cobordism::{CobPresentation, HeegaardData};
pub use error::{Error, Result};
pub use free_group::{FreeEndo, PhiValuation, Word};
pub use lagrangian::LagRelation;
pub use linalg::{MatQ, MatR, Subspace};
pub use ring::{LaurentPoly, RingFrac};
