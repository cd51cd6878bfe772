//! Exact computation of extension complexity for polytopes with few vertices or facets.

pub mod bits;
pub mod bounds;
pub mod classifier;
pub mod constructors;
pub mod corpus;
pub mod error;
pub mod exactnum;
pub mod gale;
pub mod io;
pub mod oracle;
pub mod polytope;

pub use error::{Error, Result};
