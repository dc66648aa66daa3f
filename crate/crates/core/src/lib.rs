//! Simplicial complexes with stacked vertex links: dual graphs, Walkup
//! classes, cyclic solids and their boundaries, GF(2) homology, and checks
//! of the structural counting arguments on concrete instances.

pub mod analysis;
pub mod bits;
pub mod complex;
pub mod dualgraph;
pub mod error;
pub mod fct;
pub mod homology;
pub mod walkup;

pub use complex::{FVector, Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};
