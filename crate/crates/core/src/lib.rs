//! Evolution and heat kernels for free motion on classical Lie group
//! manifolds, compact and non-compact.

pub mod domains;
pub mod error;
pub mod kernel;
pub mod lattice;
pub mod linalg;
pub mod rootsys;
pub mod volumes;
pub mod weyl;

pub use nalgebra;
