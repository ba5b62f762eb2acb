//! Finite formal models of arc-space neighbourhoods attached to toric
//! divisorial valuations.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod hensel;
pub mod jet_model;
pub mod lattice_geom;
mod linalg;
pub mod polyring;
pub mod semigroup_decomp;
pub mod toric_ideal;
pub mod weierstrass;

pub use error::{Error, Result};
