//! Synthesis, verification and analysis of bilinear multiplication
//! algorithms for finite-field extensions and truncated polynomial algebras.

pub mod bilinear;
pub mod bounds;
pub mod codes;
pub mod curve;
pub mod error;
pub mod genus0;
pub mod gf;
pub mod guard;
pub mod interp;
pub mod linalg;
pub mod plan;
pub mod planner;

pub use error::{Error, Result};
