//! Exact Chern-class formulas for degeneracy loci of classical type.

pub mod error;
pub mod formulas;
pub mod harness;
pub mod operators;
pub mod pfaffian;
pub mod specialize;
pub mod symbolic;
pub mod triples;

pub use error::{Error, Result};
