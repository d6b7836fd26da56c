//! Homological invariants of finite-dimensional algebras over prime fields.

pub mod algebra;
pub mod endo;
pub mod error;
pub mod igusa_todorov;
pub mod io;
pub mod krull_schmidt;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod samples;

pub use error::{Error, Result};
