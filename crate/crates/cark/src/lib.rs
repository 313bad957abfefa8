//! Exact arithmetic for multivariate Lucas/Fibonacci polynomials, binary
//! quadratic forms, narrow class groups of real quadratic fields, and the
//! realization of narrow ideal classes as integral points of an affine
//! surface cut out by the Lucas polynomials.

pub mod error;
pub mod forms;
pub mod gauss;
pub mod graph;
pub mod mat;
pub mod parse;
pub mod pauli;
pub mod poly;
pub mod psl2;
pub mod quadfield;
pub mod surface;
pub mod words;

pub use error::{Error, Result};
