//! Solvers and verification tools for polynomial matrix equations.
//!
//! Numerical solvers build every solution of unilateral and Riccati equations
//! from eigen-data; an exact Gröbner engine independently counts solutions
//! with multiplicity.

pub mod error;
pub mod exactalg;
pub mod cli;
pub mod json;
pub mod matpoly;
pub mod numlin;
pub mod random;
pub mod riccati;
pub mod structured;
pub mod syscount;

pub use error::{Error, Result};
