//! Symbolic blow-ups of weighted projective planes `P(a, b, c)`: lattice
//! models of graded pieces of symbolic powers of the curve ideal, exact
//! rank computations, peeling certificates, negative-curve searches and a
//! replayable verifier for the `(5, 103, 169)` construction.

pub mod bivariate;
pub mod curves;
pub mod error;
pub mod exactmath;
pub mod lattice;
pub mod linalg;
pub mod peeling;
pub mod poly;
pub mod presentation;
pub mod qadic;
pub mod verifier;

pub use error::{Error, Result};
