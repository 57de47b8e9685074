//! Orbit classification of 3x3 hermitian matrices over complexified and
//! split composition algebras.
//!
//! Exact arithmetic (rationals and Gaussian rationals) drives the
//! classification; a double-precision engine constructs explicit group
//! words that carry an element to its canonical form.

pub mod error;
pub mod autgroup;
pub mod cdalgebra;
pub mod classify;
pub mod jordan;
pub(crate) mod linalg;
pub mod random;
pub mod reduce;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
