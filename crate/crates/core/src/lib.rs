//! Numerics for the operator family K_ab on [-1, 1].

pub mod error;
pub mod evolution;
pub mod exact;
pub mod linalg;
pub mod operators;
pub mod output;
pub mod quad;
mod roots;
pub mod semiclassics;
pub mod specfun;

pub use error::{Error, Result};

// links the system OpenBLAS that provides BLAS and LAPACK symbols
extern crate openblas_src;
