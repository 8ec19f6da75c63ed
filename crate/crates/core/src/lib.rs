//! Exact computation in single-parameter quantum matrix algebras over
//! `Q[q, q^-1]`, their Hopf structure and coactions, and a harness that
//! checks first and second fundamental theorems degree by degree.

pub mod error;
pub mod exactnum;
pub mod qalgebra;
pub mod qhopf;
pub mod coact;
pub mod lifting;
pub mod fft;

pub use error::{Error, Result};
