//! Wavelet sets, scaling sets and SMRA multiwavelets built from finite
//! reflection groups, together with Shannon-type sampling on spectral sets.
//!
//! Every set is a finite union of half-open boxes in a frame where the
//! dilation is diagonal, so set operations, volumes and congruence checks are
//! exact rational arithmetic. Properties that involve rotations are checked
//! by seeded Monte Carlo.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod mra;
pub mod region;
pub mod sampling;
pub mod tiling;
pub mod wavelet;

pub use error::{Error, Result};
