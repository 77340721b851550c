//! Exact set algebra over finite unions of half-open boxes in a coordinate
//! frame, plus closed-form Fourier integrals of their indicators.

mod cell;
mod fourier;
mod frame;
mod set;

pub use cell::Cell;
pub use frame::Frame;
pub use set::{PointClass, Region};

pub(crate) use fourier::{cell_integral, frame_frequency};
