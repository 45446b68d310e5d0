//! Wiener-Hopf factorization of scalar and 2x2 Daniele-Khrapkov symbols through
//! the contour of a genus-one Riemann surface.

pub mod error;
pub mod par;
pub mod blocks;
pub mod contour;
pub mod matrixfact;
pub mod scalarfact;
pub mod series;
pub mod surface;
pub mod symlang;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
