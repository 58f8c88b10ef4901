//! Multiple standard twists of L-functions from the extended Selberg class.
//!
//! The crate evaluates smoothed twists `F_X(s, α)` by direct summation and by
//! Mellin-Barnes quadrature, continues them in `s` by extrapolation in `X`,
//! and compares numeric residues on the pole hyperplanes with the closed form
//! built from the polynomials `W_ℓ`.

pub mod cli;
pub mod error;
pub mod lfunc;
mod linalg;
pub mod specfun;
pub mod spectrum;
pub mod sympoly;
pub mod twist;

pub use error::{Error, Result};
