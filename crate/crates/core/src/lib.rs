//! Itô–Hermite polynomials on the plane, the fractional Fourier transform
//! they diagonalize, its dual transform into weighted Bergman spaces on the
//! bi-disk, and the spectral quantities of that dual transform.
//!
//! Start from the runnable programs in `examples/`.

// `!(x > 0.0)` is the NaN-rejecting form of every parameter guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod dd;
pub mod error;
pub mod io;
pub mod ito_hermite;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod spectral;
pub mod transforms;
pub mod verify;

#[cfg(test)]
mod properties;

pub use error::{Error, Result};
