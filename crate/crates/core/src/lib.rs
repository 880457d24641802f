//! Numerical correspondence between integrable real functions on the
//! unit circle and analytic functions on the open unit disk.
//!
//! The pipeline: a real function f(theta) on [-pi, pi] yields Fourier
//! coefficients ([`fourier`]), which assemble into the Taylor
//! coefficients of an analytic function on the open disk ([`inner`]).
//! The boundary values are recovered as radial limits ([`boundary`]),
//! angular differentiation/integration act as exact coefficient-space
//! operators ([`chain`]), and boundary singular points are graded
//! numerically by walking those operators ([`classify`]).

pub mod boundary;
pub mod catalog;
pub mod chain;
pub mod classify;
pub mod error;
pub mod format;
pub mod fourier;
pub mod inner;
pub mod piecewise;
pub mod quad;

pub use error::{Error, Result};
