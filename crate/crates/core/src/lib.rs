//! Orthogonal, compactly supported, continuous piecewise-polynomial scaling
//! functions and multiwavelets centered on irregular knot sequences, with a
//! golden-ratio (τ-integer) lattice instance.
//!
//! Everything is built from [`piecewise::PiecewisePoly`] values whose inner
//! products are evaluated in closed form, so orthogonality checks are limited
//! only by floating-point rounding.

pub mod coeff;
pub mod error;
pub mod knots;
pub mod linalg;
pub mod mra;
pub mod piecewise;
pub mod poly_family;
pub mod quad_family;
pub mod tau;

pub use error::{Error, Result};
pub use knots::{GapClass, KnotWindow, Role, TauNumber};
pub use mra::{CenteredBasis, KnotGroup};
pub use piecewise::{PiecewisePoly, Polynomial};

/// Default absolute tolerance for orthogonality assertions.
pub const DEFAULT_TOL: f64 = 1e-9;
