//! Explicit self-similar solutions of one-phase Stefan problems whose
//! spatial diffusion is a fractional derivative of order alpha in (0, 1].
//!
//! The temperature profile is built from the three-parametric
//! Mittag-Leffler function; the free boundary grows like t^(1/(1+alpha))
//! with a coefficient found by a scalar fixed-point solve. A verifier
//! recomputes the governing equations with independent discretizations
//! of the fractional operators and reports residuals.

pub mod cli;
pub mod dd;
mod error;
pub mod frac_ops;
mod mpseries;
pub mod quad;
pub mod series;
pub mod special;
pub mod stefan;
pub mod verify;
pub mod volterra;

pub use error::{Error, Result};
