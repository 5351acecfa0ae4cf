//! Risk and probability premia under expected utility, Yaari's dual theory
//! and rank-dependent utility.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: bracketed root finding, finite differences, convergence fits.
//! - [`funclib`]: utility and probability-weighting families with analytic
//!   derivatives and inverses.
//! - [`evalcore`]: lotteries and the rank-dependent evaluation functional.
//! - [`premia`]: exact and second-order premia, local indexes, sensitivities.
//! - [`comparative`]: grid verification of comparative risk-aversion conditions.

pub mod comparative;
pub mod error;
pub mod evalcore;
pub mod funclib;
pub mod numerics;
pub mod premia;

pub use error::{Error, Result};
