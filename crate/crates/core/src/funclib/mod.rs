//! Parametric utility and probability-weighting families.
//!
//! Every family carries analytic first and second derivatives and an inverse.
//! Finite differences appear only in tests, as oracles for the analytic forms.

mod spec;
mod transform;
mod utility;
mod weighting;

pub use spec::FnSpec;
pub use transform::{ConcaveTransform, Transform};
pub use utility::{Interval, UtilityFamily, UtilityFn};
pub use weighting::{concavify, validation_grid, WeightingFamily, WeightingFn, INVERSE_TOL, TK_MIN_GAMMA};

use crate::error::Result;

/// A strictly increasing, twice differentiable scalar function with an inverse.
///
/// Implemented by both [`UtilityFn`] and [`WeightingFn`] so the comparative
/// checks can treat the payoff and probability sides uniformly.
pub trait SmoothFn {
    fn value(&self, x: f64) -> Result<f64>;
    fn d1(&self, x: f64) -> Result<f64>;
    fn d2(&self, x: f64) -> Result<f64>;
    fn inverse(&self, y: f64) -> Result<f64>;

    /// `-f''(x) / f'(x)`
    fn local_index(&self, x: f64) -> Result<f64> {
        Ok(-self.d2(x)? / self.d1(x)?)
    }
}
