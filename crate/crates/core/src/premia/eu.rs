use crate::error::{Error, Result};
use crate::funclib::UtilityFn;

use super::scenario::check_payoff_band;

/// Risk premium `pi` solving `U(x0 - pi) = ½U(x0 - eps1) + ½U(x0 + eps1)`.
pub fn eu_risk_premium_exact(u: &UtilityFn, x0: f64, eps1: f64) -> Result<f64> {
    check_payoff_band(u, x0, eps1)?;
    let mean = 0.5 * (u.eval(x0 - eps1)? + u.eval(x0 + eps1)?);
    Ok(x0 - u.inverse(mean)?)
}

/// `U(x0 - pi) - ½U(x0 - eps1) - ½U(x0 + eps1)`
pub fn eu_risk_premium_residual(u: &UtilityFn, x0: f64, eps1: f64, pi: f64) -> Result<f64> {
    Ok(u.eval(x0 - pi)? - 0.5 * u.eval(x0 - eps1)? - 0.5 * u.eval(x0 + eps1)?)
}

/// `-½ eps1² U''(x0) / U'(x0)`
pub fn eu_risk_premium_approx(u: &UtilityFn, x0: f64, eps1: f64) -> Result<f64> {
    check_payoff_band(u, x0, eps1)?;
    Ok(-0.5 * eps1 * eps1 * (u.d2(x0)? / u.d1(x0)?))
}

/// Probability premium `gamma` solving
/// `U(x0) = (½ - gamma) U(x0 - eps1) + (½ + gamma) U(x0 + eps1)`.
///
/// The equation is linear in `gamma`, so the solution is closed form.
pub fn eu_probability_premium_exact(u: &UtilityFn, x0: f64, eps1: f64) -> Result<f64> {
    check_payoff_band(u, x0, eps1)?;
    let (lo, mid, hi) = (u.eval(x0 - eps1)?, u.eval(x0)?, u.eval(x0 + eps1)?);
    let spread = hi - lo;
    if !(spread > 0.0) {
        return Err(Error::Degenerate(format!(
            "U(x0 + eps1) - U(x0 - eps1) = {spread} is not positive"
        )));
    }
    Ok((mid - 0.5 * (lo + hi)) / spread)
}

/// `U(x0) - (½ - gamma) U(x0 - eps1) - (½ + gamma) U(x0 + eps1)`
pub fn eu_probability_premium_residual(
    u: &UtilityFn,
    x0: f64,
    eps1: f64,
    gamma: f64,
) -> Result<f64> {
    Ok(u.eval(x0)? - (0.5 - gamma) * u.eval(x0 - eps1)? - (0.5 + gamma) * u.eval(x0 + eps1)?)
}

/// `-¼ eps1 U''(x0) / U'(x0)`
pub fn eu_probability_premium_approx(u: &UtilityFn, x0: f64, eps1: f64) -> Result<f64> {
    check_payoff_band(u, x0, eps1)?;
    Ok(-0.25 * eps1 * (u.d2(x0)? / u.d1(x0)?))
}
