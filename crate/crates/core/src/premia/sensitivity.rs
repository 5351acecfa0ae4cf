use crate::error::Result;
use crate::evalcore::DecisionMaker;

use super::rdu::{payoff_weights, utility_weights};
use super::scenario::Scenario;

/// `dsigma/deps1 = [w- U'(x0-eps1) - w+ U'(x0+eps1)] / U'(x0-sigma)`, with
/// `w-`, `w+` the normalized decision weights of the low and high payoff.
///
/// `sigma` must solve the risk-premium equation at `s`.
pub fn sensitivity_sigma_eps1(dm: &DecisionMaker, s: &Scenario, sigma: f64) -> Result<f64> {
    let (w_lo, w_hi) = payoff_weights(dm, s)?;
    let u = &dm.utility;
    let num = w_lo * u.d1(s.x0() - s.eps1())? - w_hi * u.d1(s.x0() + s.eps1())?;
    Ok(num / u.d1(s.x0() - sigma)?)
}

/// `dmu/deps2 = [v- h'(p0-eps2) - v+ h'(p0+eps2)] / h'(p0-mu)`, with
/// `v-`, `v+` the normalized utility gaps below and above `x0`.
///
/// Needs `h'` at both band ends, so the band must stay inside `(0, 1)`.
pub fn sensitivity_mu_eps2(dm: &DecisionMaker, s: &Scenario, mu: f64) -> Result<f64> {
    let (v_lo, v_hi) = utility_weights(dm, s)?;
    let h = &dm.weighting;
    let num = v_lo * h.d1(s.p0() - s.eps2())? - v_hi * h.d1(s.p0() + s.eps2())?;
    Ok(num / h.d1(s.p0() - mu)?)
}
