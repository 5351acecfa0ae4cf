use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evalcore::DecisionMaker;
use crate::funclib::UtilityFn;

/// Checks `0 < p0 < 1` and `0 < eps2 <= min(p0, 1 - p0)` and returns the
/// probability band `[p0 - eps2, p0 + eps2]`, clamped to `[0, 1]` against
/// rounding.
pub fn check_probability_band(p0: f64, eps2: f64) -> Result<(f64, f64)> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::Scenario(format!("p0 = {p0} must lie in (0, 1)")));
    }
    let cap = p0.min(1.0 - p0);
    if !(eps2 > 0.0 && eps2 <= cap) {
        return Err(Error::Scenario(format!(
            "eps2 = {eps2} must satisfy 0 < eps2 <= min(p0, 1 - p0) = {cap}"
        )));
    }
    Ok(((p0 - eps2).max(0.0), (p0 + eps2).min(1.0)))
}

/// Checks `eps1 > 0` and that `x0 ± eps1` lie in the utility's domain.
pub fn check_payoff_band(u: &UtilityFn, x0: f64, eps1: f64) -> Result<()> {
    if !x0.is_finite() {
        return Err(Error::Scenario(format!("x0 = {x0} must be finite")));
    }
    if !(eps1.is_finite() && eps1 > 0.0) {
        return Err(Error::Scenario(format!("eps1 = {eps1} must be positive")));
    }
    let d = u.domain();
    if !(d.contains(x0 - eps1) && d.contains(x0 + eps1)) {
        return Err(Error::Scenario(format!(
            "x0 ± eps1 = [{}, {}] leaves the domain {d} of utility {u}",
            x0 - eps1,
            x0 + eps1
        )));
    }
    Ok(())
}

/// Initial wealth `x0`, pivot probability `p0` and the payoff / probability
/// sizes `eps1`, `eps2` of the added binary symmetric risk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct Scenario {
    x0: f64,
    p0: f64,
    eps1: f64,
    eps2: f64,
}

#[derive(Deserialize)]
struct RawScenario {
    x0: f64,
    p0: f64,
    eps1: f64,
    eps2: f64,
}

impl TryFrom<RawScenario> for Scenario {
    type Error = Error;
    fn try_from(r: RawScenario) -> Result<Self> {
        Scenario::new(r.x0, r.p0, r.eps1, r.eps2)
    }
}

impl Scenario {
    pub fn new(x0: f64, p0: f64, eps1: f64, eps2: f64) -> Result<Self> {
        check_probability_band(p0, eps2)?;
        if !x0.is_finite() {
            return Err(Error::Scenario(format!("x0 = {x0} must be finite")));
        }
        if !(eps1.is_finite() && eps1 > 0.0) {
            return Err(Error::Scenario(format!("eps1 = {eps1} must be positive")));
        }
        Ok(Self { x0, p0, eps1, eps2 })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn p0(&self) -> f64 {
        self.p0
    }
    pub fn eps1(&self) -> f64 {
        self.eps1
    }
    pub fn eps2(&self) -> f64 {
        self.eps2
    }

    /// `(p0 - eps2, p0 + eps2)` clamped to `[0, 1]`.
    pub fn probability_band(&self) -> (f64, f64) {
        ((self.p0 - self.eps2).max(0.0), (self.p0 + self.eps2).min(1.0))
    }

    /// Checks the payoff band against the decision maker's utility domain.
    pub fn validate_for(&self, dm: &DecisionMaker) -> Result<()> {
        check_payoff_band(&dm.utility, self.x0, self.eps1)
    }

    pub fn with_eps1(&self, eps1: f64) -> Result<Self> {
        Self::new(self.x0, self.p0, eps1, self.eps2)
    }

    pub fn with_eps2(&self, eps2: f64) -> Result<Self> {
        Self::new(self.x0, self.p0, self.eps1, eps2)
    }

    pub fn with_p0(&self, p0: f64) -> Result<Self> {
        Self::new(self.x0, p0, self.eps1, self.eps2)
    }

    pub fn with_x0(&self, x0: f64) -> Result<Self> {
        Self::new(x0, self.p0, self.eps1, self.eps2)
    }
}
