use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{find_root_to_resolution, RootSpec};

use super::weighting::INVERSE_TOL;

/// Strictly increasing map of `[0, 1]` onto itself with `T(0) = 0`, `T(1) = 1`.
///
/// Composing a weighting function with a concave transform raises its dual
/// local index everywhere; a convex one lowers it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// `t^kappa`, `kappa > 0`
    Power { kappa: f64 },
    /// `(1 - e^{-c t}) / (1 - e^{-c})`, `c != 0`
    Exponential { c: f64 },
    /// `(1 - w) t + w t^kappa`, `0 < w <= 1`, `kappa > 0`
    Blend { weight: f64, kappa: f64 },
}

impl Transform {
    pub fn power(kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "power transform needs kappa > 0, got {kappa}"
            )));
        }
        Ok(Transform::Power { kappa })
    }

    pub fn exponential(c: f64) -> Result<Self> {
        if !(c.is_finite() && c != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "exponential transform needs finite c != 0, got {c}"
            )));
        }
        Ok(Transform::Exponential { c })
    }

    pub fn blend(weight: f64, kappa: f64) -> Result<Self> {
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "blend transform needs 0 < w <= 1, got {weight}"
            )));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "blend transform needs kappa > 0, got {kappa}"
            )));
        }
        Ok(Transform::Blend { weight, kappa })
    }

    /// Strict concavity on `(0, 1)`.
    pub fn is_concave(&self) -> bool {
        match *self {
            Transform::Power { kappa } | Transform::Blend { kappa, .. } => kappa < 1.0,
            Transform::Exponential { c } => c > 0.0,
        }
    }

    /// Strict convexity on `(0, 1)`.
    pub fn is_convex(&self) -> bool {
        match *self {
            Transform::Power { kappa } | Transform::Blend { kappa, .. } => kappa > 1.0,
            Transform::Exponential { c } => c < 0.0,
        }
    }

    fn check(t: f64) -> Result<()> {
        if (0.0..=1.0).contains(&t) {
            Ok(())
        } else {
            Err(Error::Domain(format!("transform argument {t} outside [0, 1]")))
        }
    }

    fn check_interior(t: f64) -> Result<()> {
        if t > 0.0 && t < 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "transform derivative argument {t} outside (0, 1)"
            )))
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Self::check(t)?;
        if t == 0.0 || t == 1.0 {
            return Ok(t);
        }
        Ok(match *self {
            Transform::Power { kappa } => t.powf(kappa),
            Transform::Exponential { c } => (-c * t).exp_m1() / (-c).exp_m1(),
            Transform::Blend { weight, kappa } => (1.0 - weight) * t + weight * t.powf(kappa),
        })
    }

    pub fn d1(&self, t: f64) -> Result<f64> {
        Self::check_interior(t)?;
        Ok(match *self {
            Transform::Power { kappa } => kappa * t.powf(kappa - 1.0),
            Transform::Exponential { c } => -c * (-c * t).exp() / (-c).exp_m1(),
            Transform::Blend { weight, kappa } => {
                (1.0 - weight) + weight * kappa * t.powf(kappa - 1.0)
            }
        })
    }

    pub fn d2(&self, t: f64) -> Result<f64> {
        Self::check_interior(t)?;
        Ok(match *self {
            Transform::Power { kappa } => kappa * (kappa - 1.0) * t.powf(kappa - 2.0),
            Transform::Exponential { c } => c * c * (-c * t).exp() / (-c).exp_m1(),
            Transform::Blend { weight, kappa } => {
                weight * kappa * (kappa - 1.0) * t.powf(kappa - 2.0)
            }
        })
    }

    pub fn inverse(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Range(format!("transform value {s} outside [0, 1]")));
        }
        if s == 0.0 || s == 1.0 {
            return Ok(s);
        }
        match *self {
            Transform::Power { kappa } => Ok(s.powf(1.0 / kappa)),
            Transform::Exponential { c } => Ok(-(s * (-c).exp_m1()).ln_1p() / c),
            Transform::Blend { .. } => {
                let spec = RootSpec::new(|t| self.eval(t).unwrap_or(f64::NAN) - s, 0.0, 1.0)
                    .with_tol(INVERSE_TOL);
                find_root_to_resolution(&spec)
            }
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Transform::Power { kappa } => write!(f, "power:{kappa}"),
            Transform::Exponential { c } => write!(f, "exp:{c}"),
            Transform::Blend { weight, kappa } => write!(f, "blend:{weight},{kappa}"),
        }
    }
}

/// A [`Transform`] verified to be strictly concave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcaveTransform(Transform);

impl ConcaveTransform {
    pub fn new(t: Transform) -> Result<Self> {
        if t.is_concave() {
            Ok(Self(t))
        } else {
            Err(Error::InvalidParameter(format!(
                "transform {t} is not strictly concave"
            )))
        }
    }

    pub fn transform(&self) -> Transform {
        self.0
    }
}

impl TryFrom<Transform> for ConcaveTransform {
    type Error = Error;
    fn try_from(t: Transform) -> Result<Self> {
        Self::new(t)
    }
}
