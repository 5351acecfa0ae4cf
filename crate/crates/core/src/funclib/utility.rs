use std::fmt;

use crate::error::{Error, Result};

use super::SmoothFn;

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UtilityFamily {
    /// `U(x) = x`
    Linear,
    /// `U(x) = -exp(-a x) / a`, `a != 0`; absolute risk aversion is `a`.
    Cara { a: f64 },
    /// `U(x) = (x^(1-eta) - 1) / (1 - eta)` on `x > 0`, `ln x` at `eta = 1`.
    Crra { eta: f64 },
    /// `U(x) = ln x` on `x > 0`.
    Log,
    /// `U(x) = x - b x^2`, truncated to the side of `1/(2b)` where `U' > 0`.
    Quadratic { b: f64 },
}

/// Payoff utility. Construct through the validating constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityFn {
    family: UtilityFamily,
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

impl UtilityFn {
    pub fn linear() -> Self {
        Self {
            family: UtilityFamily::Linear,
        }
    }

    pub fn cara(a: f64) -> Result<Self> {
        if finite("cara a", a)? == 0.0 {
            return Err(Error::InvalidParameter(
                "cara requires a != 0 (use linear for risk neutrality)".into(),
            ));
        }
        Ok(Self {
            family: UtilityFamily::Cara { a },
        })
    }

    pub fn crra(eta: f64) -> Result<Self> {
        finite("crra eta", eta)?;
        Ok(Self {
            family: UtilityFamily::Crra { eta },
        })
    }

    pub fn log() -> Self {
        Self {
            family: UtilityFamily::Log,
        }
    }

    pub fn quadratic(b: f64) -> Result<Self> {
        if finite("quadratic b", b)? == 0.0 {
            return Err(Error::InvalidParameter(
                "quadratic requires b != 0 (use linear for risk neutrality)".into(),
            ));
        }
        Ok(Self {
            family: UtilityFamily::Quadratic { b },
        })
    }

    pub fn family(&self) -> UtilityFamily {
        self.family
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.family, UtilityFamily::Linear)
    }

    /// Open interval on which `U' > 0`.
    pub fn domain(&self) -> Interval {
        match self.family {
            UtilityFamily::Linear | UtilityFamily::Cara { .. } => Interval::REAL_LINE,
            UtilityFamily::Crra { .. } | UtilityFamily::Log => Interval::new(0.0, f64::INFINITY),
            UtilityFamily::Quadratic { b } if b > 0.0 => {
                Interval::new(f64::NEG_INFINITY, 0.5 / b)
            }
            UtilityFamily::Quadratic { b } => Interval::new(0.5 / b, f64::INFINITY),
        }
    }

    /// Image of [`Self::domain`] under `U`.
    pub fn range(&self) -> Interval {
        match self.family {
            UtilityFamily::Linear | UtilityFamily::Log => Interval::REAL_LINE,
            UtilityFamily::Cara { a } if a > 0.0 => Interval::new(f64::NEG_INFINITY, 0.0),
            UtilityFamily::Cara { .. } => Interval::new(0.0, f64::INFINITY),
            UtilityFamily::Crra { eta } => {
                let k = 1.0 - eta;
                if k > 0.0 {
                    Interval::new(-1.0 / k, f64::INFINITY)
                } else if k < 0.0 {
                    Interval::new(f64::NEG_INFINITY, -1.0 / k)
                } else {
                    Interval::REAL_LINE
                }
            }
            UtilityFamily::Quadratic { b } if b > 0.0 => {
                Interval::new(f64::NEG_INFINITY, 0.25 / b)
            }
            UtilityFamily::Quadratic { b } => Interval::new(0.25 / b, f64::INFINITY),
        }
    }

    fn check(&self, x: f64) -> Result<()> {
        if self.domain().contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "payoff {x} outside the domain {} of utility {self}",
                self.domain()
            )))
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(match self.family {
            UtilityFamily::Linear => x,
            UtilityFamily::Cara { a } => -(-a * x).exp() / a,
            UtilityFamily::Crra { eta } => {
                let k = 1.0 - eta;
                if k == 0.0 {
                    x.ln()
                } else {
                    (k * x.ln()).exp_m1() / k
                }
            }
            UtilityFamily::Log => x.ln(),
            UtilityFamily::Quadratic { b } => x - b * x * x,
        })
    }

    pub fn d1(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(match self.family {
            UtilityFamily::Linear => 1.0,
            UtilityFamily::Cara { a } => (-a * x).exp(),
            UtilityFamily::Crra { eta } => x.powf(-eta),
            UtilityFamily::Log => 1.0 / x,
            UtilityFamily::Quadratic { b } => 1.0 - 2.0 * b * x,
        })
    }

    pub fn d2(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(match self.family {
            UtilityFamily::Linear => 0.0,
            UtilityFamily::Cara { a } => -a * (-a * x).exp(),
            UtilityFamily::Crra { eta } => -eta * x.powf(-eta - 1.0),
            UtilityFamily::Log => -1.0 / (x * x),
            UtilityFamily::Quadratic { b } => -2.0 * b,
        })
    }

    /// Absolute risk aversion `-U''(x)/U'(x)`.
    pub fn ara(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(match self.family {
            UtilityFamily::Linear => 0.0,
            UtilityFamily::Cara { a } => a,
            UtilityFamily::Crra { eta } => eta / x,
            UtilityFamily::Log => 1.0 / x,
            UtilityFamily::Quadratic { b } => 2.0 * b / (1.0 - 2.0 * b * x),
        })
    }

    /// Analytic inverse on [`Self::range`].
    pub fn inverse(&self, t: f64) -> Result<f64> {
        if !self.range().contains(t) {
            return Err(Error::Range(format!(
                "utility value {t} outside the range {} of {self}",
                self.range()
            )));
        }
        Ok(match self.family {
            UtilityFamily::Linear => t,
            UtilityFamily::Cara { a } => -(-a * t).ln() / a,
            UtilityFamily::Crra { eta } => {
                let k = 1.0 - eta;
                if k == 0.0 {
                    t.exp()
                } else {
                    ((k * t).ln_1p() / k).exp()
                }
            }
            UtilityFamily::Log => t.exp(),
            // increasing root of b x^2 - x + t = 0, written without cancellation
            UtilityFamily::Quadratic { b } => 2.0 * t / (1.0 + (1.0 - 4.0 * b * t).sqrt()),
        })
    }
}

impl SmoothFn for UtilityFn {
    fn value(&self, x: f64) -> Result<f64> {
        self.eval(x)
    }
    fn d1(&self, x: f64) -> Result<f64> {
        UtilityFn::d1(self, x)
    }
    fn d2(&self, x: f64) -> Result<f64> {
        UtilityFn::d2(self, x)
    }
    fn inverse(&self, y: f64) -> Result<f64> {
        UtilityFn::inverse(self, y)
    }
    fn local_index(&self, x: f64) -> Result<f64> {
        self.ara(x)
    }
}

impl fmt::Display for UtilityFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            UtilityFamily::Linear => write!(f, "linear"),
            UtilityFamily::Cara { a } => write!(f, "cara:{a}"),
            UtilityFamily::Crra { eta } => write!(f, "crra:{eta}"),
            UtilityFamily::Log => write!(f, "log"),
            UtilityFamily::Quadratic { b } => write!(f, "quadratic:{b}"),
        }
    }
}
