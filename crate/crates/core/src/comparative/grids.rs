use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funclib::{Interval, UtilityFamily, UtilityFn};
use crate::premia::Scenario;

/// Grids over which the comparative conditions are checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ComparisonGrids {
    /// Points of `(0, 1)` for the weighting index check.
    pub p: Vec<f64>,
    /// Size of the uniform grids for the composition checks and the
    /// utility index check.
    pub t_points: usize,
    pub p0: Vec<f64>,
    /// Fixed `eps2` values; those above `min(p0, 1 - p0)` are skipped.
    pub eps2: Vec<f64>,
    /// Also use `eps2 = min(p0, 1 - p0)` at each `p0`.
    pub eps2_full_band: bool,
    pub eps1: Vec<f64>,
    /// Initial wealth levels; `None` picks three inside the utility domains.
    pub x0: Option<Vec<f64>>,
    /// Random quadruples per cross-ratio check.
    pub quadruples: usize,
    pub seed: u64,
}

impl Default for ComparisonGrids {
    fn default() -> Self {
        Self {
            p: (1..=401).map(|i| i as f64 / 402.0).collect(),
            t_points: 401,
            p0: (1..=9).map(|i| i as f64 / 10.0).collect(),
            eps2: vec![0.01, 0.05],
            eps2_full_band: true,
            eps1: vec![0.01, 0.1, 0.5],
            x0: None,
            quadruples: 2000,
            seed: 0x5eed,
        }
    }
}

fn check_nonempty(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Grid(format!("{name} grid is empty")));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite()) {
        return Err(Error::Grid(format!("{name} grid contains {x}")));
    }
    Ok(())
}

impl ComparisonGrids {
    pub fn validate(&self) -> Result<()> {
        check_nonempty("p", &self.p)?;
        if let Some(p) = self.p.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
            return Err(Error::Grid(format!("p grid point {p} is outside (0, 1)")));
        }
        if self.t_points < 3 {
            return Err(Error::Grid(format!("t_points = {} must be at least 3", self.t_points)));
        }
        check_nonempty("p0", &self.p0)?;
        check_nonempty("eps1", &self.eps1)?;
        if let Some(e) = self.eps1.iter().find(|&&e| !(e > 0.0)) {
            return Err(Error::Grid(format!("eps1 grid value {e} is not positive")));
        }
        if let Some(x0) = &self.x0 {
            check_nonempty("x0", x0)?;
        }
        if self.quadruples == 0 {
            return Err(Error::Grid("quadruples must be positive".into()));
        }
        Ok(())
    }

    /// Uniform interior grid of `(0, 1)` with `t_points` points.
    pub fn t_grid(&self) -> Vec<f64> {
        let n = self.t_points;
        (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
    }

    /// Valid `(p0, eps2)` pairs.
    pub fn dt_scenarios(&self) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        let mut out = Vec::new();
        for &p0 in &self.p0 {
            if !(p0 > 0.0 && p0 < 1.0) {
                return Err(Error::Grid(format!("p0 grid value {p0} is outside (0, 1)")));
            }
            let cap = p0.min(1.0 - p0);
            for &e2 in &self.eps2 {
                if e2 > 0.0 && e2 <= cap {
                    out.push((p0, e2));
                }
            }
            if self.eps2_full_band && !self.eps2.contains(&cap) {
                out.push((p0, cap));
            }
        }
        if out.is_empty() {
            return Err(Error::Grid("no valid (p0, eps2) pair".into()));
        }
        Ok(out)
    }

    /// Wealth levels: the configured ones, or three spread inside `domain`
    /// at least `max eps1 + 0.1` from its ends.
    pub fn x0_levels(&self, domain: Interval) -> Result<Vec<f64>> {
        self.validate()?;
        let reach = self.eps1.iter().fold(0.0f64, |m, &e| m.max(e));
        if let Some(x0) = &self.x0 {
            if let Some(x) = x0
                .iter()
                .find(|&&x| !(domain.contains(x - reach) && domain.contains(x + reach)))
            {
                return Err(Error::Grid(format!(
                    "x0 = {x} with eps1 up to {reach} leaves the domain {domain}"
                )));
            }
            return Ok(x0.clone());
        }
        let margin = reach + 0.1;
        let (lo, hi) = (domain.lo, domain.hi);
        Ok(match (lo.is_finite(), hi.is_finite()) {
            (false, false) => vec![-1.0, 0.0, 1.0],
            (true, false) => vec![lo + margin, lo + margin + 1.0, lo + margin + 2.0],
            (false, true) => vec![hi - margin - 2.0, hi - margin - 1.0, hi - margin],
            (true, true) => {
                if hi - lo <= 2.0 * margin {
                    return Err(Error::Grid(format!(
                        "domain {domain} is too narrow for eps1 up to {reach}"
                    )));
                }
                let (a, b) = (lo + margin, hi - margin);
                vec![a, 0.5 * (a + b), b]
            }
        })
    }

    /// Payoff window `[min x0 - max eps1, max x0 + max eps1]`.
    pub fn x_window(&self, domain: Interval) -> Result<(f64, f64)> {
        let x0 = self.x0_levels(domain)?;
        let reach = self.eps1.iter().fold(0.0f64, |m, &e| m.max(e));
        let lo = x0.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        let hi = x0.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
        Ok((lo - reach, hi + reach))
    }

    /// Cross product of wealth levels, `eps1` and the `(p0, eps2)` pairs.
    pub fn rdu_scenarios(&self, domain: Interval) -> Result<Vec<Scenario>> {
        let pairs = self.dt_scenarios()?;
        let x0 = self.x0_levels(domain)?;
        let mut out = Vec::with_capacity(x0.len() * self.eps1.len() * pairs.len());
        for &x in &x0 {
            for &e1 in &self.eps1 {
                for &(p0, e2) in &pairs {
                    out.push(Scenario::new(x, p0, e1, e2)?);
                }
            }
        }
        Ok(out)
    }
}

/// Raises the absolute risk aversion of `u` everywhere by moving its
/// parameter within the family: linear becomes `cara:step`, CARA `a`
/// becomes `a + step`, CRRA (and log) `eta` becomes `eta + step`, quadratic
/// `b` becomes `b + step`.
pub fn concavify_utility(u: &UtilityFn, step: f64) -> Result<UtilityFn> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter(format!("step = {step} must be positive")));
    }
    match u.family() {
        UtilityFamily::Linear => UtilityFn::cara(step),
        UtilityFamily::Cara { a } if a + step == 0.0 => Ok(UtilityFn::linear()),
        UtilityFamily::Cara { a } => UtilityFn::cara(a + step),
        UtilityFamily::Crra { eta } => UtilityFn::crra(eta + step),
        UtilityFamily::Log => UtilityFn::crra(1.0 + step),
        UtilityFamily::Quadratic { b } if b + step == 0.0 => Ok(UtilityFn::linear()),
        UtilityFamily::Quadratic { b } => UtilityFn::quadratic(b + step),
    }
}
