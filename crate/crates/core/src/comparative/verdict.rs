use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every slack is nonnegative and at least one exceeds the tolerance.
    Holds,
    /// Every slack is within the tolerance of zero.
    Equal,
    /// No violation beyond the tolerance, but some slack is slightly negative.
    Marginal,
    Fails,
}

impl Status {
    pub fn holds(self) -> bool {
        self != Status::Fails
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Equal => "holds (equal)",
            Status::Marginal => "holds (marginal)",
            Status::Fails => "fails",
        })
    }
}

/// A grid point violating a condition by more than the tolerance, with the
/// two sides of the inequality as stated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub point: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.point.iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
        write!(f, "{} (lhs {:.6e}, rhs {:.6e})", coords.join(" "), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub condition: String,
    pub status: Status,
    pub min_slack: f64,
    pub checked: usize,
    pub tolerance: f64,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status.holds()
    }

    pub fn named(mut self, condition: impl Into<String>) -> Self {
        self.condition = condition.into();
        self
    }

    /// Conjunction of two clauses of one condition. The first failing clause
    /// supplies the witness.
    pub fn and(self, other: Verdict) -> Verdict {
        let status = match (self.status, other.status) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Marginal, _) | (_, Status::Marginal) => Status::Marginal,
            (Status::Equal, Status::Equal) => Status::Equal,
            _ => Status::Holds,
        };
        Verdict {
            condition: self.condition,
            status,
            min_slack: self.min_slack.min(other.min_slack),
            checked: self.checked + other.checked,
            tolerance: self.tolerance.max(other.tolerance),
            witness: self.witness.or(other.witness),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

/// Accumulates the slacks of one condition; negative slack is a violation.
pub(crate) struct Tally {
    condition: &'static str,
    tol: f64,
    min_slack: f64,
    max_abs: f64,
    checked: usize,
    witness: Option<Witness>,
}

impl Tally {
    pub(crate) fn new(condition: &'static str, tol: f64) -> Self {
        Self {
            condition,
            tol,
            min_slack: f64::INFINITY,
            max_abs: 0.0,
            checked: 0,
            witness: None,
        }
    }

    pub(crate) fn record<const N: usize>(
        &mut self,
        slack: f64,
        lhs: f64,
        rhs: f64,
        point: [(&str, f64); N],
    ) -> Result<()> {
        if slack.is_nan() {
            let at: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
            return Err(Error::Degenerate(format!(
                "{}: slack is NaN at {}",
                self.condition,
                at.join(" ")
            )));
        }
        self.checked += 1;
        self.min_slack = self.min_slack.min(slack);
        self.max_abs = self.max_abs.max(slack.abs());
        if slack < -self.tol && self.witness.is_none() {
            self.witness = Some(Witness {
                point: point.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
                lhs,
                rhs,
            });
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<Verdict> {
        if self.checked == 0 {
            return Err(Error::Grid(format!("{}: no grid points to check", self.condition)));
        }
        let status = if self.witness.is_some() {
            Status::Fails
        } else if self.max_abs <= self.tol {
            Status::Equal
        } else if self.min_slack < 0.0 {
            Status::Marginal
        } else {
            Status::Holds
        };
        Ok(Verdict {
            condition: self.condition.to_string(),
            status,
            min_slack: self.min_slack,
            checked: self.checked,
            tolerance: self.tol,
            witness: self.witness,
        })
    }
}
