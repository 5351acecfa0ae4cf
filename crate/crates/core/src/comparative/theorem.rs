use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalcore::DecisionMaker;
use crate::funclib::{SmoothFn, UtilityFn, WeightingFn};

use super::checks::*;
use super::grids::ComparisonGrids;
use super::verdict::Verdict;
use super::{CONDITION_TOL, PREMIUM_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Two DT decision makers.
    Dt,
    /// Two RDU decision makers.
    Rdu,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub p_points: usize,
    pub t_points: usize,
    pub scenarios: usize,
    pub quadruples: usize,
    pub x_window: Option<[f64; 2]>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub condition: f64,
    pub premium: f64,
}

/// Verdicts on the five conditions for "decision maker 2 is at least as risk
/// averse as decision maker 1".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub theorem: Theorem,
    pub more_averse: String,
    pub less_averse: String,
    pub conditions: Vec<Verdict>,
    /// All verdicts hold, or all fail.
    pub consistent: bool,
    pub holds: bool,
    pub grids: GridSummary,
    pub tolerances: Tolerances,
}

impl ComparisonReport {
    fn assemble(
        theorem: Theorem,
        more_averse: String,
        less_averse: String,
        conditions: [Verdict; 5],
        grids: GridSummary,
    ) -> Self {
        let names = [
            "(i) index dominance",
            "(ii) risk premium dominance",
            "(iii) probability premium dominance",
            "(iv) concave composition",
            "(v) cross ratio",
        ];
        let conditions: Vec<Verdict> =
            conditions.into_iter().zip(names).map(|(v, n)| v.named(n)).collect();
        let held = conditions.iter().filter(|v| v.holds()).count();
        Self {
            theorem,
            more_averse,
            less_averse,
            consistent: held == 0 || held == conditions.len(),
            holds: held == conditions.len(),
            conditions,
            grids,
            tolerances: Tolerances { condition: CONDITION_TOL, premium: PREMIUM_TOL },
        }
    }
}

/// DT comparison of `h2` (claimed more averse) against `h1`.
pub fn check_theorem1(
    h2: &WeightingFn,
    h1: &WeightingFn,
    grids: &ComparisonGrids,
) -> Result<ComparisonReport> {
    let pairs = grids.dt_scenarios()?;
    let t_grid = grids.t_grid();
    let quads = sample_quadruples(0.0, 1.0, grids.quadruples, grids.seed)?;

    let index = check_index_dominance(h2, h1, &grids.p, "p")?;
    let (risk, prob) = check_premium_dominance_dt(h2, h1, &pairs)?;
    let comp = check_concave_composition(h2, h1, &t_grid)?;
    let cross = check_cross_ratio(h2, h1, &quads)?;

    Ok(ComparisonReport::assemble(
        Theorem::Dt,
        h2.to_string(),
        h1.to_string(),
        [index, risk, prob, comp, cross],
        GridSummary {
            p_points: grids.p.len(),
            t_points: t_grid.len(),
            scenarios: pairs.len(),
            quadruples: quads.len(),
            x_window: None,
            seed: grids.seed,
        },
    ))
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
}

/// RDU comparison of `dm2` (claimed more averse) against `dm1`.
///
/// Utility-side clauses are checked on the payoff window spanned by the
/// scenario grid; premium dominance covers the finite scenario grid only.
pub fn check_theorem2(
    dm2: &DecisionMaker,
    dm1: &DecisionMaker,
    grids: &ComparisonGrids,
) -> Result<ComparisonReport> {
    let (u2, u1): (&UtilityFn, &UtilityFn) = (&dm2.utility, &dm1.utility);
    let (h2, h1) = (&dm2.weighting, &dm1.weighting);
    let domain = u2.domain().intersect(&u1.domain());
    if domain.is_empty() {
        return Err(Error::Grid(format!("utility domains of {u2} and {u1} do not overlap")));
    }
    let (xa, xb) = grids.x_window(domain)?;
    let scenarios = grids.rdu_scenarios(domain)?;
    let n = grids.t_points;
    let x_grid = uniform(xa, xb, n);
    let u_grid = uniform(u1.value(xa)?, u1.value(xb)?, n);
    let t_grid = grids.t_grid();
    let x_quads = sample_quadruples(xa, xb, grids.quadruples, grids.seed)?;
    let p_quads = sample_quadruples(0.0, 1.0, grids.quadruples, grids.seed)?;

    let index = check_index_dominance(u2, u1, &x_grid, "x")?
        .and(check_index_dominance(h2, h1, &grids.p, "p")?);
    let (risk, prob) = check_premium_dominance_rdu(dm2, dm1, &scenarios)?;
    let comp = check_concave_composition(u2, u1, &u_grid)?
        .and(check_concave_composition(h2, h1, &t_grid)?);
    let cross = check_cross_ratio(u2, u1, &x_quads)?.and(check_cross_ratio(h2, h1, &p_quads)?);

    Ok(ComparisonReport::assemble(
        Theorem::Rdu,
        dm2.label.clone(),
        dm1.label.clone(),
        [index, risk, prob, comp, cross],
        GridSummary {
            p_points: grids.p.len(),
            t_points: n,
            scenarios: scenarios.len(),
            quadruples: x_quads.len() + p_quads.len(),
            x_window: Some([xa, xb]),
            seed: grids.seed,
        },
    ))
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model = match self.theorem {
            Theorem::Dt => "DT",
            Theorem::Rdu => "RDU",
        };
        writeln!(f, "{model}: {} vs {}", self.more_averse, self.less_averse)?;
        writeln!(
            f,
            "{:<37} {:<17} {:>13} {:>8}  witness",
            "condition", "verdict", "min slack", "checked"
        )?;
        for v in &self.conditions {
            let witness = v.witness.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<37} {:<17} {:>13.6e} {:>8}  {witness}",
                v.condition,
                v.status.to_string(),
                v.min_slack,
                v.checked
            )?;
        }
        write!(
            f,
            "consistent: {}, more averse: {}",
            if self.consistent { "yes" } else { "no" },
            if self.holds { "yes" } else { "no" }
        )
    }
}
