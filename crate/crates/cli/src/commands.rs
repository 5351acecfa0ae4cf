use std::fs::File;
use std::path::Path;

use rdu_premia::comparative::{check_theorem1, check_theorem2, ComparisonReport};
use rdu_premia::evalcore::{
    certainty_equivalent, evaluate_dual_form, evaluate_rdu, DecisionMaker, Lottery,
};
use rdu_premia::funclib::{UtilityFn, WeightingFn};
use rdu_premia::numerics::convergence_order;
use rdu_premia::premia::*;
use serde::Serialize;

use crate::args::{Axis, Format, PremiumKind};
use crate::config::{parse_spec, Common, FileConfig, Merger};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_num, to_json, Cell, Rows, TABLE_DIGITS};

const MAX_STEPS: usize = 100_000;
const MAX_LEVELS: usize = 40;

fn decision_maker(c: &Common) -> DecisionMaker {
    DecisionMaker::new(c.utility, c.weighting.clone())
}

/// Builds the scenario and checks it against the utility domain.
fn scenario(dm: &DecisionMaker, x0: f64, p0: f64, eps1: f64, eps2: f64) -> CliResult<Scenario> {
    let s = Scenario::new(x0, p0, eps1, eps2)?;
    s.validate_for(dm)?;
    Ok(s)
}

pub fn load_lottery(path: &Path) -> CliResult<Lottery> {
    let open = || {
        File::open(path)
            .map_err(|e| CliError::Input(format!("cannot read lottery {}: {e}", path.display())))
    };
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        Lottery::from_csv(open()?)
            .map_err(|e| CliError::Input(format!("lottery {}: {e}", path.display())))
    } else {
        serde_json::from_reader(std::io::BufReader::new(open()?))
            .map_err(|e| CliError::Input(format!("lottery {}: {e}", path.display())))
    }
}

#[derive(Serialize)]
struct EvalOutput {
    utility: UtilityFn,
    weighting: WeightingFn,
    rdu: f64,
    dual_form: f64,
    certainty_equivalent: f64,
}

pub fn eval(
    c: &Common,
    file: &FileConfig,
    lottery_flag: Option<&Path>,
    m: &mut Merger,
) -> CliResult<String> {
    let lottery = match (lottery_flag, &file.lottery) {
        (Some(p), Some(l)) => {
            m.warnings
                .push(format!("config value lottery overrides --lottery {}", p.display()));
            l.clone()
        }
        (None, Some(l)) => l.clone(),
        (Some(p), None) => load_lottery(p)?,
        (None, None) => {
            return Err(CliError::Input("eval needs --lottery or a lottery in the config".into()))
        }
    };
    let dm = decision_maker(c);
    let out = EvalOutput {
        utility: dm.utility,
        weighting: dm.weighting.clone(),
        rdu: evaluate_rdu(&dm, &lottery)?,
        dual_form: evaluate_dual_form(&dm, &lottery)?,
        certainty_equivalent: certainty_equivalent(&dm, &lottery)?,
    };
    let mut rows = Rows::new(vec!["rdu".into(), "dual_form".into(), "certainty_equivalent".into()]);
    rows.push(vec![out.rdu.into(), out.dual_form.into(), out.certainty_equivalent.into()]);
    match c.format.unwrap_or(Format::Table) {
        Format::Json => to_json(&out),
        Format::Csv => rows.to_csv(),
        Format::Table => Ok(format!(
            "decision maker: {}\n{}",
            dm.label,
            rows.to_table()
        )),
    }
}

fn report_header() -> Vec<String> {
    let mut h: Vec<String> = ["x0", "p0", "eps1", "eps2"].iter().map(|s| s.to_string()).collect();
    for name in ["pi", "gamma", "rho", "lambda", "sigma", "mu"] {
        for part in ["exact", "approx", "delta"] {
            h.push(format!("{name}_{part}"));
        }
    }
    h.push("ara".into());
    h.push("dual_index".into());
    for name in ["pi", "gamma", "rho", "lambda", "sigma", "mu"] {
        h.push(format!("residual_{name}"));
    }
    for name in ["pi_gamma", "lambda_rho", "sigma_pi_rho", "mu_gamma_lambda", "sigma_mu"] {
        h.push(format!("link_{name}"));
    }
    h
}

fn report_row(r: &PremiumReport) -> Vec<Cell> {
    let s = &r.scenario;
    let mut row: Vec<Cell> = vec![s.x0().into(), s.p0().into(), s.eps1().into(), s.eps2().into()];
    for (_, p) in r.pairs() {
        row.extend([p.exact.into(), p.approx.into(), p.delta.into()]);
    }
    row.push(r.ara.into());
    row.push(r.dual_index.into());
    let res = &r.residuals;
    for v in [res.pi, res.gamma, res.rho, res.lambda, res.sigma, res.mu] {
        row.push(v.into());
    }
    let l = &r.links;
    for v in [l.pi_gamma, l.lambda_rho, l.sigma_pi_rho, l.mu_gamma_lambda, l.sigma_mu] {
        row.push(v.into());
    }
    row
}

#[derive(Serialize)]
struct PremiaOutput<'a> {
    utility: UtilityFn,
    weighting: &'a WeightingFn,
    report: &'a PremiumReport,
}

fn premia_table(dm: &DecisionMaker, r: &PremiumReport) -> String {
    let s = &r.scenario;
    let n = |v: f64| fmt_num(v, TABLE_DIGITS);
    let mut out = format!(
        "decision maker: {}\nscenario: x0={} p0={} eps1={} eps2={}\n",
        dm.label,
        n(s.x0()),
        n(s.p0()),
        n(s.eps1()),
        n(s.eps2())
    );
    let mut t = Rows::new(vec![
        "premium".into(),
        "exact".into(),
        "approx".into(),
        "delta".into(),
        "residual".into(),
    ]);
    let res = &r.residuals;
    let residuals = [res.pi, res.gamma, res.rho, res.lambda, res.sigma, res.mu];
    for ((name, p), res) in r.pairs().into_iter().zip(residuals) {
        t.push(vec![name.into(), p.exact.into(), p.approx.into(), p.delta.into(), res.into()]);
    }
    out.push_str(&t.to_table());
    out.push_str(&format!("ara (-U''/U' at x0): {}\n", n(r.ara)));
    out.push_str(&format!("dual index (-h''/h' at p0): {}\n", n(r.dual_index)));
    let l = &r.links;
    out.push_str(&format!(
        "link deltas: pi-gamma {} lambda-rho {} sigma-pi-rho {} mu-gamma-lambda {} sigma-mu {}\n",
        n(l.pi_gamma),
        n(l.lambda_rho),
        n(l.sigma_pi_rho),
        n(l.mu_gamma_lambda),
        n(l.sigma_mu)
    ));
    out
}

pub fn premia(c: &Common) -> CliResult<String> {
    let dm = decision_maker(c);
    let s = scenario(&dm, c.x0, c.p0, c.eps1, c.eps2)?;
    let report = premium_report(&dm, &s)?;
    match c.format.unwrap_or(Format::Table) {
        Format::Json => to_json(&PremiaOutput {
            utility: dm.utility,
            weighting: &dm.weighting,
            report: &report,
        }),
        Format::Csv => {
            let mut rows = Rows::new(report_header());
            rows.push(report_row(&report));
            rows.to_csv()
        }
        Format::Table => Ok(premia_table(&dm, &report)),
    }
}

pub struct SweepOptions {
    pub axis: Option<Axis>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
}

fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![from];
    }
    let h = (to - from) / (steps - 1) as f64;
    (0..steps).map(|i| if i == steps - 1 { to } else { from + h * i as f64 }).collect()
}

pub fn sweep(c: &Common, file: &FileConfig, o: SweepOptions, m: &mut Merger) -> CliResult<String> {
    let axis = match (o.axis, file.axis) {
        (Some(f), Some(cf)) if f != cf => {
            m.warnings.push(format!("config value axis = {} overrides --axis {}", cf.name(), f.name()));
            cf
        }
        (f, cf) => cf.or(f).ok_or_else(|| CliError::Input("sweep needs --axis".into()))?,
    };
    let from = m
        .pick("from", o.from, file.from)
        .ok_or_else(|| CliError::Input("sweep needs --from".into()))?;
    let to = m
        .pick("to", o.to, file.to)
        .ok_or_else(|| CliError::Input("sweep needs --to".into()))?;
    let steps = m
        .pick("steps", o.steps, file.steps)
        .ok_or_else(|| CliError::Input("sweep needs --steps".into()))?;
    if !(from.is_finite() && to.is_finite()) || steps == 0 || from > to {
        return Err(CliError::Input(format!(
            "empty sweep range: from {from} to {to} in {steps} steps"
        )));
    }
    if steps > MAX_STEPS {
        return Err(CliError::Input(format!("steps = {steps} exceeds {MAX_STEPS}")));
    }

    let dm = decision_maker(c);
    let scenarios: Vec<Scenario> = linspace(from, to, steps)
        .into_iter()
        .map(|v| {
            let (mut x0, mut p0, mut e1, mut e2) = (c.x0, c.p0, c.eps1, c.eps2);
            match axis {
                Axis::Eps1 => e1 = v,
                Axis::Eps2 => e2 = v,
                Axis::P0 => p0 = v,
                Axis::X0 => x0 = v,
            }
            scenario(&dm, x0, p0, e1, e2).map_err(|e| match e {
                CliError::Input(msg) => CliError::Input(format!("{} = {v}: {msg}", axis.name())),
                other => other,
            })
        })
        .collect::<CliResult<_>>()?;

    let mut rows = Rows::new(report_header());
    for s in &scenarios {
        rows.push(report_row(&premium_report(&dm, s)?));
    }
    match c.format.unwrap_or(Format::Csv) {
        Format::Csv => rows.to_csv(),
        Format::Table => Ok(rows.to_table()),
        Format::Json => to_json(&serde_json::json!({
            "utility": dm.utility,
            "weighting": dm.weighting,
            "axis": axis.name(),
            "rows": rows.to_json_value(),
        })),
    }
}

fn exact_and_approx(dm: &DecisionMaker, s: &Scenario, kind: PremiumKind) -> CliResult<(f64, f64)> {
    let (u, h) = (&dm.utility, &dm.weighting);
    let (x0, p0, e1, e2) = (s.x0(), s.p0(), s.eps1(), s.eps2());
    Ok(match kind {
        PremiumKind::Pi => (eu_risk_premium_exact(u, x0, e1)?, eu_risk_premium_approx(u, x0, e1)?),
        PremiumKind::Gamma => (
            eu_probability_premium_exact(u, x0, e1)?,
            eu_probability_premium_approx(u, x0, e1)?,
        ),
        PremiumKind::Rho => (dt_risk_premium_exact(h, p0, e2)?, dt_risk_premium_approx(h, p0, e2)?),
        PremiumKind::Lambda => (
            dt_probability_premium_exact(h, p0, e2)?,
            dt_probability_premium_approx(h, p0, e2)?,
        ),
        PremiumKind::Sigma => (rdu_risk_premium_exact(dm, s)?, rdu_risk_premium_approx(dm, s)?),
        PremiumKind::Mu => (
            rdu_probability_premium_exact(dm, s)?,
            rdu_probability_premium_approx(dm, s)?,
        ),
    })
}

/// `(scale used for the fit, normaliser of the error)`
fn scales(kind: PremiumKind, e1: f64, e2: f64) -> (f64, f64) {
    match kind {
        PremiumKind::Pi => (e1, e1 * e1),
        PremiumKind::Gamma => (e1, e1),
        PremiumKind::Rho => (e2, e2),
        PremiumKind::Lambda => (e2, e2 * e2),
        PremiumKind::Sigma => (e1, e1 * (e1 + e2)),
        PremiumKind::Mu => (e2, e2 * (e1 + e2)),
    }
}

#[derive(Serialize)]
struct ConvergenceOutput {
    premium: &'static str,
    utility: UtilityFn,
    weighting: WeightingFn,
    /// Fitted order, or "exact" when every error vanishes.
    order: serde_json::Value,
    levels: serde_json::Value,
}

pub fn convergence(
    c: &Common,
    file: &FileConfig,
    premium: Option<PremiumKind>,
    levels: Option<usize>,
    m: &mut Merger,
) -> CliResult<String> {
    let kind = match (premium, file.premium) {
        (Some(f), Some(cf)) if f != cf => {
            m.warnings.push(format!(
                "config value premium = {} overrides --premium {}",
                cf.name(),
                f.name()
            ));
            cf
        }
        (f, cf) => cf.or(f).unwrap_or(PremiumKind::Pi),
    };
    let levels = m.pick("levels", levels, file.levels).unwrap_or(5);
    if !(2..=MAX_LEVELS).contains(&levels) {
        return Err(CliError::Input(format!("levels = {levels} must lie in 2..={MAX_LEVELS}")));
    }
    let dm = decision_maker(c);
    let (halve1, halve2) = match kind {
        PremiumKind::Pi | PremiumKind::Gamma => (true, false),
        PremiumKind::Rho | PremiumKind::Lambda => (false, true),
        PremiumKind::Sigma | PremiumKind::Mu => (true, true),
    };
    let scenarios: Vec<Scenario> = (0..levels)
        .map(|k| {
            let f = 0.5f64.powi(k as i32);
            let e1 = if halve1 { c.eps1 * f } else { c.eps1 };
            let e2 = if halve2 { c.eps2 * f } else { c.eps2 };
            scenario(&dm, c.x0, c.p0, e1, e2)
        })
        .collect::<CliResult<_>>()?;

    let mut rows = Rows::new(
        ["level", "eps1", "eps2", "exact", "approx", "abs_error", "normalized_error"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    let mut points = Vec::with_capacity(levels);
    for (k, s) in scenarios.iter().enumerate() {
        let (exact, approx) = exact_and_approx(&dm, s, kind)?;
        let err = (exact - approx).abs();
        let (scale, norm) = scales(kind, s.eps1(), s.eps2());
        points.push((scale, err));
        rows.push(vec![
            (k as f64).into(),
            s.eps1().into(),
            s.eps2().into(),
            exact.into(),
            approx.into(),
            err.into(),
            (err / norm).into(),
        ]);
    }
    let order = convergence_order(&points);
    let order_text = order.map_or_else(|| "exact".to_string(), |o| fmt_num(o, TABLE_DIGITS));
    match c.format.unwrap_or(Format::Table) {
        Format::Json => to_json(&ConvergenceOutput {
            premium: kind.name(),
            utility: dm.utility,
            weighting: dm.weighting.clone(),
            order: order.map_or_else(|| "exact".into(), |o| serde_json::json!(o)),
            levels: rows.to_json_value(),
        }),
        Format::Csv => {
            let mut with_order = Rows::new(rows.header.clone());
            with_order.header.push("fitted_order".into());
            let cell: Cell = match order {
                Some(o) => o.into(),
                None => "exact".into(),
            };
            for mut r in rows.rows {
                r.push(cell.clone());
                with_order.push(r);
            }
            with_order.to_csv()
        }
        Format::Table => Ok(format!(
            "premium: {}\ndecision maker: {}\n{}fitted order: {order_text}\n",
            kind.name(),
            dm.label,
            rows.to_table()
        )),
    }
}

pub struct CompareOptions {
    pub utility2: Option<String>,
    pub weighting2: Option<String>,
    pub seed: Option<u64>,
    pub quadruples: Option<usize>,
}

pub fn compare(c: &Common, file: &FileConfig, o: CompareOptions, m: &mut Merger) -> CliResult<String> {
    let u2 = o.utility2.as_deref().map(|s| parse_spec("utility2", s)).transpose()?;
    let h2 = o.weighting2.as_deref().map(|s| parse_spec("weighting2", s)).transpose()?;
    let u2: UtilityFn = m.pick("utility2", u2, file.utility2).unwrap_or(c.utility);
    let h2: WeightingFn = m
        .pick("weighting2", h2, file.weighting2.clone())
        .unwrap_or_else(|| c.weighting.clone());

    let mut grids = file.grids.clone().unwrap_or_default();
    if let Some(seed) = m.pick("seed", o.seed, file.seed) {
        grids.seed = seed;
    }
    if let Some(q) = m.pick("quadruples", o.quadruples, file.quadruples) {
        grids.quadruples = q;
    }

    let dm1 = decision_maker(c);
    let dm2 = DecisionMaker::new(u2, h2);
    let report: ComparisonReport = if dm1.utility.is_linear() && dm2.utility.is_linear() {
        check_theorem1(&dm2.weighting, &dm1.weighting, &grids)?
    } else {
        check_theorem2(&dm2, &dm1, &grids)?
    };
    match c.format.unwrap_or(Format::Table) {
        Format::Json => to_json(&report),
        Format::Table => Ok(format!("{report}\n")),
        Format::Csv => {
            let mut rows = Rows::new(
                ["condition", "status", "min_slack", "checked", "witness"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            for v in &report.conditions {
                let witness = v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                let status = serde_json::to_value(v.status)
                    .ok()
                    .and_then(|s| s.as_str().map(str::to_string))
                    .unwrap_or_default();
                rows.push(vec![
                    v.condition.clone().into(),
                    status.into(),
                    v.min_slack.into(),
                    (v.checked as f64).into(),
                    witness.into(),
                ]);
            }
            rows.to_csv()
        }
    }
}
