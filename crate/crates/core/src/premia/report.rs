use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::evalcore::DecisionMaker;

use super::dt::*;
use super::eu::*;
use super::rdu::*;
use super::scenario::Scenario;

/// Exact premium, its second-order approximation and `approx - exact`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PremiumPair {
    pub exact: f64,
    pub approx: f64,
    pub delta: f64,
}

impl PremiumPair {
    pub fn new(exact: f64, approx: f64) -> Self {
        Self { exact, approx, delta: approx - exact }
    }
}

/// Indifference-equation residual at each exact premium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub pi: f64,
    pub gamma: f64,
    pub rho: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub mu: f64,
}

impl Residuals {
    pub fn max_abs(&self) -> f64 {
        [self.pi, self.gamma, self.rho, self.lambda, self.sigma, self.mu]
            .iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Deviations from the link identities among the approximations; each is
/// zero up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkDeltas {
    /// `pi^ - 2 eps1 gamma^`
    pub pi_gamma: f64,
    /// `lambda^ - 2 eps2 rho^`
    pub lambda_rho: f64,
    /// `sigma^ - (pi^ + 2 eps1 rho^)`
    pub sigma_pi_rho: f64,
    /// `mu^ - (2 eps2 gamma^ + lambda^)`
    pub mu_gamma_lambda: f64,
    /// `sigma^ - (eps1 / eps2) mu^`
    pub sigma_mu: f64,
}

impl LinkDeltas {
    pub fn max_abs(&self) -> f64 {
        [self.pi_gamma, self.lambda_rho, self.sigma_pi_rho, self.mu_gamma_lambda, self.sigma_mu]
            .iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PremiumReport {
    pub scenario: Scenario,
    pub pi: PremiumPair,
    pub gamma: PremiumPair,
    pub rho: PremiumPair,
    pub lambda: PremiumPair,
    pub sigma: PremiumPair,
    pub mu: PremiumPair,
    pub ara: f64,
    pub dual_index: f64,
    pub residuals: Residuals,
    pub links: LinkDeltas,
}

impl PremiumReport {
    /// `(name, pair)` in the order pi, gamma, rho, lambda, sigma, mu.
    pub fn pairs(&self) -> [(&'static str, PremiumPair); 6] {
        [
            ("pi", self.pi),
            ("gamma", self.gamma),
            ("rho", self.rho),
            ("lambda", self.lambda),
            ("sigma", self.sigma),
            ("mu", self.mu),
        ]
    }
}

/// All six premia, exact and approximate, at one scenario.
pub fn premium_report(dm: &DecisionMaker, s: &Scenario) -> Result<PremiumReport> {
    s.validate_for(dm)?;
    let (u, h) = (&dm.utility, &dm.weighting);
    let (x0, p0, e1, e2) = (s.x0(), s.p0(), s.eps1(), s.eps2());

    let pi = PremiumPair::new(eu_risk_premium_exact(u, x0, e1)?, eu_risk_premium_approx(u, x0, e1)?);
    let gamma = PremiumPair::new(
        eu_probability_premium_exact(u, x0, e1)?,
        eu_probability_premium_approx(u, x0, e1)?,
    );
    let rho = PremiumPair::new(dt_risk_premium_exact(h, p0, e2)?, dt_risk_premium_approx(h, p0, e2)?);
    let lambda = PremiumPair::new(
        dt_probability_premium_exact(h, p0, e2)?,
        dt_probability_premium_approx(h, p0, e2)?,
    );
    let sigma = PremiumPair::new(rdu_risk_premium_exact(dm, s)?, rdu_risk_premium_approx(dm, s)?);
    let mu = PremiumPair::new(
        rdu_probability_premium_exact(dm, s)?,
        rdu_probability_premium_approx(dm, s)?,
    );
    let (ara, dual_index) = local_indexes(dm, x0, p0)?;

    let residuals = Residuals {
        pi: eu_risk_premium_residual(u, x0, e1, pi.exact)?,
        gamma: eu_probability_premium_residual(u, x0, e1, gamma.exact)?,
        rho: dt_risk_premium_residual(h, p0, e2, rho.exact)?,
        lambda: dt_probability_premium_residual(h, p0, e2, lambda.exact)?,
        sigma: rdu_risk_premium_residual(dm, s, sigma.exact)?,
        mu: rdu_probability_premium_residual(dm, s, mu.exact)?,
    };
    let links = LinkDeltas {
        pi_gamma: pi.approx - 2.0 * e1 * gamma.approx,
        lambda_rho: lambda.approx - 2.0 * e2 * rho.approx,
        sigma_pi_rho: sigma.approx - (pi.approx + 2.0 * e1 * rho.approx),
        mu_gamma_lambda: mu.approx - (2.0 * e2 * gamma.approx + lambda.approx),
        sigma_mu: sigma.approx - (e1 / e2) * mu.approx,
    };

    Ok(PremiumReport {
        scenario: *s,
        pi,
        gamma,
        rho,
        lambda,
        sigma,
        mu,
        ara,
        dual_index,
        residuals,
        links,
    })
}

impl fmt::Display for PremiumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<8} {:>14} {:>14} {:>14}", "premium", "exact", "approx", "delta")?;
        for (name, p) in self.pairs() {
            writeln!(f, "{name:<8} {:>14.6e} {:>14.6e} {:>14.6e}", p.exact, p.approx, p.delta)?;
        }
        writeln!(f, "ara        {:.6e}", self.ara)?;
        writeln!(f, "dual_index {:.6e}", self.dual_index)?;
        writeln!(f, "max |residual| {:.3e}", self.residuals.max_abs())?;
        write!(f, "max |link delta| {:.3e}", self.links.max_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funclib::{UtilityFn, WeightingFn};
    use proptest::prelude::*;

    #[test]
    fn neutral_report_is_zero() {
        let d = DecisionMaker::new(UtilityFn::linear(), WeightingFn::identity());
        let r = premium_report(&d, &Scenario::new(0.0, 0.5, 0.1, 0.25).unwrap()).unwrap();
        for (name, p) in r.pairs() {
            assert!(p.exact.abs() < 1e-15 && p.approx == 0.0, "{name}");
        }
        assert_eq!((r.ara, r.dual_index), (0.0, 0.0));
    }

    #[test]
    fn composes_individual_operations() {
        let d = DecisionMaker::new(UtilityFn::cara(1.0).unwrap(), WeightingFn::power(2.0).unwrap());
        let s = Scenario::new(0.0, 0.5, 0.1, 0.25).unwrap();
        let r = premium_report(&d, &s).unwrap();
        assert_eq!(r.sigma.exact, rdu_risk_premium_exact(&d, &s).unwrap());
        assert_eq!(r.mu.approx, rdu_probability_premium_approx(&d, &s).unwrap());
        assert_eq!(r.pi.exact, eu_risk_premium_exact(&d.utility, 0.0, 0.1).unwrap());
        assert_eq!(r.rho.exact, -0.125);
        assert!((r.sigma.approx + 0.020).abs() < 1e-15);
        assert!((r.mu.approx + 0.050).abs() < 1e-15);
        assert_eq!(r.ara, 1.0);
        assert!((r.dual_index + 2.0).abs() < 1e-15);
        assert!(r.to_string().contains("sigma"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["rho"]["exact"], -0.125);
    }

    proptest! {
        #[test]
        fn residuals_and_links(
            a in 0.1..3.0f64,
            t in 0.3..3.0f64,
            x0 in -2.0..2.0f64,
            p0 in 0.05..0.95f64,
            e1 in 0.01..1.0f64,
            f in 0.01..1.0f64,
        ) {
            let d = DecisionMaker::new(UtilityFn::cara(a).unwrap(), WeightingFn::power(t).unwrap());
            let s = Scenario::new(x0, p0, e1, f * p0.min(1.0 - p0)).unwrap();
            let r = premium_report(&d, &s).unwrap();
            prop_assert!(r.residuals.max_abs() < 1e-12, "{:?}", r.residuals);
            prop_assert!(r.links.max_abs() <= 1e-14, "{:?}", r.links);
        }
    }
}
