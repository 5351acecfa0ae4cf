use crate::error::{Error, Result};
use crate::evalcore::DecisionMaker;

use super::scenario::Scenario;

const BAND_SLACK: f64 = 1e-12;

/// `(h(p0-eps2), h(p0), h(p0+eps2))`
fn weight_triple(dm: &DecisionMaker, s: &Scenario) -> Result<(f64, f64, f64)> {
    let (lo, hi) = s.probability_band();
    let h = &dm.weighting;
    let t = (h.eval(lo)?, h.eval(s.p0())?, h.eval(hi)?);
    if !(t.2 - t.0 > 0.0) {
        return Err(Error::Degenerate(format!(
            "h(p0 + eps2) - h(p0 - eps2) = {} is not positive",
            t.2 - t.0
        )));
    }
    Ok(t)
}

/// `(U(x0-eps1), U(x0), U(x0+eps1))`
fn utility_triple(dm: &DecisionMaker, s: &Scenario) -> Result<(f64, f64, f64)> {
    s.validate_for(dm)?;
    let u = &dm.utility;
    let t = (u.eval(s.x0() - s.eps1())?, u.eval(s.x0())?, u.eval(s.x0() + s.eps1())?);
    if !(t.2 - t.0 > 0.0) {
        return Err(Error::Degenerate(format!(
            "U(x0 + eps1) - U(x0 - eps1) = {} is not positive",
            t.2 - t.0
        )));
    }
    Ok(t)
}

/// Normalized decision weights `(w-, w+)` of the low and high payoff.
pub(crate) fn payoff_weights(dm: &DecisionMaker, s: &Scenario) -> Result<(f64, f64)> {
    let (h_lo, h_mid, h_hi) = weight_triple(dm, s)?;
    let dh = h_hi - h_lo;
    Ok(((h_mid - h_lo) / dh, (h_hi - h_mid) / dh))
}

/// Normalized utility gaps `(v-, v+)` below and above `x0`.
pub(crate) fn utility_weights(dm: &DecisionMaker, s: &Scenario) -> Result<(f64, f64)> {
    let (u_lo, u_mid, u_hi) = utility_triple(dm, s)?;
    let du = u_hi - u_lo;
    Ok(((u_mid - u_lo) / du, (u_hi - u_mid) / du))
}

/// `(-U''(x0)/U'(x0), -h''(p0)/h'(p0))`
pub fn local_indexes(dm: &DecisionMaker, x0: f64, p0: f64) -> Result<(f64, f64)> {
    Ok((dm.utility.ara(x0)?, dm.weighting.dual_index(p0)?))
}

/// RDU risk premium `sigma` solving
/// `Δh U(x0 - sigma) = (h(p0) - h(p0-eps2)) U(x0-eps1) + (h(p0+eps2) - h(p0)) U(x0+eps1)`.
pub fn rdu_risk_premium_exact(dm: &DecisionMaker, s: &Scenario) -> Result<f64> {
    let (w_lo, w_hi) = payoff_weights(dm, s)?;
    let (u_lo, _, u_hi) = utility_triple(dm, s)?;
    let mean = (w_lo * u_lo + w_hi * u_hi).clamp(u_lo, u_hi);
    Ok(s.x0() - dm.utility.inverse(mean)?)
}

/// `Δh U(x0 - sigma) - [(h(p0) - h(p0-eps2)) U(x0-eps1) + (h(p0+eps2) - h(p0)) U(x0+eps1)]`
pub fn rdu_risk_premium_residual(dm: &DecisionMaker, s: &Scenario, sigma: f64) -> Result<f64> {
    let (h_lo, h_mid, h_hi) = weight_triple(dm, s)?;
    let (u_lo, _, u_hi) = utility_triple(dm, s)?;
    let shifted = dm.utility.eval(s.x0() - sigma)?;
    Ok((h_hi - h_lo) * shifted - ((h_mid - h_lo) * u_lo + (h_hi - h_mid) * u_hi))
}

/// `-½ eps1 eps2 h''(p0)/h'(p0) - ½ eps1² U''(x0)/U'(x0)`
pub fn rdu_risk_premium_approx(dm: &DecisionMaker, s: &Scenario) -> Result<f64> {
    s.validate_for(dm)?;
    let (ara, di) = local_indexes(dm, s.x0(), s.p0())?;
    Ok(0.5 * s.eps1() * s.eps2() * di + 0.5 * s.eps1() * s.eps1() * ara)
}

/// RDU probability premium `mu` solving
/// `Δh U(x0) = (h(p0-mu) - h(p0-eps2)) U(x0-eps1) + (h(p0+eps2) - h(p0-mu)) U(x0+eps1)`.
pub fn rdu_probability_premium_exact(dm: &DecisionMaker, s: &Scenario) -> Result<f64> {
    let (h_lo, _, h_hi) = weight_triple(dm, s)?;
    let (v_lo, v_hi) = utility_weights(dm, s)?;
    let inner = h_hi * v_hi + h_lo * v_lo;
    if inner < h_lo - BAND_SLACK || inner > h_hi + BAND_SLACK {
        return Err(Error::Infeasible(format!(
            "h(p0 - mu) = {inner} leaves [{h_lo}, {h_hi}]"
        )));
    }
    let (lo, hi) = s.probability_band();
    let p = dm.weighting.inverse_within(inner.clamp(h_lo, h_hi), lo, hi)?;
    if p < lo - BAND_SLACK || p > hi + BAND_SLACK {
        return Err(Error::Infeasible(format!(
            "p0 - mu = {p} leaves the band [{lo}, {hi}]"
        )));
    }
    Ok(s.p0() - p)
}

/// `Δh U(x0) - [(h(p0-mu) - h(p0-eps2)) U(x0-eps1) + (h(p0+eps2) - h(p0-mu)) U(x0+eps1)]`
pub fn rdu_probability_premium_residual(dm: &DecisionMaker, s: &Scenario, mu: f64) -> Result<f64> {
    let (h_lo, _, h_hi) = weight_triple(dm, s)?;
    let (u_lo, u_mid, u_hi) = utility_triple(dm, s)?;
    let h_mu = dm.weighting.eval((s.p0() - mu).clamp(0.0, 1.0))?;
    Ok((h_hi - h_lo) * u_mid - ((h_mu - h_lo) * u_lo + (h_hi - h_mu) * u_hi))
}

/// `-½ eps2² h''(p0)/h'(p0) - ½ eps1 eps2 U''(x0)/U'(x0)`
pub fn rdu_probability_premium_approx(dm: &DecisionMaker, s: &Scenario) -> Result<f64> {
    s.validate_for(dm)?;
    let (ara, di) = local_indexes(dm, s.x0(), s.p0())?;
    Ok(0.5 * s.eps2() * s.eps2() * di + 0.5 * s.eps1() * s.eps2() * ara)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funclib::{UtilityFn, WeightingFn};
    use crate::premia::{
        dt_probability_premium_exact, dt_risk_premium_exact, eu_probability_premium_exact,
        eu_risk_premium_exact,
    };
    use proptest::prelude::*;

    fn dm(u: UtilityFn, h: WeightingFn) -> DecisionMaker {
        DecisionMaker::new(u, h)
    }

    #[test]
    fn identity_pair_is_neutral() {
        let d = dm(UtilityFn::linear(), WeightingFn::identity());
        let s = Scenario::new(0.3, 0.4, 0.1, 0.2).unwrap();
        assert!(rdu_risk_premium_exact(&d, &s).unwrap().abs() < 1e-16);
        assert!(rdu_probability_premium_exact(&d, &s).unwrap().abs() < 1e-16);
        assert_eq!(rdu_risk_premium_approx(&d, &s).unwrap(), 0.0);
        assert_eq!(rdu_probability_premium_approx(&d, &s).unwrap(), 0.0);
    }

    #[test]
    fn linear_utility_power_two() {
        let d = dm(UtilityFn::linear(), WeightingFn::power(2.0).unwrap());
        let s = Scenario::new(0.0, 0.5, 0.1, 0.25).unwrap();
        let sigma = rdu_risk_premium_exact(&d, &s).unwrap();
        assert!((sigma + 0.025).abs() < 1e-15);
    }

    #[test]
    fn approximation_examples() {
        let d = dm(UtilityFn::cara(1.0).unwrap(), WeightingFn::power(2.0).unwrap());
        let s = Scenario::new(0.0, 0.5, 0.1, 0.25).unwrap();
        assert!((rdu_risk_premium_approx(&d, &s).unwrap() + 0.020).abs() < 1e-15);
        assert!((rdu_probability_premium_approx(&d, &s).unwrap() + 0.050).abs() < 1e-15);

        let d = dm(UtilityFn::linear(), WeightingFn::power(0.5).unwrap());
        assert!((rdu_risk_premium_approx(&d, &s).unwrap() - 0.0125).abs() < 1e-15);
    }

    #[test]
    fn linear_weights_probability_premium() {
        let d = dm(UtilityFn::cara(1.0).unwrap(), WeightingFn::identity());
        let s = Scenario::new(0.0, 0.5, 0.1, 0.25).unwrap();
        let mu = rdu_probability_premium_exact(&d, &s).unwrap();
        let gamma = eu_probability_premium_exact(&d.utility, 0.0, 0.1).unwrap();
        assert!((mu - 2.0 * 0.25 * gamma).abs() < 1e-15);
        assert!((mu - 0.0124896).abs() < 1e-7);
    }

    #[test]
    fn local_index_values() {
        let d = dm(UtilityFn::cara(2.5).unwrap(), WeightingFn::power(3.0).unwrap());
        for (x0, p0) in [(-1.0, 0.2), (0.0, 0.5), (4.0, 0.9)] {
            let (ara, di) = local_indexes(&d, x0, p0).unwrap();
            assert!((ara - 2.5).abs() < 1e-14);
            assert!((di - (1.0 - 3.0) / p0).abs() < 1e-12);
        }
        let (a, b) =
            local_indexes(&dm(UtilityFn::linear(), WeightingFn::identity()), 1.0, 0.5).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
    }

    #[test]
    fn root_found_inverse_stays_in_band() {
        let d = dm(UtilityFn::crra(2.0).unwrap(), WeightingFn::tk(0.5).unwrap());
        let s = Scenario::new(1.0, 0.1, 0.5, 0.1).unwrap();
        let mu = rdu_probability_premium_exact(&d, &s).unwrap();
        assert!(mu.abs() <= 0.1);
        assert!(rdu_probability_premium_residual(&d, &s, mu).unwrap().abs() < 1e-12);
    }

    fn utilities() -> impl Strategy<Value = UtilityFn> {
        prop_oneof![
            Just(UtilityFn::linear()),
            (0.1..4.0f64).prop_map(|a| UtilityFn::cara(a).unwrap()),
            (0.1..4.0f64).prop_map(|e| UtilityFn::crra(e).unwrap()),
            Just(UtilityFn::log()),
        ]
    }

    fn weightings() -> impl Strategy<Value = WeightingFn> {
        prop_oneof![
            Just(WeightingFn::identity()),
            (0.3..3.0f64).prop_map(|t| WeightingFn::power(t).unwrap()),
            (0.4..1.0f64, 0.5..2.0f64).prop_map(|(a, b)| WeightingFn::prelec(a, b).unwrap()),
            (0.3..1.0f64).prop_map(|g| WeightingFn::tk(g).unwrap()),
        ]
    }

    fn scenarios() -> impl Strategy<Value = Scenario> {
        (1.0..3.0f64, 0.05..0.95f64, 0.01..0.9f64, 0.01..1.0f64).prop_map(|(x0, p0, e1, f)| {
            let cap = p0.min(1.0 - p0);
            Scenario::new(x0, p0, e1, (f * cap).max(1e-3)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn residuals_below_solver_tolerance(u in utilities(), h in weightings(), s in scenarios()) {
            let d = dm(u, h);
            let sigma = rdu_risk_premium_exact(&d, &s).unwrap();
            let mu = rdu_probability_premium_exact(&d, &s).unwrap();
            prop_assert!(rdu_risk_premium_residual(&d, &s, sigma).unwrap().abs() < 1e-12);
            prop_assert!(rdu_probability_premium_residual(&d, &s, mu).unwrap().abs() < 1e-12);
            prop_assert!(sigma.abs() <= s.eps1());
            prop_assert!(mu.abs() <= s.eps2() + 1e-15);
        }

        #[test]
        fn identity_weighting_reduces_to_eu(u in utilities(), s in scenarios()) {
            let d = dm(u, WeightingFn::identity());
            let sigma = rdu_risk_premium_exact(&d, &s).unwrap();
            let mu = rdu_probability_premium_exact(&d, &s).unwrap();
            let pi = eu_risk_premium_exact(&u, s.x0(), s.eps1()).unwrap();
            let gamma = eu_probability_premium_exact(&u, s.x0(), s.eps1()).unwrap();
            prop_assert!((sigma - pi).abs() < 1e-10);
            prop_assert!((mu - 2.0 * s.eps2() * gamma).abs() < 1e-10);
        }

        #[test]
        fn linear_utility_reduces_to_dt(h in weightings(), s in scenarios()) {
            let d = dm(UtilityFn::linear(), h.clone());
            let sigma = rdu_risk_premium_exact(&d, &s).unwrap();
            let mu = rdu_probability_premium_exact(&d, &s).unwrap();
            let rho = dt_risk_premium_exact(&h, s.p0(), s.eps2()).unwrap();
            let lambda = dt_probability_premium_exact(&h, s.p0(), s.eps2()).unwrap();
            prop_assert!((sigma - 2.0 * s.eps1() * rho).abs() < 1e-10);
            prop_assert!((mu - lambda).abs() < 1e-10);
        }

        #[test]
        fn concave_pair_is_averse(a in 0.1..4.0f64, t in 0.3..0.95f64, s in scenarios()) {
            let d = dm(UtilityFn::cara(a).unwrap(), WeightingFn::power(t).unwrap());
            prop_assert!(rdu_risk_premium_exact(&d, &s).unwrap() > 0.0);
            prop_assert!(rdu_probability_premium_exact(&d, &s).unwrap() > 0.0);
        }
    }
}
