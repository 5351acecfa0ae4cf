use crate::error::{Error, Result};
use crate::funclib::WeightingFn;

use super::scenario::check_probability_band;

/// Slack allowed when checking that a solved probability stays in its band.
const BAND_SLACK: f64 = 1e-12;

/// Dual risk premium `rho`:
/// `½ [(h(p0) - h(p0-eps2)) - (h(p0+eps2) - h(p0))] / (h(p0+eps2) - h(p0-eps2))`.
pub fn dt_risk_premium_exact(h: &WeightingFn, p0: f64, eps2: f64) -> Result<f64> {
    let (lo, hi) = check_probability_band(p0, eps2)?;
    let (h_lo, h_mid, h_hi) = (h.eval(lo)?, h.eval(p0)?, h.eval(hi)?);
    let spread = h_hi - h_lo;
    if !(spread > 0.0) {
        return Err(Error::Degenerate(format!(
            "h(p0 + eps2) - h(p0 - eps2) = {spread} is not positive"
        )));
    }
    Ok(0.5 * ((h_mid - h_lo) - (h_hi - h_mid)) / spread)
}

/// Residual of the dual risk-premium indifference equation:
/// `(h(p0+eps2) - h(p0-eps2))(½ - rho) - (h(p0+eps2) - h(p0))`.
pub fn dt_risk_premium_residual(h: &WeightingFn, p0: f64, eps2: f64, rho: f64) -> Result<f64> {
    let (lo, hi) = check_probability_band(p0, eps2)?;
    let (h_lo, h_mid, h_hi) = (h.eval(lo)?, h.eval(p0)?, h.eval(hi)?);
    Ok((h_hi - h_lo) * (0.5 - rho) - (h_hi - h_mid))
}

/// `-¼ eps2 h''(p0) / h'(p0)`
pub fn dt_risk_premium_approx(h: &WeightingFn, p0: f64, eps2: f64) -> Result<f64> {
    check_probability_band(p0, eps2)?;
    Ok(-0.25 * eps2 * (h.d2(p0)? / h.d1(p0)?))
}

/// Dual probability premium `lambda` solving
/// `h(p0 - lambda) = ½ (h(p0 - eps2) + h(p0 + eps2))`.
pub fn dt_probability_premium_exact(h: &WeightingFn, p0: f64, eps2: f64) -> Result<f64> {
    let (lo, hi) = check_probability_band(p0, eps2)?;
    let target = 0.5 * (h.eval(lo)? + h.eval(hi)?);
    let p = h.inverse_within(target, lo, hi)?;
    if p < lo - BAND_SLACK || p > hi + BAND_SLACK {
        return Err(Error::Infeasible(format!(
            "p0 - lambda = {p} leaves the band [{lo}, {hi}]"
        )));
    }
    Ok(p0 - p)
}

/// `½ (h(p0 - eps2) - 2 h(p0 - lambda) + h(p0 + eps2))`
pub fn dt_probability_premium_residual(
    h: &WeightingFn,
    p0: f64,
    eps2: f64,
    lambda: f64,
) -> Result<f64> {
    let (lo, hi) = check_probability_band(p0, eps2)?;
    let shifted = (p0 - lambda).clamp(0.0, 1.0);
    Ok(0.5 * (h.eval(lo)? - 2.0 * h.eval(shifted)? + h.eval(hi)?))
}

/// `-½ eps2² h''(p0) / h'(p0)`
pub fn dt_probability_premium_approx(h: &WeightingFn, p0: f64, eps2: f64) -> Result<f64> {
    check_probability_band(p0, eps2)?;
    Ok(-0.5 * eps2 * eps2 * (h.d2(p0)? / h.d1(p0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn identity_has_no_premia() {
        let h = WeightingFn::identity();
        assert_eq!(dt_risk_premium_exact(&h, 0.3, 0.2).unwrap(), 0.0);
        assert_eq!(dt_risk_premium_approx(&h, 0.3, 0.2).unwrap(), 0.0);
        assert!(dt_probability_premium_exact(&h, 0.3, 0.2).unwrap().abs() < 1e-16);
        assert_eq!(dt_probability_premium_approx(&h, 0.3, 0.2).unwrap(), 0.0);
    }

    #[test]
    fn power_two_values() {
        let h = WeightingFn::power(2.0).unwrap();
        // h(0.25) = 0.0625, h(0.5) = 0.25, h(0.75) = 0.5625
        let rho = dt_risk_premium_exact(&h, 0.5, 0.25).unwrap();
        assert_eq!(rho, 0.5 * (0.1875 - 0.3125) / 0.5);
        assert_eq!(rho, -0.125);
        assert_eq!(dt_risk_premium_approx(&h, 0.5, 0.25).unwrap(), -0.125);

        let lambda = dt_probability_premium_exact(&h, 0.5, 0.25).unwrap();
        assert!((lambda - (0.5 - 0.3125f64.sqrt())).abs() < 1e-16);
        let oracle = 0.5 - bisect(|p| p * p - 0.3125, 0.25, 0.75);
        assert!((lambda - oracle).abs() < 1e-15);
        assert!((lambda + 0.0590170).abs() < 1e-7);
        assert_eq!(dt_probability_premium_approx(&h, 0.5, 0.25).unwrap(), -0.0625);
    }

    #[test]
    fn power_half_values() {
        let h = WeightingFn::power(0.5).unwrap();
        let (a, b, c) = (0.25f64.sqrt(), 0.5f64.sqrt(), 0.75f64.sqrt());
        let rho = dt_risk_premium_exact(&h, 0.5, 0.25).unwrap();
        assert!((rho - 0.5 * ((b - a) - (c - b)) / (c - a)).abs() < 1e-16);
        assert!((rho - 0.06583).abs() < 1e-5);
        assert!((dt_risk_premium_approx(&h, 0.5, 0.25).unwrap() - 0.0625).abs() < 1e-16);

        let lambda = dt_probability_premium_exact(&h, 0.5, 0.25).unwrap();
        let mid = 0.5 * (a + c);
        assert!((lambda - (0.5 - mid * mid)).abs() < 1e-15);
        assert!((lambda - 0.0334936).abs() < 1e-7);
        assert!((dt_probability_premium_approx(&h, 0.5, 0.25).unwrap() - 0.03125).abs() < 1e-16);
    }

    #[test]
    fn power_two_risk_premium_is_exact_at_second_order() {
        let h = WeightingFn::power(2.0).unwrap();
        for (p0, e) in [(0.5, 0.25), (0.5, 0.01), (0.3, 0.2), (0.8, 0.15)] {
            let exact = dt_risk_premium_exact(&h, p0, e).unwrap();
            let approx = dt_risk_premium_approx(&h, p0, e).unwrap();
            assert!((exact - approx).abs() < 1e-12, "p0 = {p0}, eps2 = {e}");
        }
    }

    #[test]
    fn root_found_inverse_residual() {
        let h = WeightingFn::tk(0.61).unwrap();
        let lambda = dt_probability_premium_exact(&h, 0.2, 0.15).unwrap();
        assert!(dt_probability_premium_residual(&h, 0.2, 0.15, lambda).unwrap().abs() < 1e-12);
        let rho = dt_risk_premium_exact(&h, 0.2, 0.15).unwrap();
        assert!(dt_risk_premium_residual(&h, 0.2, 0.15, rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn full_band_touches_endpoints() {
        let h = WeightingFn::prelec(0.65, 1.0).unwrap();
        let lambda = dt_probability_premium_exact(&h, 0.5, 0.5).unwrap();
        assert!(lambda.abs() < 0.5);
        let rho = dt_risk_premium_exact(&h, 0.3, 0.3).unwrap();
        assert!(rho.abs() < 0.5);
    }

    #[test]
    fn rejects_band_violations() {
        let h = WeightingFn::power(2.0).unwrap();
        assert!(matches!(dt_risk_premium_exact(&h, 0.2, 0.3), Err(Error::Scenario(_))));
        assert!(matches!(dt_probability_premium_exact(&h, 0.0, 0.1), Err(Error::Scenario(_))));
    }
}
