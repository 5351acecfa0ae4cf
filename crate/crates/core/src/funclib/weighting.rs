use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{find_root_to_resolution, RootSpec};

use super::transform::{ConcaveTransform, Transform};
use super::SmoothFn;

/// Residual tolerance for numerically inverted weighting functions.
pub const INVERSE_TOL: f64 = 1e-14;

/// Smallest Tversky-Kahneman curvature accepted; below it `h'` turns negative.
pub const TK_MIN_GAMMA: f64 = 0.28;

const GRID_POINTS: usize = 1001;
const GRID_MARGIN: f64 = 1e-4;

/// 1001 equally spaced points in `[1e-4, 1 - 1e-4]`.
pub fn validation_grid() -> Vec<f64> {
    let span = 1.0 - 2.0 * GRID_MARGIN;
    (0..GRID_POINTS)
        .map(|i| GRID_MARGIN + span * i as f64 / (GRID_POINTS - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightingFamily {
    Identity,
    /// `p^theta`
    Power { theta: f64 },
    /// `exp(-beta (-ln p)^alpha)`
    Prelec { alpha: f64, beta: f64 },
    /// `p^g / (p^g + (1-p)^g)^(1/g)`
    Tk { gamma: f64 },
    /// `transform(base(p))`
    Composed {
        transform: Transform,
        base: Box<WeightingFn>,
    },
}

/// Probability weighting (distortion) function applied to cumulative
/// probabilities of payoffs ranked from worst to best.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightingFn {
    family: WeightingFamily,
}

impl WeightingFn {
    pub fn identity() -> Self {
        Self {
            family: WeightingFamily::Identity,
        }
    }

    pub fn power(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::Monotonicity(format!(
                "power weighting needs theta > 0, got {theta}"
            )));
        }
        Self::validated(WeightingFamily::Power { theta })
    }

    pub fn prelec(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
            return Err(Error::Monotonicity(format!(
                "prelec weighting needs alpha > 0 and beta > 0, got ({alpha}, {beta})"
            )));
        }
        Self::validated(WeightingFamily::Prelec { alpha, beta })
    }

    pub fn tk(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= TK_MIN_GAMMA) {
            return Err(Error::Monotonicity(format!(
                "tk weighting is not monotone for gamma = {gamma} (need gamma >= {TK_MIN_GAMMA})"
            )));
        }
        Self::validated(WeightingFamily::Tk { gamma })
    }

    /// `transform ∘ base`, for any increasing transform.
    pub fn compose(transform: Transform, base: WeightingFn) -> Result<Self> {
        Self::validated(WeightingFamily::Composed {
            transform,
            base: Box::new(base),
        })
    }

    fn validated(family: WeightingFamily) -> Result<Self> {
        let h = Self { family };
        for p in validation_grid() {
            let v = h.eval(p)?;
            let d = h.d1(p)?;
            if !(v.is_finite() && d.is_finite() && d > 0.0 && h.d2(p)?.is_finite()) {
                return Err(Error::Monotonicity(format!(
                    "{h} fails h' > 0 at p = {p} (h' = {d})"
                )));
            }
        }
        Ok(h)
    }

    pub fn family(&self) -> &WeightingFamily {
        &self.family
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.family, WeightingFamily::Identity)
    }

    pub fn has_analytic_inverse(&self) -> bool {
        match &self.family {
            WeightingFamily::Tk { .. } => false,
            WeightingFamily::Composed { transform, base } => {
                !matches!(transform, Transform::Blend { .. }) && base.has_analytic_inverse()
            }
            _ => true,
        }
    }

    fn check_closed(p: f64) -> Result<()> {
        if (0.0..=1.0).contains(&p) {
            Ok(())
        } else {
            Err(Error::Domain(format!("probability {p} outside [0, 1]")))
        }
    }

    fn check_open(p: f64) -> Result<()> {
        if p > 0.0 && p < 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "weighting derivatives need p in (0, 1), got {p}"
            )))
        }
    }

    pub fn eval(&self, p: f64) -> Result<f64> {
        Self::check_closed(p)?;
        if p == 0.0 || p == 1.0 {
            return Ok(p);
        }
        Ok(match &self.family {
            WeightingFamily::Identity => p,
            WeightingFamily::Power { theta } => p.powf(*theta),
            WeightingFamily::Prelec { alpha, beta } => (-beta * (-p.ln()).powf(*alpha)).exp(),
            WeightingFamily::Tk { gamma } => {
                let s = p.powf(*gamma) + (1.0 - p).powf(*gamma);
                p.powf(*gamma) / s.powf(1.0 / gamma)
            }
            WeightingFamily::Composed { transform, base } => transform.eval(base.eval(p)?)?,
        })
    }

    pub fn d1(&self, p: f64) -> Result<f64> {
        Self::check_open(p)?;
        Ok(match &self.family {
            WeightingFamily::Identity => 1.0,
            WeightingFamily::Power { theta } => theta * p.powf(theta - 1.0),
            WeightingFamily::Prelec { alpha, beta } => {
                let l = -p.ln();
                self.eval(p)? * alpha * beta * l.powf(alpha - 1.0) / p
            }
            WeightingFamily::Tk { gamma } => self.eval(p)? * tk_log_slope(*gamma, p).0,
            WeightingFamily::Composed { transform, base } => {
                transform.d1(base.eval(p)?)? * base.d1(p)?
            }
        })
    }

    pub fn d2(&self, p: f64) -> Result<f64> {
        Self::check_open(p)?;
        Ok(match &self.family {
            WeightingFamily::Identity => 0.0,
            WeightingFamily::Power { theta } => theta * (theta - 1.0) * p.powf(theta - 2.0),
            WeightingFamily::Prelec { alpha, beta } => {
                let l = -p.ln();
                let g = alpha * beta * l.powf(alpha - 1.0) / p;
                let dg = -alpha * beta * l.powf(alpha - 2.0) / (p * p) * ((alpha - 1.0) + l);
                self.eval(p)? * (g * g + dg)
            }
            WeightingFamily::Tk { gamma } => {
                let (k, dk) = tk_log_slope(*gamma, p);
                self.eval(p)? * (k * k + dk)
            }
            WeightingFamily::Composed { transform, base } => {
                let (b, b1, b2) = (base.eval(p)?, base.d1(p)?, base.d2(p)?);
                transform.d2(b)? * b1 * b1 + transform.d1(b)? * b2
            }
        })
    }

    /// Dual local index `-h''(p)/h'(p)`.
    pub fn dual_index(&self, p: f64) -> Result<f64> {
        Ok(-self.d2(p)? / self.d1(p)?)
    }

    /// Decumulative counterpart `1 - h(1 - p)`.
    pub fn dual(&self, p: f64) -> Result<f64> {
        Self::check_closed(p)?;
        Ok(1.0 - self.eval(1.0 - p)?)
    }

    pub fn inverse(&self, q: f64) -> Result<f64> {
        self.inverse_within(q, 0.0, 1.0)
    }

    /// Inverse with the preimage known to lie in `[lo, hi]`.
    ///
    /// Analytic families ignore the bracket; the rest refine by bracketed
    /// root finding on it.
    pub fn inverse_within(&self, q: f64, lo: f64, hi: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Range(format!("weighted probability {q} outside [0, 1]")));
        }
        if q == 0.0 || q == 1.0 {
            return Ok(q);
        }
        match &self.family {
            WeightingFamily::Identity => Ok(q),
            WeightingFamily::Power { theta } => Ok(q.powf(1.0 / theta)),
            WeightingFamily::Prelec { alpha, beta } => {
                Ok((-(-q.ln() / beta).powf(1.0 / alpha)).exp())
            }
            WeightingFamily::Tk { .. } => self.root_inverse(q, lo, hi),
            WeightingFamily::Composed { transform, base } => {
                base.inverse_within(transform.inverse(q)?, lo, hi)
            }
        }
    }

    fn root_inverse(&self, q: f64, lo: f64, hi: f64) -> Result<f64> {
        let (lo, hi) = (lo.max(0.0), hi.min(1.0));
        let (hlo, hhi) = (self.eval(lo)?, self.eval(hi)?);
        if q < hlo - INVERSE_TOL || q > hhi + INVERSE_TOL {
            return Err(Error::Range(format!(
                "weighted probability {q} outside [h({lo}), h({hi})] = [{hlo}, {hhi}]"
            )));
        }
        let spec = RootSpec::new(|p| self.eval(p).unwrap_or(f64::NAN) - q, lo, hi)
            .with_tol(INVERSE_TOL);
        find_root_to_resolution(&spec)
    }
}

/// `(k, k')` where `k = (ln h)'` for the Tversky-Kahneman form.
fn tk_log_slope(gamma: f64, p: f64) -> (f64, f64) {
    let q = 1.0 - p;
    let s = p.powf(gamma) + q.powf(gamma);
    let d = p.powf(gamma - 1.0) - q.powf(gamma - 1.0);
    let dd = (gamma - 1.0) * (p.powf(gamma - 2.0) + q.powf(gamma - 2.0));
    let k = gamma / p - d / s;
    let dk = -gamma / (p * p) - dd / s + gamma * d * d / (s * s);
    (k, dk)
}

/// `T ∘ g`; raises the dual local index of `g` everywhere.
pub fn concavify(g: &WeightingFn, t: &ConcaveTransform) -> Result<WeightingFn> {
    WeightingFn::compose(t.transform(), g.clone())
}

impl SmoothFn for WeightingFn {
    fn value(&self, x: f64) -> Result<f64> {
        self.eval(x)
    }
    fn d1(&self, x: f64) -> Result<f64> {
        WeightingFn::d1(self, x)
    }
    fn d2(&self, x: f64) -> Result<f64> {
        WeightingFn::d2(self, x)
    }
    fn inverse(&self, y: f64) -> Result<f64> {
        WeightingFn::inverse(self, y)
    }
}

impl fmt::Display for WeightingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            WeightingFamily::Identity => write!(f, "identity"),
            WeightingFamily::Power { theta } => write!(f, "power:{theta}"),
            WeightingFamily::Prelec { alpha, beta } => write!(f, "prelec:{alpha},{beta}"),
            WeightingFamily::Tk { gamma } => write!(f, "tk:{gamma}"),
            WeightingFamily::Composed { transform, base } => {
                write!(f, "composed:{transform}@{base}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{central_diff_1, find_root, RootSpec, DEFAULT_STEP};

    fn samples() -> Vec<WeightingFn> {
        let conc = |k| ConcaveTransform::new(Transform::power(k).unwrap()).unwrap();
        vec![
            WeightingFn::identity(),
            WeightingFn::power(2.0).unwrap(),
            WeightingFn::power(0.5).unwrap(),
            WeightingFn::prelec(0.65, 1.0).unwrap(),
            WeightingFn::prelec(1.4, 0.8).unwrap(),
            WeightingFn::tk(0.61).unwrap(),
            WeightingFn::tk(0.3).unwrap(),
            WeightingFn::tk(1.5).unwrap(),
            concavify(&WeightingFn::tk(0.69).unwrap(), &conc(0.6)).unwrap(),
            WeightingFn::compose(
                Transform::blend(0.5, 0.4).unwrap(),
                WeightingFn::prelec(0.8, 1.2).unwrap(),
            )
            .unwrap(),
            WeightingFn::compose(
                Transform::exponential(-1.5).unwrap(),
                WeightingFn::power(0.7).unwrap(),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn identity_value() {
        assert_eq!(WeightingFn::identity().eval(0.4).unwrap(), 0.4);
    }

    #[test]
    fn power_two_hand_values() {
        let h = WeightingFn::power(2.0).unwrap();
        assert_eq!(h.eval(0.75).unwrap(), 0.5625);
        assert_eq!(h.d1(0.5).unwrap(), 1.0);
        assert_eq!(h.d2(0.5).unwrap(), 2.0);
    }

    #[test]
    fn power_half_inverse() {
        let h = WeightingFn::power(0.5).unwrap();
        let p = h.inverse(0.3125).unwrap();
        assert!((p - 0.09765625).abs() < 1e-16);
        let oracle = find_root(&RootSpec::new(|x: f64| x.sqrt() - 0.3125, 0.0, 1.0)).unwrap();
        assert!((p - oracle).abs() < 1e-11);
    }

    #[test]
    fn endpoints_are_exact() {
        for h in samples() {
            assert_eq!(h.eval(0.0).unwrap(), 0.0, "{h}");
            assert_eq!(h.eval(1.0).unwrap(), 1.0, "{h}");
            assert_eq!(h.dual(0.0).unwrap(), 0.0, "{h}");
            assert_eq!(h.dual(1.0).unwrap(), 1.0, "{h}");
        }
    }

    #[test]
    fn dual_values() {
        assert_eq!(WeightingFn::identity().dual(0.3).unwrap(), 1.0 - 0.7);
        let h = WeightingFn::power(2.0).unwrap();
        assert_eq!(h.dual(0.25).unwrap(), 0.4375);
    }

    #[test]
    fn domain_errors() {
        let h = WeightingFn::prelec(0.65, 1.0).unwrap();
        assert!(matches!(h.eval(1.5), Err(Error::Domain(_))));
        assert!(matches!(h.d1(0.0), Err(Error::Domain(_))));
        assert!(matches!(h.d2(1.0), Err(Error::Domain(_))));
        assert!(matches!(h.inverse(-0.1), Err(Error::Range(_))));
    }

    #[test]
    fn invalid_parameters_are_monotonicity_errors() {
        assert!(matches!(WeightingFn::tk(0.2), Err(Error::Monotonicity(_))));
        assert!(matches!(WeightingFn::tk(0.279), Err(Error::Monotonicity(_))));
        assert!(matches!(WeightingFn::power(-1.0), Err(Error::Monotonicity(_))));
        assert!(matches!(WeightingFn::prelec(0.0, 1.0), Err(Error::Monotonicity(_))));
        assert!(WeightingFn::tk(0.28).is_ok());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for h in samples() {
            // Prelec and TK derivatives are singular at the endpoints; a fixed
            // 1e-5 step is only accurate to 1e-6 a couple of thousand steps away from them.
            for p in validation_grid().into_iter().filter(|p| p.min(1.0 - p) >= 2e-2).step_by(25) {
                let (d1, d2) = (h.d1(p).unwrap(), h.d2(p).unwrap());
                let fd1 = central_diff_1(|x| h.eval(x).unwrap(), p, DEFAULT_STEP);
                let fd2 = central_diff_1(|x| h.d1(x).unwrap(), p, DEFAULT_STEP);
                assert!((d1 - fd1).abs() <= 1e-6 * d1.abs().max(1.0), "{h} d1 at {p}: {d1} vs {fd1}");
                assert!((d2 - fd2).abs() <= 1e-6 * d2.abs().max(1.0), "{h} d2 at {p}: {d2} vs {fd2}");
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        for h in samples() {
            for p in validation_grid().into_iter().step_by(25) {
                let back = h.inverse(h.eval(p).unwrap()).unwrap();
                assert!((back - p).abs() < 1e-10, "{h} at {p}: {back}");
            }
        }
    }

    #[test]
    fn dual_is_an_involution() {
        for h in samples() {
            for p in validation_grid().into_iter().step_by(10) {
                // 1 - (1 - p) is the argument the double reflection actually sees
                let twice = 1.0 - h.dual(1.0 - p).unwrap();
                let direct = h.eval(1.0 - (1.0 - p)).unwrap();
                assert!((twice - direct).abs() <= 4.0 * f64::EPSILON, "{h} at {p}");
            }
            // exact where 1 - (1 - p) == p and the value round trips
            for k in 1..8 {
                let p = k as f64 / 8.0;
                let twice = 1.0 - h.dual(1.0 - p).unwrap();
                let direct = h.eval(p).unwrap();
                if 1.0 - (1.0 - direct) == direct {
                    assert_eq!(twice, direct, "{h} at {p}");
                }
            }
        }
    }

    #[test]
    fn concavity_flips_under_duality() {
        let dual_d2 = |h: &WeightingFn, p: f64| -h.d2(1.0 - p).unwrap();
        for h in samples() {
            let grid = validation_grid();
            let concave = grid.iter().all(|&p| h.d2(p).unwrap() < 0.0);
            let dual_convex = grid.iter().all(|&p| dual_d2(&h, p) > 0.0);
            assert_eq!(concave, dual_convex, "{h}");
        }
        // a numerical second difference of the dual agrees in sign
        let h = WeightingFn::power(0.5).unwrap();
        let sd = crate::numerics::central_diff_2(|p| h.dual(p).unwrap(), 0.4, 1e-4);
        assert!(sd > 0.0);
    }

    #[test]
    fn concavify_identity_limit() {
        let base = WeightingFn::power(0.5).unwrap();
        let t = ConcaveTransform::new(Transform::power(1.0 - 1e-12).unwrap()).unwrap();
        let c = concavify(&base, &t).unwrap();
        for p in [0.1, 0.5, 0.9] {
            assert!((c.eval(p).unwrap() - base.eval(p).unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn concavify_identity_gives_power() {
        let t = ConcaveTransform::new(Transform::power(0.5).unwrap()).unwrap();
        let c = concavify(&WeightingFn::identity(), &t).unwrap();
        let p5 = WeightingFn::power(0.5).unwrap();
        for p in validation_grid().into_iter().step_by(20) {
            assert_eq!(c.eval(p).unwrap(), p5.eval(p).unwrap());
            assert!((c.d1(p).unwrap() - p5.d1(p).unwrap()).abs() < 1e-12 * p5.d1(p).unwrap());
        }
    }

    #[test]
    fn concavify_raises_dual_index() {
        let t = ConcaveTransform::new(Transform::power(0.5).unwrap()).unwrap();
        let base = WeightingFn::power(0.5).unwrap();
        let c = concavify(&base, &t).unwrap();
        assert!(c.dual_index(0.5).unwrap() > base.dual_index(0.5).unwrap());
        for h in samples() {
            for tr in [
                Transform::power(0.4).unwrap(),
                Transform::exponential(2.0).unwrap(),
                Transform::blend(0.3, 0.5).unwrap(),
            ] {
                let c = concavify(&h, &ConcaveTransform::new(tr).unwrap()).unwrap();
                for p in validation_grid().into_iter().step_by(20) {
                    assert!(
                        c.dual_index(p).unwrap() >= h.dual_index(p).unwrap(),
                        "{c} vs {h} at {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_dual_index() {
        let h = WeightingFn::power(0.3).unwrap();
        for p in [0.1, 0.4, 0.8] {
            assert!((h.dual_index(p).unwrap() - 0.7 / p).abs() < 1e-12);
        }
    }

    #[test]
    fn shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<WeightingFn>();
        assert_send_sync::<super::super::UtilityFn>();
    }
}
