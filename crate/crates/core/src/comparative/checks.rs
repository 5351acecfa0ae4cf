use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evalcore::DecisionMaker;
use crate::funclib::{SmoothFn, WeightingFn};
use crate::premia::{
    dt_probability_premium_exact, dt_risk_premium_exact, rdu_probability_premium_exact,
    rdu_risk_premium_exact, Scenario,
};

use super::verdict::{Tally, Verdict};
use super::{CONDITION_TOL, PREMIUM_TOL};

/// `-f2''/f2' >= -f1''/f1'` at every grid point. `coord` names the variable
/// in witnesses.
pub fn check_index_dominance<F: SmoothFn + ?Sized>(
    f2: &F,
    f1: &F,
    grid: &[f64],
    coord: &'static str,
) -> Result<Verdict> {
    let mut tally = Tally::new("index dominance", CONDITION_TOL);
    for &x in grid {
        let (a2, a1) = (f2.local_index(x)?, f1.local_index(x)?);
        tally.record(a2 - a1, a2, a1, [(coord, x)])?;
    }
    tally.finish()
}

/// Concavity of `g = f2 ∘ f1⁻¹` through symmetric second differences on a
/// uniform grid in the range of `f1`: `g(t-h) - 2g(t) + g(t+h) <= tol`.
pub fn check_concave_composition<F: SmoothFn + ?Sized>(
    f2: &F,
    f1: &F,
    t_grid: &[f64],
) -> Result<Verdict> {
    if t_grid.len() < 3 {
        return Err(Error::Grid(format!(
            "composition grid needs at least 3 points, got {}",
            t_grid.len()
        )));
    }
    let step = (t_grid[t_grid.len() - 1] - t_grid[0]) / (t_grid.len() - 1) as f64;
    let uniform = step > 0.0
        && t_grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-6 * step);
    if !uniform {
        return Err(Error::Grid("composition grid must be increasing and uniform".into()));
    }
    let g: Vec<f64> = t_grid
        .iter()
        .map(|&t| f2.value(f1.inverse(t)?))
        .collect::<Result<_>>()?;
    let mut tally = Tally::new("concave composition", CONDITION_TOL);
    for i in 1..g.len() - 1 {
        let second = g[i - 1] - 2.0 * g[i] + g[i + 1];
        tally.record(-second, second, 0.0, [("t", t_grid[i]), ("step", step)])?;
    }
    tally.finish()
}

/// `[f2(s) - f2(r)] / [f2(q) - f2(p)] <= [f1(s) - f1(r)] / [f1(q) - f1(p)]`
/// for each quadruple `p < q <= r < s`.
///
/// The slack is the cross-multiplied difference divided by
/// `[f1(s) - f1(p)][f2(s) - f2(p)]`, which keeps it invariant under affine
/// rescaling of either function.
pub fn check_cross_ratio<F: SmoothFn + ?Sized>(
    f2: &F,
    f1: &F,
    quadruples: &[[f64; 4]],
) -> Result<Verdict> {
    let mut tally = Tally::new("cross ratio", CONDITION_TOL);
    for &[p, q, r, s] in quadruples {
        if !(p < q && q <= r && r < s) {
            return Err(Error::Grid(format!(
                "quadruple ({p}, {q}, {r}, {s}) is not ordered p < q <= r < s"
            )));
        }
        let v1 = [f1.value(p)?, f1.value(q)?, f1.value(r)?, f1.value(s)?];
        let v2 = [f2.value(p)?, f2.value(q)?, f2.value(r)?, f2.value(s)?];
        let (top1, bot1, span1) = (v1[3] - v1[2], v1[1] - v1[0], v1[3] - v1[0]);
        let (top2, bot2, span2) = (v2[3] - v2[2], v2[1] - v2[0], v2[3] - v2[0]);
        let slack = (top1 * bot2 - top2 * bot1) / (span1 * span2);
        tally.record(
            slack,
            top2 / bot2,
            top1 / bot1,
            [("p", p), ("q", q), ("r", r), ("s", s)],
        )?;
    }
    tally.finish()
}

/// Quadruples `p < q <= r < s` in `(lo, hi)`: a few deterministic cases
/// hugging the edges and the middle, then `n` seeded random draws. Adjacent
/// points are at least `1e-3 (hi - lo)` apart.
pub fn sample_quadruples(lo: f64, hi: f64, n: usize, seed: u64) -> Result<Vec<[f64; 4]>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Grid(format!("invalid sampling window ({lo}, {hi})")));
    }
    let sep = 1e-3 * (hi - lo);
    let mid = 0.5 * (lo + hi);
    let mut out = vec![
        [lo + sep, lo + 2.0 * sep, lo + 2.0 * sep, lo + 3.0 * sep],
        [hi - 3.0 * sep, hi - 2.0 * sep, hi - 2.0 * sep, hi - sep],
        [lo + sep, lo + 2.0 * sep, hi - 2.0 * sep, hi - sep],
        [lo + sep, mid, mid, hi - sep],
        [mid - 2.0 * sep, mid - sep, mid + sep, mid + 2.0 * sep],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < n + 5 {
        let mut x = [0.0; 4];
        for v in &mut x {
            *v = rng.gen_range(lo + sep..hi - sep);
        }
        x.sort_by(f64::total_cmp);
        if out.len() % 4 == 0 {
            x[2] = x[1];
        }
        if x[1] - x[0] >= sep && x[3] - x[2] >= sep && (x[2] == x[1] || x[2] - x[1] >= sep) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Risk and probability premium dominance `rho2 >= rho1`, `lambda2 >= lambda1`
/// over `(p0, eps2)` pairs.
pub fn check_premium_dominance_dt(
    h2: &WeightingFn,
    h1: &WeightingFn,
    scenarios: &[(f64, f64)],
) -> Result<(Verdict, Verdict)> {
    let mut risk = Tally::new("risk premium dominance", PREMIUM_TOL);
    let mut prob = Tally::new("probability premium dominance", PREMIUM_TOL);
    for &(p0, e2) in scenarios {
        let at = [("p0", p0), ("eps2", e2)];
        let (r2, r1) = (dt_risk_premium_exact(h2, p0, e2)?, dt_risk_premium_exact(h1, p0, e2)?);
        risk.record(r2 - r1, r2, r1, at)?;
        let (l2, l1) = (
            dt_probability_premium_exact(h2, p0, e2)?,
            dt_probability_premium_exact(h1, p0, e2)?,
        );
        prob.record(l2 - l1, l2, l1, at)?;
    }
    Ok((risk.finish()?, prob.finish()?))
}

/// `sigma2 >= sigma1` and `mu2 >= mu1` over the scenarios.
pub fn check_premium_dominance_rdu(
    dm2: &DecisionMaker,
    dm1: &DecisionMaker,
    scenarios: &[Scenario],
) -> Result<(Verdict, Verdict)> {
    let mut risk = Tally::new("risk premium dominance", PREMIUM_TOL);
    let mut prob = Tally::new("probability premium dominance", PREMIUM_TOL);
    for s in scenarios {
        let at = [("x0", s.x0()), ("p0", s.p0()), ("eps1", s.eps1()), ("eps2", s.eps2())];
        let (s2, s1) = (rdu_risk_premium_exact(dm2, s)?, rdu_risk_premium_exact(dm1, s)?);
        risk.record(s2 - s1, s2, s1, at)?;
        let (m2, m1) = (
            rdu_probability_premium_exact(dm2, s)?,
            rdu_probability_premium_exact(dm1, s)?,
        );
        prob.record(m2 - m1, m2, m1, at)?;
    }
    Ok((risk.finish()?, prob.finish()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparative::Status;
    use crate::funclib::{concavify, ConcaveTransform, Transform, UtilityFn};

    fn p_grid() -> Vec<f64> {
        (1..=401).map(|i| i as f64 / 402.0).collect()
    }

    fn concave_pair() -> (WeightingFn, WeightingFn) {
        let base = WeightingFn::prelec(0.65, 1.0).unwrap();
        let t = ConcaveTransform::new(Transform::exponential(1.5).unwrap()).unwrap();
        (concavify(&base, &t).unwrap(), base)
    }

    #[test]
    fn index_dominance_examples() {
        let h = WeightingFn::tk(0.61).unwrap();
        assert_eq!(check_index_dominance(&h, &h, &p_grid(), "p").unwrap().status, Status::Equal);
        let (h2, h1) = concave_pair();
        assert_eq!(check_index_dominance(&h2, &h1, &p_grid(), "p").unwrap().status, Status::Holds);
        let v = check_index_dominance(
            &WeightingFn::power(2.0).unwrap(),
            &WeightingFn::power(0.5).unwrap(),
            &p_grid(),
            "p",
        )
        .unwrap();
        assert_eq!(v.status, Status::Fails);
        let w = v.witness.unwrap();
        let p = w.point["p"];
        assert_eq!(p, 1.0 / 402.0);
        assert!((w.lhs - (1.0 - 2.0) / p).abs() < 1e-9);
        assert!((w.rhs - 0.5 / p).abs() < 1e-9);
    }

    #[test]
    fn composition_examples() {
        let h = WeightingFn::prelec(0.65, 1.0).unwrap();
        assert!(check_concave_composition(&h, &h, &p_grid()).unwrap().status != Status::Fails);
        let (h2, h1) = concave_pair();
        assert_eq!(check_concave_composition(&h2, &h1, &p_grid()).unwrap().status, Status::Holds);
        let v = check_concave_composition(&h1, &h2, &p_grid()).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(v.witness.unwrap().lhs > 1e-9);
        let sqrt = WeightingFn::power(0.5).unwrap();
        let id = WeightingFn::identity();
        assert_eq!(check_concave_composition(&sqrt, &id, &p_grid()).unwrap().status, Status::Holds);
    }

    #[test]
    fn composition_of_concavified_is_the_transform() {
        let (h2, h1) = concave_pair();
        let t = Transform::exponential(1.5).unwrap();
        for &x in &p_grid() {
            let g = h2.eval(h1.inverse(x).unwrap()).unwrap();
            assert!((g - t.eval(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn composition_grid_validation() {
        let h = WeightingFn::identity();
        assert!(matches!(check_concave_composition(&h, &h, &[0.1, 0.2]), Err(Error::Grid(_))));
        assert!(matches!(
            check_concave_composition(&h, &h, &[0.1, 0.2, 0.4]),
            Err(Error::Grid(_))
        ));
    }

    #[test]
    fn cross_ratio_examples() {
        let q = sample_quadruples(0.0, 1.0, 500, 7).unwrap();
        let h = WeightingFn::tk(0.7).unwrap();
        assert_eq!(check_cross_ratio(&h, &h, &q).unwrap().status, Status::Equal);
        let (h2, h1) = concave_pair();
        assert_eq!(check_cross_ratio(&h2, &h1, &q).unwrap().status, Status::Holds);
        let v = check_cross_ratio(&h1, &h2, &q).unwrap();
        assert_eq!(v.status, Status::Fails);
        let w = v.witness.unwrap();
        assert!(w.lhs > w.rhs);
        let u1 = UtilityFn::cara(0.5).unwrap();
        let u2 = UtilityFn::cara(2.0).unwrap();
        let qx = sample_quadruples(-2.0, 2.0, 500, 7).unwrap();
        assert_eq!(check_cross_ratio(&u2, &u1, &qx).unwrap().status, Status::Holds);
        assert_eq!(check_cross_ratio(&u1, &u2, &qx).unwrap().status, Status::Fails);
    }

    #[test]
    fn quadruples_are_ordered_and_seeded() {
        let a = sample_quadruples(0.0, 1.0, 300, 42).unwrap();
        assert_eq!(a.len(), 305);
        assert_eq!(a, sample_quadruples(0.0, 1.0, 300, 42).unwrap());
        assert_ne!(a, sample_quadruples(0.0, 1.0, 300, 43).unwrap());
        for &[p, q, r, s] in &a {
            assert!(0.0 < p && p < q && q <= r && r < s && s < 1.0);
        }
        assert!(a.iter().filter(|x| x[1] == x[2]).count() > 50);
        assert!(sample_quadruples(1.0, 0.0, 10, 0).is_err());
    }

    #[test]
    fn dt_premium_dominance() {
        let grid: Vec<(f64, f64)> = (1..10)
            .map(|i| i as f64 / 10.0)
            .flat_map(|p0: f64| [(p0, 0.01), (p0, 0.05), (p0, p0.min(1.0 - p0))])
            .collect();
        let (h2, h1) = concave_pair();
        let (r, l) = check_premium_dominance_dt(&h1, &h1, &grid).unwrap();
        assert_eq!((r.status, l.status), (Status::Equal, Status::Equal));
        let (r, l) = check_premium_dominance_dt(&h2, &h1, &grid).unwrap();
        assert_eq!((r.status, l.status), (Status::Holds, Status::Holds));
        let (r, l) = check_premium_dominance_dt(&h1, &h2, &grid).unwrap();
        assert_eq!((r.status, l.status), (Status::Fails, Status::Fails));
        let w = r.witness.unwrap();
        assert!(w.lhs < w.rhs);
        assert!(w.point.contains_key("p0") && w.point.contains_key("eps2"));
    }
}
