use crate::error::Result;
use crate::funclib::WeightingFn;

use super::{DecisionMaker, Lottery};

/// Decision weights `h(C_i) - h(C_{i-1})` over the ranked states, where
/// `C_i` is the cumulative probability of the `i` worst payoffs.
pub fn decision_weights(h: &WeightingFn, lottery: &Lottery) -> Result<Vec<f64>> {
    let states = lottery.states();
    let mut weights = Vec::with_capacity(states.len());
    let mut cum = 0.0;
    let mut prev = 0.0; // h(0)
    for (i, s) in states.iter().enumerate() {
        cum += s.p;
        // the top of the ranking is exactly one; do not let rounding leak in
        let c = if i + 1 == states.len() { 1.0 } else { cum.min(1.0) };
        let next = h.eval(c)?;
        weights.push(next - prev);
        prev = next;
    }
    Ok(weights)
}

/// Rank-dependent value `Σ (h(C_i) - h(C_{i-1})) U(x_i)`.
pub fn evaluate_rdu(dm: &DecisionMaker, lottery: &Lottery) -> Result<f64> {
    let weights = decision_weights(&dm.weighting, lottery)?;
    lottery
        .states()
        .iter()
        .zip(weights)
        .map(|(s, w)| Ok(w * dm.utility.eval(s.x)?))
        .sum()
}

/// Same functional through decumulative probabilities:
/// `Σ (h̄(1 - C_{i-1}) - h̄(1 - C_i)) U(x_i)` with `h̄(p) = 1 - h(1 - p)`.
pub fn evaluate_dual_form(dm: &DecisionMaker, lottery: &Lottery) -> Result<f64> {
    let states = lottery.states();
    let mut total = 0.0;
    let mut cum = 0.0;
    let mut upper = dm.weighting.dual(1.0)?;
    for (i, s) in states.iter().enumerate() {
        cum += s.p;
        let c = if i + 1 == states.len() { 1.0 } else { cum.min(1.0) };
        let lower = dm.weighting.dual(1.0 - c)?;
        total += (upper - lower) * dm.utility.eval(s.x)?;
        upper = lower;
    }
    Ok(total)
}

/// Sure payoff with the same rank-dependent value as `lottery`.
pub fn certainty_equivalent(dm: &DecisionMaker, lottery: &Lottery) -> Result<f64> {
    dm.utility.inverse(evaluate_rdu(dm, lottery)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funclib::UtilityFn;
    use proptest::prelude::*;

    fn two_state() -> Lottery {
        Lottery::new([(0.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    #[test]
    fn identity_agent_takes_expected_value() {
        let dm = DecisionMaker::new(UtilityFn::linear(), WeightingFn::identity());
        assert_eq!(evaluate_rdu(&dm, &two_state()).unwrap(), 0.5);
        assert_eq!(evaluate_dual_form(&dm, &two_state()).unwrap(), 0.5);
    }

    #[test]
    fn convex_weighting_two_state() {
        let dm = DecisionMaker::dt(WeightingFn::power(2.0).unwrap());
        assert_eq!(evaluate_rdu(&dm, &two_state()).unwrap(), 0.75);
        assert_eq!(evaluate_dual_form(&dm, &two_state()).unwrap(), 0.75);
    }

    #[test]
    fn cara_symmetric_lottery() {
        let dm = DecisionMaker::eu(UtilityFn::cara(1.0).unwrap());
        let l = Lottery::new([(-0.1, 0.5), (0.1, 0.5)]).unwrap();
        let v = evaluate_rdu(&dm, &l).unwrap();
        assert!((v + 0.1f64.cosh()).abs() < 1e-15);
        assert!((v + 1.0050042).abs() < 1e-7);
        let ce = certainty_equivalent(&dm, &l).unwrap();
        assert!((ce + 0.1f64.cosh().ln()).abs() < 1e-15);
        assert!((ce + 0.0049917).abs() < 1e-7);
    }

    #[test]
    fn certainty_equivalent_degenerate_and_linear() {
        let dm = DecisionMaker::new(UtilityFn::crra(2.0).unwrap(), WeightingFn::tk(0.61).unwrap());
        let ce = certainty_equivalent(&dm, &Lottery::degenerate(3.0).unwrap()).unwrap();
        assert!((ce - 3.0).abs() < 1e-14);
        let lin = DecisionMaker::dt(WeightingFn::prelec(0.65, 1.0).unwrap());
        let l = Lottery::new([(-1.0, 0.2), (0.5, 0.3), (4.0, 0.5)]).unwrap();
        assert_eq!(
            certainty_equivalent(&lin, &l).unwrap(),
            evaluate_rdu(&lin, &l).unwrap()
        );
    }

    #[test]
    fn payoff_outside_domain() {
        let dm = DecisionMaker::eu(UtilityFn::log());
        let l = Lottery::new([(-1.0, 0.5), (1.0, 0.5)]).unwrap();
        assert!(matches!(evaluate_rdu(&dm, &l), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn weights_sum_to_one() {
        let h = WeightingFn::prelec(0.65, 1.0).unwrap();
        let l = Lottery::new([(0.0, 0.1), (1.0, 0.2), (2.0, 0.3), (3.0, 0.4)]).unwrap();
        let w = decision_weights(&h, &l).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(w.iter().all(|&x| x > 0.0));
    }

    fn weighting() -> impl Strategy<Value = WeightingFn> {
        prop_oneof![
            Just(WeightingFn::identity()),
            (0.2f64..3.0).prop_map(|t| WeightingFn::power(t).unwrap()),
            (0.3f64..1.5, 0.5f64..2.0).prop_map(|(a, b)| WeightingFn::prelec(a, b).unwrap()),
            (0.3f64..1.2).prop_map(|g| WeightingFn::tk(g).unwrap()),
        ]
    }

    fn lottery_pairs() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-5.0f64..5.0, 0.01f64..1.0), 1..10).prop_map(|v| {
            let total: f64 = v.iter().map(|s| s.1).sum();
            v.into_iter().map(|(x, w)| (x, w / total)).collect()
        })
    }

    proptest! {
        #[test]
        fn rank_invariance(h in weighting(), pairs in lottery_pairs(), seed in any::<u64>()) {
            let dm = DecisionMaker::new(UtilityFn::cara(0.8).unwrap(), h);
            let a = evaluate_rdu(&dm, &Lottery::new(pairs.clone()).unwrap()).unwrap();
            let mut shuffled = pairs;
            let n = shuffled.len();
            shuffled.rotate_left((seed as usize) % n);
            shuffled.reverse();
            let b = evaluate_rdu(&dm, &Lottery::new(shuffled).unwrap()).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn cumulative_and_decumulative_agree(h in weighting(), pairs in lottery_pairs()) {
            let dm = DecisionMaker::new(UtilityFn::crra(1.5).unwrap(), h);
            let l = Lottery::new(pairs.into_iter().map(|(x, p)| (x + 6.0, p))).unwrap();
            let a = evaluate_rdu(&dm, &l).unwrap();
            let b = evaluate_dual_form(&dm, &l).unwrap();
            prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
        }

        #[test]
        fn degenerate_is_utility(h in weighting(), c in -3.0f64..3.0) {
            let u = UtilityFn::quadratic(0.1).unwrap();
            let dm = DecisionMaker::new(u, h);
            let v = evaluate_rdu(&dm, &Lottery::degenerate(c).unwrap()).unwrap();
            prop_assert_eq!(v, u.eval(c).unwrap());
        }

        #[test]
        fn first_order_monotone(h in weighting(), pairs in lottery_pairs(), idx in any::<usize>(), bump in 0.0f64..2.0) {
            let dm = DecisionMaker::new(UtilityFn::cara(1.3).unwrap(), h);
            let before = evaluate_rdu(&dm, &Lottery::new(pairs.clone()).unwrap()).unwrap();
            let mut raised = pairs;
            let i = idx % raised.len();
            raised[i].0 += bump;
            let after = evaluate_rdu(&dm, &Lottery::new(raised).unwrap()).unwrap();
            prop_assert!(after >= before - 1e-12);
        }
    }
}
