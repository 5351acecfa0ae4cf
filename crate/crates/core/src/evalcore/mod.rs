//! Lotteries and the rank-dependent evaluation functional.
//!
//! With identity weighting the functional is expected utility; with identity
//! utility it is Yaari's dual functional.

mod dm;
mod eval;
mod lottery;

pub use dm::DecisionMaker;
pub use eval::{certainty_equivalent, decision_weights, evaluate_dual_form, evaluate_rdu};
pub use lottery::{Lottery, State, PROB_SUM_TOL};
