//! Global comparative risk aversion: the five equivalent conditions for two
//! DT decision makers and for two RDU decision makers, checked on finite
//! grids with witnesses for every violation.
//!
//! Conditions, with decision maker 2 claimed at least as risk averse as 1:
//!
//! 1. local index dominance,
//! 2. risk premium dominance,
//! 3. probability premium dominance,
//! 4. concavity of `f2 ∘ f1⁻¹`,
//! 5. the cross-ratio inequality.
//!
//! Under RDU, conditions 1, 4 and 5 are checked on both the utility and the
//! weighting side and the two verdicts merged.

mod checks;
mod grids;
mod theorem;
mod verdict;

pub use checks::{
    check_concave_composition, check_cross_ratio, check_index_dominance,
    check_premium_dominance_dt, check_premium_dominance_rdu, sample_quadruples,
};
pub use grids::{concavify_utility, ComparisonGrids};
pub use theorem::{check_theorem1, check_theorem2, ComparisonReport, GridSummary, Theorem, Tolerances};
pub use verdict::{Status, Verdict, Witness};

/// Slack allowed on conditions 1, 4 and 5.
pub const CONDITION_TOL: f64 = 1e-9;
/// Slack allowed on premium dominance.
pub const PREMIUM_TOL: f64 = 1e-10;
