//! Exact and second-order risk and probability premia.
//!
//! | model | risk premium | probability premium | small risk |
//! |---|---|---|---|
//! | EU  | `pi`    | `gamma`  | payoff `±eps1`, probability ½ each |
//! | DT  | `rho`   | `lambda` | payoff `±½`, probability `eps2` each |
//! | RDU | `sigma` | `mu`     | payoff `±eps1`, probability `eps2` each |
//!
//! Exact values solve the indifference equations; `*_approx` values are the
//! second-order expansions in terms of the local indexes `-U''/U'` and
//! `-h''/h'`. The outer low/high states of the construction cancel from the
//! indifference equations, so every premium depends on `(x0, p0, eps1, eps2)`
//! only.

mod dt;
mod eu;
mod rdu;
mod report;
mod scenario;
mod sensitivity;

pub use dt::{
    dt_probability_premium_approx, dt_probability_premium_exact, dt_probability_premium_residual,
    dt_risk_premium_approx, dt_risk_premium_exact, dt_risk_premium_residual,
};
pub use eu::{
    eu_probability_premium_approx, eu_probability_premium_exact, eu_probability_premium_residual,
    eu_risk_premium_approx, eu_risk_premium_exact, eu_risk_premium_residual,
};
pub use rdu::{
    local_indexes, rdu_probability_premium_approx, rdu_probability_premium_exact,
    rdu_probability_premium_residual, rdu_risk_premium_approx, rdu_risk_premium_exact,
    rdu_risk_premium_residual,
};
pub use report::{premium_report, LinkDeltas, PremiumPair, PremiumReport, Residuals};
pub use scenario::{check_payoff_band, check_probability_band, Scenario};
pub use sensitivity::{sensitivity_mu_eps2, sensitivity_sigma_eps1};

/// Residual tolerance the exact solvers are held to.
pub const SOLVER_TOL: f64 = 1e-12;
