//! Shared numeric kernel: bracketed root finding, central finite differences
//! and empirical convergence-order estimation.

mod convergence;
mod diff;
mod root;

pub use convergence::convergence_order;
pub use diff::{central_diff_1, central_diff_2, DEFAULT_STEP};
pub use root::{find_root, find_root_to_resolution, RootSpec, DEFAULT_MAX_ITER, DEFAULT_TOL};
