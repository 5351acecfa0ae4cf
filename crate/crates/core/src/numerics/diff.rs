/// Default absolute step for the difference oracles.
pub const DEFAULT_STEP: f64 = 1e-5;

/// `(f(x+s) - f(x-s)) / 2s`
pub fn central_diff_1<F: Fn(f64) -> f64>(f: F, x: f64, step: f64) -> f64 {
    (f(x + step) - f(x - step)) / (2.0 * step)
}

/// `(f(x+s) - 2f(x) + f(x-s)) / s^2`
pub fn central_diff_2<F: Fn(f64) -> f64>(f: F, x: f64, step: f64) -> f64 {
    (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)
}
