use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

/// A scalar root-finding problem on a closed bracket.
///
/// The objective must be continuous on `[lo, hi]` and either change sign
/// across the bracket or vanish (within `tol`) at one of its ends.
#[derive(Clone)]
pub struct RootSpec<F> {
    pub objective: F,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl<F> RootSpec<F>
where
    F: Fn(f64) -> f64,
{
    pub fn new(objective: F, lo: f64, hi: f64) -> Self {
        Self {
            objective,
            lo,
            hi,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

/// Finds `x` in `[lo, hi]` with `|objective(x)| < tol`.
///
/// Each iteration tries a false-position step from the current bracket and
/// falls back to bisection whenever that step lands outside the bracket or
/// fails to halve it, so the bracket at least halves per iteration. Every
/// point the objective is evaluated at lies inside the initial bracket.
pub fn find_root<F>(spec: &RootSpec<F>) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let f = &spec.objective;
    let (mut a, mut b) = (spec.lo, spec.hi);
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Bracket { lo: a, hi: b });
    }

    let mut fa = f(a);
    if fa.abs() < spec.tol {
        return Ok(a);
    }
    let mut fb = f(b);
    if fb.abs() < spec.tol {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo: a, hi: b });
    }

    // Replaces whichever endpoint shares the sign of `fx`.
    let shrink = |x: f64, fx: f64, a: &mut f64, fa: &mut f64, b: &mut f64, fb: &mut f64| {
        if fx.signum() == fa.signum() {
            *a = x;
            *fa = fx;
        } else {
            *b = x;
            *fb = fx;
        }
    };

    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..spec.max_iter {
        let width = b - a;

        let mut x = b - fb * (b - a) / (fb - fa);
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        if !(x > a && x < b) {
            return Err(Error::Stalled { at: best.0, residual: best.1.abs() });
        }
        let fx = f(x);
        if fx.abs() < spec.tol {
            return Ok(x);
        }
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        shrink(x, fx, &mut a, &mut fa, &mut b, &mut fb);

        if b - a > 0.5 * width {
            let m = 0.5 * (a + b);
            if !(m > a && m < b) {
                return Err(Error::Stalled { at: best.0, residual: best.1.abs() });
            }
            let fm = f(m);
            if fm.abs() < spec.tol {
                return Ok(m);
            }
            if fm.abs() < best.1.abs() {
                best = (m, fm);
            }
            shrink(m, fm, &mut a, &mut fa, &mut b, &mut fb);
        }
    }

    Err(Error::MaxIter {
        iterations: spec.max_iter,
        residual: best.1.abs(),
    })
}

/// [`find_root`] for continuous objectives: a bracket collapsed to adjacent
/// floats returns the endpoint with the smaller residual instead of
/// [`Error::Stalled`], since no representable point does better.
pub fn find_root_to_resolution<F>(spec: &RootSpec<F>) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    match find_root(spec) {
        Err(Error::Stalled { at, .. }) => Ok(at),
        other => other,
    }
}
