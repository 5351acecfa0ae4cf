/// Errors below this are treated as exact and dropped from the fit.
const EXACT_FLOOR: f64 = 1e-14;

/// Least-squares slope of `ln(error)` against `ln(scale)`.
///
/// Points with `error < 1e-14` or a non-positive scale are ignored. Returns
/// `None` when fewer than two usable points remain (the approximation is
/// exact at every resolved scale) or all scales coincide.
pub fn convergence_order(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(s, e)| *s > 0.0 && e.is_finite() && *e >= EXACT_FLOOR)
        .map(|(s, e)| (s.ln(), e.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}
