//! Convergence-order fits for step-size ladders.

use num_traits::Float;

/// Least-squares slope of `ln(error)` against `ln(step)`.
///
/// Returns `None` for fewer than two points or any non-positive entry.
pub fn fit_order(steps: &[f64], errors: &[f64]) -> Option<f64> {
    if steps.len() != errors.len() || steps.len() < 2 {
        return None;
    }
    if steps.iter().chain(errors).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return None;
    }
    let n = steps.len() as f64;
    let xs = steps.iter().map(|s| Float::ln(*s));
    let ys = errors.iter().map(|e| Float::ln(*e));
    let mean_x = xs.clone().sum::<f64>() / n;
    let mean_y = ys.clone().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.zip(ys) {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
    }
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Largest `error / stepᵖ` over the ladder: the empirical constant in `error ≤ C·stepᵖ`.
pub fn max_constant(steps: &[f64], errors: &[f64], order: f64) -> f64 {
    steps
        .iter()
        .zip(errors)
        .map(|(s, e)| e / Float::powf(*s, order))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_laws() {
        let steps = [1e-2, 5e-3, 2.5e-3];
        let first: [f64; 3] = steps.map(|h| 3.0 * h);
        let second: [f64; 3] = steps.map(|h| 0.5 * h * h);
        assert!((fit_order(&steps, &first).unwrap() - 1.0).abs() < 1e-12);
        assert!((fit_order(&steps, &second).unwrap() - 2.0).abs() < 1e-12);
        assert!((max_constant(&steps, &second, 2.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(fit_order(&[1e-2], &[1e-3]), None);
        assert_eq!(fit_order(&[1e-2, 1e-3], &[0.0, 1e-3]), None);
        assert_eq!(fit_order(&[1e-2, 1e-2], &[1e-3, 1e-4]), None);
    }
}
