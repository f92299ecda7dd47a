//! Bessel functions of the first kind for the radial Helmholtz modes.

use core::f64::consts::PI;

use num_traits::Float;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `Jₙ(x)` for integer order.
///
/// Uses the power series for `|x| ≤ 2` and otherwise the trapezoid rule on
/// `(1/2π)∫₀^{2π} cos(nτ − x sin τ) dτ`, whose periodic analytic integrand makes
/// the rule converge geometrically once the node count exceeds `|x| + n`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    if n < 0 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return sign * bessel_j(-n, x);
    }
    if x.abs() <= 2.0 {
        return x.powi(n) * scaled_bessel_j(n as usize, x);
    }
    let nodes = 64 + 2 * (x.abs().ceil() as usize + n as usize);
    let h = 2.0 * PI / nodes as f64;
    let mut sum = 0.0;
    for k in 0..nodes {
        let tau = k as f64 * h;
        sum += Float::cos(n as f64 * tau - x * Float::sin(tau));
    }
    sum / nodes as f64
}

/// `x⁻ⁿ·Jₙ(x)`, which stays finite at the origin.
pub fn scaled_bessel_j(n: usize, x: f64) -> f64 {
    if x.abs() > 2.0 {
        return bessel_j(n as i32, x) / x.powi(n as i32);
    }
    let q = -0.25 * x * x;
    let mut term = 1.0 / (factorial(n) * (1u64 << n) as f64);
    let mut sum = term;
    for j in 1..60 {
        term *= q / (j as f64 * (n + j) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Taylor coefficients `g⁽ⁿ⁾(s₀)/n!`, `n = 0..=order`, of `g(s) = J₀(k·√s)`,
/// an entire function of `s = r²`.
///
/// From `(1/x · d/dx)ⁿ J₀(x) = (−1)ⁿ x⁻ⁿ Jₙ(x)` and `d/ds = (k²/2)(1/x)d/dx`.
pub fn radial_j0_taylor(k: f64, s0: f64, order: usize) -> [f64; crate::jet::MAX_ORDER + 1] {
    let mut out = [0.0; crate::jet::MAX_ORDER + 1];
    let x = k * Float::sqrt(s0.max(0.0));
    let half_k2 = -0.5 * k * k;
    let mut scale = 1.0;
    for (n, slot) in out.iter_mut().enumerate().take(order + 1) {
        if n > 0 {
            scale *= half_k2 / n as f64;
        }
        *slot = scale * scaled_bessel_j(n, x);
    }
    out
}
