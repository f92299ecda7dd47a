//! Truncated bivariate Taylor polynomials with complex coefficients.
//!
//! A [`Jet`] of order `n` at a point `(x₀, y₀)` stores the Taylor coefficients
//! `c[i][j] = ∂ˣⁱ∂ʸʲf / (i!·j!)` for `i + j ≤ n`. Arithmetic on jets is exact
//! forward-mode differentiation, so derivatives of composite expressions come
//! out to roundoff without any finite differencing.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// Highest order a jet can carry.
pub const MAX_ORDER: usize = 6;

const LEN: usize = (MAX_ORDER + 1) * (MAX_ORDER + 2) / 2;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
const fn index(i: usize, j: usize) -> usize {
    let k = i + j;
    k * (k + 1) / 2 + j
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    order: usize,
    coeffs: [Complex64; LEN],
}

impl Jet {
    /// # Panics
    /// If `order > MAX_ORDER`.
    pub fn zero(order: usize) -> Self {
        assert!(
            order <= MAX_ORDER,
            "jet order {order} exceeds MAX_ORDER = {MAX_ORDER}"
        );
        Jet {
            order,
            coeffs: [ZERO; LEN],
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut jet = Jet::zero(order);
        jet.coeffs[0] = value;
        jet
    }

    pub fn real_constant(value: f64, order: usize) -> Self {
        Jet::constant(Complex64::new(value, 0.0), order)
    }

    /// The coordinate function `x` expanded at `x0`.
    pub fn x(x0: f64, order: usize) -> Self {
        let mut jet = Jet::real_constant(x0, order);
        if order >= 1 {
            jet.coeffs[index(1, 0)] = ONE;
        }
        jet
    }

    /// The coordinate function `y` expanded at `y0`.
    pub fn y(y0: f64, order: usize) -> Self {
        let mut jet = Jet::real_constant(y0, order);
        if order >= 1 {
            jet.coeffs[index(0, 1)] = ONE;
        }
        jet
    }

    /// `(x, y)` jets at the point `z = x + iy`.
    pub fn coordinates(z: Complex64, order: usize) -> (Jet, Jet) {
        (Jet::x(z.re, order), Jet::y(z.im, order))
    }

    /// `|z − center|²` as a jet at `z`.
    pub fn squared_distance(z: Complex64, center: Complex64, order: usize) -> Self {
        let (x, y) = Jet::coordinates(z - center, order);
        x * x + y * y
    }

    /// Builds a jet from a coefficient function `(i, j) ↦ c[i][j]`.
    pub fn from_fn(order: usize, mut coeff: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut jet = Jet::zero(order);
        for k in 0..=order {
            for j in 0..=k {
                jet.coeffs[index(k - j, j)] = coeff(k - j, j);
            }
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Taylor coefficient of `dxⁱ dyʲ`; zero above the jet order.
    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        if i + j > self.order {
            ZERO
        } else {
            self.coeffs[index(i, j)]
        }
    }

    /// `∂ˣⁱ∂ʸʲ f` at the expansion point.
    pub fn partial(&self, i: usize, j: usize) -> Complex64 {
        self.coeff(i, j) * (factorial(i) * factorial(j))
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn dx(&self) -> Complex64 {
        self.partial(1, 0)
    }

    pub fn dy(&self) -> Complex64 {
        self.partial(0, 1)
    }

    pub fn dxx(&self) -> Complex64 {
        self.partial(2, 0)
    }

    pub fn dxy(&self) -> Complex64 {
        self.partial(1, 1)
    }

    pub fn dyy(&self) -> Complex64 {
        self.partial(0, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs[..index(0, self.order) + 1]
            .iter()
            .all(|c| *c == ZERO)
    }

    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return *self;
        }
        let mut jet = Jet::zero(order);
        let n = index(0, order) + 1;
        jet.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        jet
    }

    /// `∂f/∂x`, one order lower.
    ///
    /// # Panics
    /// On an order-0 jet.
    pub fn d_dx(&self) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Jet::from_fn(self.order - 1, |i, j| {
            self.coeffs[index(i + 1, j)] * (i + 1) as f64
        })
    }

    /// `∂f/∂y`, one order lower.
    ///
    /// # Panics
    /// On an order-0 jet.
    pub fn d_dy(&self) -> Self {
        assert!(self.order > 0, "cannot differentiate an order-0 jet");
        Jet::from_fn(self.order - 1, |i, j| {
            self.coeffs[index(i, j + 1)] * (j + 1) as f64
        })
    }

    /// Complex conjugate. Valid because the expansion variables are real.
    pub fn conj(&self) -> Self {
        let mut jet = *self;
        for c in jet.coeffs.iter_mut() {
            *c = c.conj();
        }
        jet
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut jet = *self;
        let n = index(0, self.order) + 1;
        for c in jet.coeffs[..n].iter_mut() {
            *c *= s;
        }
        jet
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Composes a univariate function with this jet. `taylor[n]` must hold
    /// `f⁽ⁿ⁾(u₀)/n!` at `u₀ = self.value()` for `n = 0..=order`.
    pub fn compose(&self, taylor: &[Complex64]) -> Self {
        let order = self.order;
        debug_assert!(taylor.len() > order);
        let mut h = *self;
        h.coeffs[0] = ZERO;
        let mut acc = Jet::constant(taylor[order], order);
        for n in (0..order).rev() {
            acc = acc * h;
            acc.coeffs[0] += taylor[n];
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        let mut taylor = [ZERO; MAX_ORDER + 1];
        let mut term = e;
        for (n, t) in taylor.iter_mut().enumerate().take(self.order + 1) {
            if n > 0 {
                term /= n as f64;
            }
            *t = term;
        }
        self.compose(&taylor)
    }

    pub fn recip(&self) -> Self {
        let u0 = self.value();
        let inv = u0.inv();
        let mut taylor = [ZERO; MAX_ORDER + 1];
        let mut term = inv;
        for (n, t) in taylor.iter_mut().enumerate().take(self.order + 1) {
            if n > 0 {
                term = -term * inv;
            }
            *t = term;
        }
        self.compose(&taylor)
    }

    /// Principal branch of `u^p`.
    pub fn powf(&self, p: f64) -> Self {
        let u0 = self.value();
        let inv = u0.inv();
        let mut taylor = [ZERO; MAX_ORDER + 1];
        let mut term = u0.powf(p);
        for (n, t) in taylor.iter_mut().enumerate().take(self.order + 1) {
            if n > 0 {
                term = term * inv * ((p - (n - 1) as f64) / n as f64);
            }
            *t = term;
        }
        self.compose(&taylor)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Jet::constant(ONE, self.order);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Jet) -> f64 {
        let order = self.order.max(other.order);
        let mut worst = 0.0_f64;
        for k in 0..=order {
            for j in 0..=k {
                worst = worst.max((self.coeff(k - j, j) - other.coeff(k - j, j)).norm());
            }
        }
        worst
    }
}

impl Add for Jet {
    type Output = Jet;

    fn add(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        let n = index(0, order) + 1;
        for (a, b) in out.coeffs[..n].iter_mut().zip(&rhs.coeffs[..n]) {
            *a += *b;
        }
        out
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Add<Complex64> for Jet {
    type Output = Jet;

    fn add(mut self, rhs: Complex64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub for Jet {
    type Output = Jet;

    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;

    fn neg(self) -> Jet {
        self.scale_real(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;

    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero(order);
        if order == 0 {
            out.coeffs[0] = self.coeffs[0] * rhs.coeffs[0];
            return out;
        }
        for ka in 0..=order {
            for ja in 0..=ka {
                let a = self.coeffs[index(ka - ja, ja)];
                if a == ZERO {
                    continue;
                }
                for kb in 0..=(order - ka) {
                    for jb in 0..=kb {
                        let b = rhs.coeffs[index(kb - jb, jb)];
                        out.coeffs[index(ka - ja + kb - jb, ja + jb)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;

    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;

    fn mul(self, rhs: f64) -> Jet {
        self.scale_real(rhs)
    }
}

impl core::ops::Div for Jet {
    type Output = Jet;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn polynomial_partials() {
        // f = x²y + 3y³ at (2, −1)
        let (x, y) = Jet::coordinates(Complex64::new(2.0, -1.0), 4);
        let f = x * x * y + y * y * y * 3.0;
        assert_eq!(f.value(), c(-4.0 - 3.0));
        assert_eq!(f.dx(), c(-(2.0 * 2.0)));
        assert_eq!(f.dy(), c(4.0 + 9.0));
        assert_eq!(f.dxx(), c(-2.0));
        assert_eq!(f.dxy(), c(4.0));
        assert_eq!(f.dyy(), c(-18.0));
        assert_eq!(f.partial(2, 1), c(2.0));
        assert_eq!(f.partial(0, 3), c(18.0));
        assert_eq!(f.partial(1, 3), c(0.0));
    }

    #[test]
    fn exp_and_recip_match_closed_forms() {
        let (x, y) = Jet::coordinates(Complex64::new(0.3, 0.7), 5);
        let r2 = x * x + y * y;
        let g = (-r2).exp();
        let e = (-(0.09_f64 + 0.49)).exp();
        assert!((g.value() - c(e)).norm() < 1e-15);
        assert!((g.dx() - c(-0.6 * e)).norm() < 1e-15);
        assert!((g.dxx() - c((4.0 * 0.09 - 2.0) * e)).norm() < 1e-15);
        assert!((g.dxy() - c(4.0 * 0.3 * 0.7 * e)).norm() < 1e-15);

        let inv = r2.recip();
        let prod = inv * r2;
        assert!(prod.max_abs_diff(&Jet::constant(c(1.0), 5)) < 1e-13);
        assert!((inv.dx() - c(-0.6 / (0.58_f64 * 0.58))).norm() < 1e-14);
    }

    #[test]
    fn sqrt_squares_back() {
        let (x, y) = Jet::coordinates(Complex64::new(1.2, -0.5), 6);
        let s = x * x + y * y;
        let r = s.sqrt();
        assert!((r * r).max_abs_diff(&s) < 1e-13);
        assert!((r.value() - c(1.3)).norm() < 1e-15);
        assert!((r.dx() - c(1.2 / 1.3)).norm() < 1e-15);
    }

    #[test]
    fn derivative_shifts_coefficients() {
        let (x, y) = Jet::coordinates(Complex64::new(0.5, 0.25), 3);
        let f = (x * y).exp();
        let fx = f.d_dx();
        assert_eq!(fx.order(), 2);
        assert!((fx.value() - f.dx()).norm() < 1e-15);
        assert!((fx.dy() - f.dxy()).norm() < 1e-15);
        assert!((fx.dx() - f.dxx()).norm() < 1e-15);
        assert!((f.d_dy().dx() - f.dxy()).norm() < 1e-15);
    }

    #[test]
    fn truncation_follows_lower_order() {
        let (x, _) = Jet::coordinates(Complex64::new(1.0, 0.0), 4);
        let low = Jet::x(1.0, 1);
        assert_eq!((x * low).order(), 1);
        assert_eq!((x + low).order(), 1);
        assert_eq!(x.truncate(2).order(), 2);
    }

    #[test]
    #[should_panic]
    fn order_is_bounded() {
        let _ = Jet::zero(MAX_ORDER + 1);
    }
}
