//! `P² = Π₁² + Π₂²`, its plane-wave generalized eigenfunctions and wavepackets.
//!
//! Under the gauge `f = |z|²ψ` the momentum operators become `i∂ᵢ` and `P²`
//! becomes `−∇²`, so `φ_k = |z|²e^{ik·x}` satisfies `Πᵢφ_k = −kᵢφ_k` and
//! `P²φ_k = |k|²φ_k`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::bessel::radial_j0_taylor;
use crate::function_space::{sample, AnalyticTestFunction, Grid, Support};
use crate::jet::{Jet, MAX_ORDER};
use crate::math::{conj_mul, ComplexSum, CompensatedSum};
use crate::momentum::{apply_pi, Direction};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Amplitudes below this are dropped from a packet.
pub const AMPLITUDE_FLOOR: f64 = 1e-300;

/// `Π₁(Π₁f) + Π₂(Π₂f)`.
pub fn apply_p_squared(f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    let xx = apply_pi(Direction::X, &apply_pi(Direction::X, f)?)?;
    let yy = apply_pi(Direction::Y, &apply_pi(Direction::Y, f)?)?;
    Ok(xx.sum(&yy))
}

/// `−|z|²·(ψ_rr + ψ_r/r + ψ_θθ/r²)` with `ψ = f/|z|²`, written in polar form.
///
/// Undefined at the origin, where the output is zero by the prefactor.
pub fn polar_p_squared_oracle(f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    let gauge = f.require_gauge_at(ZERO)?;
    let reduced = gauge.reduced().clone();
    let field = move |z: Complex64, order: usize| {
        assert!(order + 2 <= MAX_ORDER, "polar oracle needs two orders of headroom");
        if z == ZERO {
            return Jet::zero(order);
        }
        let psi = reduced.jet(z, order + 2);
        let (px, py) = (psi.d_dx(), psi.d_dy());
        let (pxx, pxy, pyy) = (px.d_dx(), px.d_dy(), py.d_dy());
        let (x, y) = Jet::coordinates(z, order);
        let s2 = x * x + y * y;
        let r = s2.sqrt();
        let inv_r = r.recip();
        let (cos, sin) = (x * inv_r, y * inv_r);
        let psi_r = cos * px + sin * py;
        let psi_rr = cos * cos * pxx + cos * sin * pxy * 2.0 + sin * sin * pyy;
        let psi_tt = s2 * (sin * sin * pxx - cos * sin * pxy * 2.0 + cos * cos * pyy) - r * psi_r;
        let laplacian = psi_rr + psi_r * inv_r + psi_tt * s2.recip();
        -(s2 * laplacian)
    };
    Ok(AnalyticTestFunction::from_field(field, f.support()))
}

/// `φ_k(z) = |z|²·e^{i(k₁x + k₂y)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveState {
    pub k1: f64,
    pub k2: f64,
}

impl PlaneWaveState {
    pub fn new(k1: f64, k2: f64) -> Self {
        PlaneWaveState { k1, k2 }
    }

    /// `λ² = k₁² + k₂²`.
    pub fn p_squared_eigenvalue(&self) -> f64 {
        self.k1 * self.k1 + self.k2 * self.k2
    }

    /// `ψ = e^{ik·x}` at `z`.
    pub fn phase(&self, z: Complex64) -> Complex64 {
        (I * (self.k1 * z.re + self.k2 * z.im)).exp()
    }

    pub fn to_function(&self) -> AnalyticTestFunction {
        let (k1, k2) = (self.k1, self.k2);
        AnalyticTestFunction::gauged(
            ZERO,
            move |z: Complex64, order: usize| {
                let (x, y) = Jet::coordinates(z, order);
                ((x * k1 + y * k2) * I).exp()
            },
            Support::Unbounded,
        )
    }
}

/// Pointwise residuals of the plane-wave eigen-equations on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResiduals {
    /// `max |Π₁φ + k₁φ|`.
    pub res_pi1: f64,
    /// `max |Π₂φ + k₂φ|`.
    pub res_pi2: f64,
    /// `max |P²φ − |k|²φ|`.
    pub res_p2: f64,
    /// `Σ conj(φ)·P²φ / Σ |φ|²` over the nodes.
    pub p2_eigenvalue: f64,
}

impl EigenResiduals {
    pub fn max(&self) -> f64 {
        self.res_pi1.max(self.res_pi2).max(self.res_p2)
    }
}

pub fn eigencheck(k1: f64, k2: f64, grid: &Arc<Grid>) -> Result<EigenResiduals> {
    let state = PlaneWaveState::new(k1, k2);
    let phi = state.to_function();
    let phi_s = sample(&phi, grid);
    let pi1 = sample(&apply_pi(Direction::X, &phi)?, grid);
    let pi2 = sample(&apply_pi(Direction::Y, &phi)?, grid);
    let p2 = sample(&apply_p_squared(&phi)?, grid);
    let lambda = state.p_squared_eigenvalue();
    let res_pi1 = pi1.zip_with(&phi_s, |a, b| a + b * k1)?.max_abs();
    let res_pi2 = pi2.zip_with(&phi_s, |a, b| a + b * k2)?.max_abs();
    let res_p2 = p2.zip_with(&phi_s, |a, b| a - b * lambda)?.max_abs();
    let mut num = ComplexSum::default();
    let mut den = CompensatedSum::default();
    for (p, v) in phi_s.samples().iter().zip(p2.samples()) {
        num.add(conj_mul(*p, *v));
        den.add(p.norm_sqr());
    }
    Ok(EigenResiduals {
        res_pi1,
        res_pi2,
        res_p2,
        p2_eigenvalue: num.total().re / den.total(),
    })
}

/// `|z|²·J₀(k|z|)`, a radial solution of `P²f = k²f`.
pub fn bessel_mode(k: f64) -> AnalyticTestFunction {
    AnalyticTestFunction::gauged(
        ZERO,
        move |z: Complex64, order: usize| {
            let s = Jet::squared_distance(z, ZERO, order);
            let taylor = radial_j0_taylor(k, z.norm_sqr(), order);
            s.compose(&taylor.map(|t| Complex64::new(t, 0.0)))
        },
        Support::Unbounded,
    )
}

/// Step of the radial differences in [`discrete_polar_helmholtz_residual`].
pub const RADIAL_STEP: f64 = 5e-3;

/// Max over grid nodes of `|r²ψ_rr + rψ_r + ψ_θθ + k²r²ψ|` for `ψ = f/|z|²`,
/// with fourth-order central differences along rays and spectral
/// differentiation around each circle.
///
/// Nodes closer than two steps to the origin are skipped.
pub fn discrete_polar_helmholtz_residual(
    f: &AnalyticTestFunction,
    k: f64,
    grid: &Arc<Grid>,
) -> Result<f64> {
    let gauge = f.require_gauge_at(ZERO)?;
    let psi = |z: Complex64| gauge.reduced_jet(z, 0).value();
    let h = RADIAL_STEP;
    let angles = grid.angles();
    let n = angles.len();
    let mut worst = 0.0f64;
    for &r in grid.radii() {
        if r <= 2.0 * h {
            continue;
        }
        let ring: Vec<Complex64> = angles.iter().map(|t| psi(Complex64::from_polar(r, *t))).collect();
        let ring_tt = spectral_second_derivative(&ring);
        for (j, &theta) in angles.iter().enumerate() {
            let at = |rho: f64| psi(Complex64::from_polar(rho, theta));
            let (m2, m1, p1, p2) = (at(r - 2.0 * h), at(r - h), at(r + h), at(r + 2.0 * h));
            let c0 = ring[j];
            let d1 = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * h);
            let d2 = (-m2 + m1 * 16.0 - c0 * 30.0 + p1 * 16.0 - p2) / (12.0 * h * h);
            let residual = d2 * (r * r) + d1 * r + ring_tt[j] + c0 * (k * k * r * r);
            worst = worst.max(residual.norm());
        }
        debug_assert_eq!(ring_tt.len(), n);
    }
    Ok(worst)
}

/// Second derivative of a periodic sequence on `[0, 2π)` by direct DFT.
fn spectral_second_derivative(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let step = 2.0 * PI / n as f64;
    let mut coeffs = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = ComplexSum::default();
        for (j, v) in values.iter().enumerate() {
            acc.add(v * Complex64::from_polar(1.0, -step * ((m * j) % n) as f64));
        }
        coeffs.push(acc.total() / n as f64);
    }
    (0..n)
        .map(|j| {
            let mut acc = ComplexSum::default();
            for (m, c) in coeffs.iter().enumerate() {
                // Signed wavenumber; the Nyquist mode has no well-defined derivative.
                let freq = if 2 * m < n { m as f64 } else if 2 * m == n { 0.0 } else { m as f64 - n as f64 };
                acc.add(c * Complex64::from_polar(freq * freq, step * ((m * j) % n) as f64) * -1.0);
            }
            acc.total()
        })
        .collect()
}

/// Spectral profile of a wavepacket.
#[derive(Clone)]
pub enum Amplitude {
    /// `a(k) = exp(−|k − k₀|²/(2σ²))`.
    Gaussian,
    /// A single node at `k₀` with unit weight.
    Monochromatic,
    /// Any profile, sampled on the same node set as the Gaussian.
    Custom(Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amplitude::Gaussian => f.write_str("Gaussian"),
            Amplitude::Monochromatic => f.write_str("Monochromatic"),
            Amplitude::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Packet `φ = |z|²·Σ a(k)e^{ik·x}·w(k)` over a tensor Gauss–Legendre rule on
/// the square `|kᵢ − k₀ᵢ| ≤ cutoff·σ`.
#[derive(Debug, Clone)]
pub struct WavepacketSpec {
    pub k0: [f64; 2],
    pub sigma: f64,
    pub n_k: usize,
    pub cutoff: f64,
    pub amplitude: Amplitude,
}

impl WavepacketSpec {
    pub fn gaussian(k0: [f64; 2], sigma: f64, n_k: usize) -> Self {
        WavepacketSpec {
            k0,
            sigma,
            n_k,
            cutoff: 4.0,
            amplitude: Amplitude::Gaussian,
        }
    }

    pub fn monochromatic(k0: [f64; 2]) -> Self {
        WavepacketSpec {
            k0,
            sigma: 1.0,
            n_k: 1,
            cutoff: 4.0,
            amplitude: Amplitude::Monochromatic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k0[0].is_finite() && self.k0[1].is_finite()) {
            return Err(Error::InvalidParameter("k0 must be finite"));
        }
        if matches!(self.amplitude, Amplitude::Monochromatic) {
            return Ok(());
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidParameter("sigma must be positive"));
        }
        if !(self.cutoff > 0.0) || !self.cutoff.is_finite() {
            return Err(Error::InvalidParameter("cutoff must be positive"));
        }
        if self.n_k == 0 {
            return Err(Error::InvalidParameter("n_k must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralNode {
    pub k1: f64,
    pub k2: f64,
    pub amplitude: Complex64,
    pub weight: f64,
}

/// An assembled packet: its retained spectral nodes and the gauged function.
#[derive(Debug, Clone)]
pub struct Wavepacket {
    nodes: Arc<Vec<SpectralNode>>,
    function: AnalyticTestFunction,
}

impl Wavepacket {
    pub fn nodes(&self) -> &[SpectralNode] {
        &self.nodes
    }

    pub fn function(&self) -> &AnalyticTestFunction {
        &self.function
    }

    /// `ψ(z) = Σ a·w·e^{ik·x}`, summed directly.
    pub fn psi(&self, z: Complex64) -> Complex64 {
        let mut acc = ComplexSum::default();
        for node in self.nodes.iter() {
            let phase = (I * (node.k1 * z.re + node.k2 * z.im)).exp();
            acc.add(node.amplitude * phase * node.weight);
        }
        acc.total()
    }

    /// `Σ |a|²·w`.
    pub fn spectral_mass(&self) -> f64 {
        spectral_mass(&self.nodes)
    }
}

pub fn spectral_mass(nodes: &[SpectralNode]) -> f64 {
    let mut acc = CompensatedSum::default();
    for node in nodes {
        acc.add(node.amplitude.norm_sqr() * node.weight);
    }
    acc.total()
}

/// The node set of a spec, amplitudes below [`AMPLITUDE_FLOOR`] dropped.
pub fn spectral_nodes(spec: &WavepacketSpec) -> Result<Vec<SpectralNode>> {
    spec.validate()?;
    let [c1, c2] = spec.k0;
    let mut nodes = Vec::new();
    match &spec.amplitude {
        Amplitude::Monochromatic => nodes.push(SpectralNode {
            k1: c1,
            k2: c2,
            amplitude: ONE,
            weight: 1.0,
        }),
        profile => {
            let half = spec.cutoff * spec.sigma;
            let (x, w) = crate::function_space::gauss_legendre(spec.n_k);
            let two_sigma_sq = 2.0 * spec.sigma * spec.sigma;
            for (xi, wi) in x.iter().zip(&w) {
                for (xj, wj) in x.iter().zip(&w) {
                    let (k1, k2) = (c1 + half * xi, c2 + half * xj);
                    let amplitude = match profile {
                        Amplitude::Custom(a) => a(k1, k2),
                        _ => {
                            let d2 = (k1 - c1) * (k1 - c1) + (k2 - c2) * (k2 - c2);
                            Complex64::new(Float::exp(-d2 / two_sigma_sq), 0.0)
                        }
                    };
                    if amplitude.norm() >= AMPLITUDE_FLOOR {
                        nodes.push(SpectralNode {
                            k1,
                            k2,
                            amplitude,
                            weight: wi * wj * half * half,
                        });
                    }
                }
            }
        }
    }
    if nodes.iter().all(|n| n.amplitude.norm() < AMPLITUDE_FLOOR) {
        return Err(Error::EmptySpectrum);
    }
    Ok(nodes)
}

pub fn build_wavepacket(spec: &WavepacketSpec) -> Result<Wavepacket> {
    let nodes = Arc::new(spectral_nodes(spec)?);
    let inner = nodes.clone();
    let reduced = move |z: Complex64, order: usize| {
        let (x, y) = Jet::coordinates(z, order);
        let mut acc = Jet::zero(order);
        for node in inner.iter() {
            acc += ((x * node.k1 + y * node.k2) * I).exp() * (node.amplitude * node.weight);
        }
        acc
    };
    Ok(Wavepacket {
        nodes,
        function: AnalyticTestFunction::gauged(ZERO, reduced, Support::Unbounded),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::{
        annular_plateau, inner_product, make_gaussian_probe, norm, GridSpec,
    };
    use crate::induced::{apply_u, TranslationParameter};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> Arc<Grid> {
        Grid::new(GridSpec::new(1e-9, 6.0, 24, 16).unwrap()).unwrap()
    }

    #[test]
    fn zero_and_constant_psi() {
        let g = grid();
        let zero = apply_p_squared(&AnalyticTestFunction::zero()).unwrap();
        assert_eq!(sample(&zero, &g).max_abs(), 0.0);
        let plateau = annular_plateau(1.0, 2.0, 0.5).unwrap();
        let out = polar_p_squared_oracle(&plateau).unwrap();
        for z in [c(1.5, 0.0), c(0.0, -1.2), c(1.0, 1.0)] {
            assert!(out.value(z).norm() < 1e-12);
        }
    }

    #[test]
    fn plane_wave_eigenvalues() {
        let g = grid();
        let res = eigencheck(1.0, 0.0, &g).unwrap();
        assert!(res.max() <= 1e-10, "{res:?}");
        assert!((res.p2_eigenvalue - 1.0).abs() <= 1e-10);
        let res = eigencheck(3.0, 4.0, &g).unwrap();
        assert!(res.max() <= 1e-10, "{res:?}");
        assert!((res.p2_eigenvalue - 25.0).abs() <= 1e-10);
        let res = eigencheck(0.0, 0.0, &g).unwrap();
        assert!(res.max() <= 1e-13);
        assert!(res.p2_eigenvalue.abs() <= 1e-15);
        let phi = PlaneWaveState::new(1.0, 0.0).to_function();
        let z = c(0.7, 0.2);
        let polar = polar_p_squared_oracle(&phi).unwrap().value(z);
        assert!((polar - phi.value(z)).norm() < 1e-12);
    }

    #[test]
    fn p_squared_matches_polar() {
        let g = grid();
        for (center, width, m) in [(c(0.3, -0.4), 1.0, 0), (c(-0.8, 0.2), 1.2, 2), (c(0.0, 1.1), 0.9, -1)] {
            let f = make_gaussian_probe(center, width, m).unwrap();
            let a = sample(&apply_p_squared(&f).unwrap(), &g);
            let b = sample(&polar_p_squared_oracle(&f).unwrap(), &g);
            assert!(a.max_abs_diff(&b).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn bessel_mode_residuals() {
        let g = grid();
        let mode = bessel_mode(1.0);
        assert!(discrete_polar_helmholtz_residual(&mode, 1.0, &g).unwrap() <= 1e-8);
        let p2 = sample(&apply_p_squared(&mode).unwrap(), &g);
        let direct = sample(&mode, &g);
        assert!(p2.max_abs_diff(&direct).unwrap() <= 1e-10);
        // A wrong wavenumber is detected.
        assert!(discrete_polar_helmholtz_residual(&mode, 1.1, &g).unwrap() > 1e-3);
    }

    #[test]
    fn spectral_derivative_of_modes() {
        let n = 16;
        let values: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, 3.0 * 2.0 * PI * j as f64 / n as f64))
            .collect();
        let d2 = spectral_second_derivative(&values);
        for (v, d) in values.iter().zip(&d2) {
            assert!((d + v * 9.0).norm() < 1e-12);
        }
    }

    #[test]
    fn monochromatic_packet_is_plane_wave() {
        let packet = build_wavepacket(&WavepacketSpec::monochromatic([2.0, -1.0])).unwrap();
        let phi = PlaneWaveState::new(2.0, -1.0).to_function();
        let z = c(0.4, 1.3);
        assert!((packet.function().value(z) - phi.value(z)).norm() < 1e-14);
    }

    #[test]
    fn gaussian_envelope() {
        let sigma = 0.5;
        let packet = build_wavepacket(&WavepacketSpec::gaussian([2.0, 0.0], sigma, 24)).unwrap();
        let peak = 2.0 * PI * sigma * sigma;
        for z in [c(0.0, 0.0), c(1.0, 0.5), c(-2.0, 1.0), c(3.0, -3.0)] {
            let expected = (-sigma * sigma * z.norm_sqr() / 2.0).exp() * (I * 2.0 * z.re).exp() * peak;
            assert!((packet.psi(z) - expected).norm() <= 2e-4 * peak);
        }
    }

    #[test]
    fn zero_spectrum_is_rejected() {
        let mut spec = WavepacketSpec::gaussian([0.0, 0.0], 1.0, 4);
        spec.amplitude = Amplitude::Custom(Arc::new(|_, _| ZERO));
        assert_eq!(build_wavepacket(&spec).unwrap_err(), Error::EmptySpectrum);
    }

    #[test]
    fn packet_transport_and_norm() {
        let g = Grid::new(GridSpec::default()).unwrap();
        let spec = WavepacketSpec::gaussian([2.0, 0.0], 0.5, 24);
        let packet = build_wavepacket(&spec).unwrap();
        let beta = c(1.0, 0.0);
        let moved = apply_u(TranslationParameter(beta), packet.function()).unwrap();
        for z in g.nodes().iter().step_by(97) {
            let lhs = moved.value(*z) / z.norm_sqr();
            assert!((lhs - packet.psi(z + beta)).norm() <= 1e-10);
        }
        let coarse = norm(&sample(packet.function(), &g));
        let finer = build_wavepacket(&WavepacketSpec::gaussian([2.0, 0.0], 0.5, 48)).unwrap();
        let fine = norm(&sample(finer.function(), &g));
        assert!((coarse - fine).abs() <= 1e-6 * fine, "{coarse} {fine}");
        let ip = inner_product(&sample(packet.function(), &g), &sample(finer.function(), &g)).unwrap();
        assert!(ip.re > 0.0);
    }
}
