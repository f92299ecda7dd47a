use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::probe::{make_gaussian_probe, AnalyticTestFunction};
use crate::math::{conj_mul, ComplexSum, CompensatedSum};
use crate::{Error, Result};

/// Polar annulus discretization: Gauss–Legendre in `r` on `[r_min, r_max]`,
/// trapezoid in `θ` on `n_theta` equispaced angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        let spec = GridSpec {
            r_min,
            r_max,
            n_r,
            n_theta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) || !(self.r_max > self.r_min) || !self.r_max.is_finite() {
            return Err(Error::InvalidGrid("need 0 < r_min < r_max"));
        }
        if self.n_r < 8 {
            return Err(Error::InvalidGrid("n_r must be at least 8"));
        }
        if self.n_theta < 8 || !self.n_theta.is_multiple_of(2) {
            return Err(Error::InvalidGrid("n_theta must be even and at least 8"));
        }
        Ok(())
    }
}

impl Default for GridSpec {
    /// 64 × 64 nodes on `1e-9 ≤ r ≤ 8`.
    fn default() -> Self {
        GridSpec {
            r_min: 1e-9,
            r_max: 8.0,
            n_r: 64,
            n_theta: 64,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = Float::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            derivative = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / derivative;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Realized [`GridSpec`]: node coordinates and quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    spec: GridSpec,
    radii: Vec<f64>,
    area_weights: Vec<f64>,
    angles: Vec<f64>,
    nodes: Vec<Complex64>,
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Arc<Grid>> {
        spec.validate()?;
        let (x, w) = gauss_legendre(spec.n_r);
        let half = 0.5 * (spec.r_max - spec.r_min);
        let mid = 0.5 * (spec.r_max + spec.r_min);
        let radii: Vec<f64> = x.iter().map(|t| mid + half * t).collect();
        let dtheta = 2.0 * PI / spec.n_theta as f64;
        // dx dy = r dr dθ
        let area_weights = w
            .iter()
            .zip(&radii)
            .map(|(wi, r)| wi * half * r * dtheta)
            .collect();
        let angles: Vec<f64> = (0..spec.n_theta).map(|j| j as f64 * dtheta).collect();
        let mut nodes = Vec::with_capacity(spec.n_r * spec.n_theta);
        for theta in &angles {
            for r in &radii {
                nodes.push(Complex64::from_polar(*r, *theta));
            }
        }
        Ok(Arc::new(Grid {
            spec,
            radii,
            area_weights,
            angles,
            nodes,
        }))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in θ-major order: index `it·n_r + ir`.
    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `(r, θ)` of the node at a θ-major index.
    pub fn polar(&self, index: usize) -> (f64, f64) {
        let n_r = self.spec.n_r;
        (self.radii[index % n_r], self.angles[index / n_r])
    }

    /// Quadrature weight of plain area measure `dx dy` at a θ-major index.
    pub fn area_weight(&self, index: usize) -> f64 {
        self.area_weights[index % self.spec.n_r]
    }

    /// Quadrature weight of `dx dy/|z|⁴` (`r⁻³ dr dθ`) at a θ-major index.
    pub fn weight(&self, index: usize) -> f64 {
        let ir = index % self.spec.n_r;
        let r = self.radii[ir];
        self.area_weights[ir] / (r * r * r * r)
    }
}

/// Samples of a function at the nodes of a [`Grid`], θ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Arc<Grid>,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Arc<Grid>, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::SpecMismatch);
        }
        Ok(GridFunction { grid, samples })
    }

    pub fn from_fn(grid: &Arc<Grid>, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        let samples = grid.nodes().iter().map(|z| f(*z)).collect();
        GridFunction {
            grid: grid.clone(),
            samples,
        }
    }

    pub fn zeros(grid: &Arc<Grid>) -> Self {
        Self::from_fn(grid, |_| Complex64::new(0.0, 0.0))
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `(r, θ, value)` for every node, θ-major.
    pub fn iter_polar(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.samples.iter().enumerate().map(|(i, v)| {
            let (r, theta) = self.grid.polar(i);
            (r, theta, *v)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        mut op: impl FnMut(Complex64, Complex64) -> Complex64,
    ) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| op(*a, *b))
            .collect();
        Ok(GridFunction {
            grid: self.grid.clone(),
            samples,
        })
    }

    fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid.spec == other.grid.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }
}

pub fn sample(phi: &AnalyticTestFunction, grid: &Arc<Grid>) -> GridFunction {
    GridFunction::from_fn(grid, |z| phi.value(z))
}

/// `Σ w·conj(f)·g` with the `dx dy/|z|⁴` weights, summed in θ-major order.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let mut sum = ComplexSum::default();
    for (i, (a, b)) in f.samples.iter().zip(&g.samples).enumerate() {
        let w = f.grid.weight(i);
        let p = conj_mul(*a, *b);
        sum.add(Complex64::new(p.re * w, p.im * w));
    }
    Ok(sum.total())
}

pub fn norm(f: &GridFunction) -> f64 {
    let mut sum = CompensatedSum::default();
    for (i, a) in f.samples.iter().enumerate() {
        sum.add(a.norm_sqr() * f.grid.weight(i));
    }
    Float::sqrt(sum.total())
}

/// `|z|²·e^{−|z|²}`, whose weighted norm over the whole plane is `π/2`.
pub fn reference_probe() -> AnalyticTestFunction {
    make_gaussian_probe(Complex64::new(0.0, 0.0), 1.0, 0).expect("unit width is valid")
}

/// Exact weighted norm² of [`reference_probe`] over the annulus of `spec`:
/// `2π∫ r e^{−2r²} dr = (π/2)(e^{−2r_min²} − e^{−2r_max²})`.
pub fn reference_integral(spec: &GridSpec) -> f64 {
    let a = Float::exp(-2.0 * spec.r_min * spec.r_min);
    let b = Float::exp(-2.0 * spec.r_max * spec.r_max);
    0.5 * PI * (a - b)
}

/// `|‖f‖² − exact| / |exact|`, or the absolute error when `exact == 0`.
pub fn relative_quadrature_error(
    f: &AnalyticTestFunction,
    exact: f64,
    grid: &Arc<Grid>,
) -> f64 {
    let samples = sample(f, grid);
    let computed = norm(&samples);
    let error = (computed * computed - exact).abs();
    if exact == 0.0 {
        error
    } else {
        error / exact.abs()
    }
}

/// Relative quadrature error on the reference probe.
pub fn quadrature_self_test(spec: &GridSpec) -> Result<f64> {
    let grid = Grid::new(*spec)?;
    Ok(relative_quadrature_error(
        &reference_probe(),
        reference_integral(spec),
        &grid,
    ))
}

/// `∫∫ |f(1 + z′)|²·dx′dy′/|1 + z′|⁴` over the square `|x′ + 1|, |y′| ≤ half_width`,
/// by an `n × n` tensor Gauss–Legendre rule in the unshifted coordinates.
pub fn cartesian_unshifted_norm_sq(f: &AnalyticTestFunction, half_width: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let mut sum = CompensatedSum::default();
    for (xi, wi) in x.iter().zip(&w) {
        for (yj, wj) in x.iter().zip(&w) {
            let zp = Complex64::new(-1.0 + half_width * xi, half_width * yj);
            let shifted = zp + 1.0;
            let weight = 1.0 / (shifted.norm_sqr() * shifted.norm_sqr());
            sum.add(wi * wj * half_width * half_width * f.value(shifted).norm_sqr() * weight);
        }
    }
    sum.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(9);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x16: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(16)).sum();
        assert!((x16 - 2.0 / 17.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(0.0, 8.0, 64, 64).is_err());
        assert!(GridSpec::new(1.0, 0.5, 64, 64).is_err());
        assert!(GridSpec::new(1e-3, 8.0, 7, 64).is_err());
        assert!(GridSpec::new(1e-3, 8.0, 8, 9).is_err());
        assert!(GridSpec::new(1e-3, 8.0, 8, 8).is_ok());
    }

    #[test]
    fn zero_inner_product() {
        let grid = Grid::new(GridSpec::default()).unwrap();
        let z = GridFunction::zeros(&grid);
        assert_eq!(inner_product(&z, &z).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn reference_probe_integral() {
        let grid = Grid::new(GridSpec::default()).unwrap();
        let f = sample(&reference_probe(), &grid);
        let ip = inner_product(&f, &f).unwrap();
        assert!((ip.re - PI / 2.0).abs() < 1e-8, "{}", ip.re - PI / 2.0);
        assert_eq!(ip.im, 0.0);
    }

    #[test]
    fn angular_orthogonality() {
        let grid = Grid::new(GridSpec::new(1e-3, 8.0, 64, 64).unwrap()).unwrap();
        let f = sample(&reference_probe(), &grid);
        let g = sample(&make_gaussian_probe(Complex64::new(0.0, 0.0), 1.0, 1).unwrap(), &grid);
        assert!(inner_product(&f, &g).unwrap().norm() < 1e-10);
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let grid = Grid::new(GridSpec::default()).unwrap();
        let f = sample(&make_gaussian_probe(Complex64::new(0.3, 0.2), 0.9, 1).unwrap(), &grid);
        let g = sample(&make_gaussian_probe(Complex64::new(-0.5, 0.1), 1.1, 2).unwrap(), &grid);
        assert_eq!(
            inner_product(&f, &g).unwrap(),
            inner_product(&g, &f).unwrap().conj()
        );
    }

    #[test]
    fn mismatched_grids() {
        let a = Grid::new(GridSpec::default()).unwrap();
        let b = Grid::new(GridSpec::new(1e-3, 8.0, 32, 32).unwrap()).unwrap();
        assert_eq!(
            inner_product(&GridFunction::zeros(&a), &GridFunction::zeros(&b)),
            Err(Error::SpecMismatch)
        );
    }

    #[test]
    fn sampling_examples() {
        let grid = Grid::new(GridSpec::new(1.0, 3.0, 8, 8).unwrap()).unwrap();
        let ones = sample(&AnalyticTestFunction::constant(Complex64::new(1.0, 0.0)), &grid);
        assert!(ones.samples().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        let coords = sample(&AnalyticTestFunction::coordinate(), &grid);
        assert!(coords
            .samples()
            .iter()
            .zip(grid.nodes())
            .all(|(v, z)| v == z));
        let at_node = AnalyticTestFunction::radial_square().value(Complex64::from_polar(2.0, PI / 2.0));
        assert!((at_node - 4.0).norm() < 1e-14);
    }

    #[test]
    fn quadrature_self_test_examples() {
        let fine = GridSpec::new(1e-3, 8.0, 64, 64).unwrap();
        let coarse = GridSpec::new(1e-3, 8.0, 8, 64).unwrap();
        let e_fine = quadrature_self_test(&fine).unwrap();
        let e_coarse = quadrature_self_test(&coarse).unwrap();
        assert!(e_fine <= 1e-8, "{e_fine}");
        assert!(e_coarse > e_fine);
        let grid = Grid::new(fine).unwrap();
        assert_eq!(
            relative_quadrature_error(&AnalyticTestFunction::zero(), 0.0, &grid),
            0.0
        );
    }
}
