//! Generators `B₁, B₂` of the translation representation and the momentum
//! operators `Πᵢ = i·Bᵢ`.
//!
//! In shifted coordinates `Bᵢf = −2xᵢ/|z|²·f + ∂ᵢf`. Operators act on
//! [`AnalyticTestFunction`]s through exact jets; finite differences only appear
//! in the limit oracle.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::function_space::{inner_product, sample, AnalyticTestFunction, Grid, GridFunction};
use crate::induced::{apply_u, TranslationParameter};
use crate::jet::{Jet, MAX_ORDER};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::X, Direction::Y];

    /// From the 1-based index used for `B₁`, `B₂`.
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Direction::X),
            2 => Ok(Direction::Y),
            _ => Err(Error::InvalidParameter("direction index must be 1 or 2")),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Direction::X => 1,
            Direction::Y => 2,
        }
    }

    /// `e₁ = 1`, `e₂ = i`.
    pub fn unit(self) -> Complex64 {
        match self {
            Direction::X => ONE,
            Direction::Y => I,
        }
    }

    fn differentiate(self, jet: &Jet) -> Jet {
        match self {
            Direction::X => jet.d_dx(),
            Direction::Y => jet.d_dy(),
        }
    }
}

/// `scalar·(−2(xᵢ − pᵢ)/|z − p|² + ∂ᵢ)` for a pole `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderOperator {
    direction: Direction,
    scalar: Complex64,
    pole: Complex64,
}

impl FirstOrderOperator {
    /// `Bᵢ` in shifted coordinates.
    pub fn generator(direction: Direction) -> Self {
        FirstOrderOperator {
            direction,
            scalar: ONE,
            pole: ZERO,
        }
    }

    /// `Πᵢ = i·Bᵢ`.
    pub fn momentum(direction: Direction) -> Self {
        FirstOrderOperator {
            direction,
            scalar: I,
            pole: ZERO,
        }
    }

    /// `Bᵢ` in unshifted coordinates, with its pole at `z = −1`.
    pub fn unshifted_generator(direction: Direction) -> Self {
        FirstOrderOperator {
            direction,
            scalar: ONE,
            pole: -ONE,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn pole(&self) -> Complex64 {
        self.pole
    }

    /// Jet of the multiplier `−2(xᵢ − pᵢ)/|z − p|²` at a point other than the pole.
    pub fn multiplier_jet(&self, z: Complex64, order: usize) -> Jet {
        let (x, y) = Jet::coordinates(z - self.pole, order);
        let numerator = match self.direction {
            Direction::X => x,
            Direction::Y => y,
        };
        numerator * (x * x + y * y).recip() * -2.0
    }

    /// Applies the operator. `f` must vanish quadratically at the pole.
    ///
    /// The result is evaluated literally as multiplier times `f` plus the
    /// derivative, except exactly at the pole where it takes its limit. It is
    /// gauged at the pole with reduced part `scalar·∂ᵢψ`.
    pub fn apply(&self, f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
        let gauge = f.require_gauge_at(self.pole)?;
        let op = *self;
        let reduced_in = gauge.reduced().clone();
        let field_in = f.field().clone();
        let reduced_out = {
            let reduced_in = reduced_in.clone();
            move |z: Complex64, order: usize| {
                op.direction.differentiate(&reduced_in.jet(z, order + 1)) * op.scalar
            }
        };
        let field_out = move |z: Complex64, order: usize| {
            assert!(order < MAX_ORDER, "operator output needs one order of headroom");
            if z == op.pole {
                let limit = op.direction.differentiate(&reduced_in.jet(z, order + 1));
                return Jet::squared_distance(z, op.pole, order) * limit * op.scalar;
            }
            let f_jet = field_in.jet(z, order + 1);
            (op.multiplier_jet(z, order) * f_jet.truncate(order) + op.direction.differentiate(&f_jet))
                * op.scalar
        };
        Ok(AnalyticTestFunction::gauged_shared(
            self.pole,
            Arc::new(reduced_out),
            f.support(),
        )
        .with_field(Arc::new(field_out)))
    }
}

pub fn apply_b(direction: Direction, f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    FirstOrderOperator::generator(direction).apply(f)
}

pub fn apply_pi(direction: Direction, f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    FirstOrderOperator::momentum(direction).apply(f)
}

/// Unshifted `Bᵢ = −2(xᵢ + δᵢ₁)/|1 + z|² + ∂ᵢ`.
pub fn apply_b_unshifted(
    direction: Direction,
    f: &AnalyticTestFunction,
) -> Result<AnalyticTestFunction> {
    FirstOrderOperator::unshifted_generator(direction).apply(f)
}

/// Forward difference `(U(η·eᵢ)f − f)/η` sampled on the grid.
pub fn generator_limit_oracle(
    direction: Direction,
    f: &AnalyticTestFunction,
    eta: f64,
    grid: &Arc<Grid>,
) -> Result<GridFunction> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::InvalidParameter("eta must be positive"));
    }
    let moved = apply_u(TranslationParameter(direction.unit() * eta), f)?;
    Ok(GridFunction::from_fn(grid, |z| {
        (moved.value(z) - f.value(z)) / eta
    }))
}

/// Richardson combination `2·D(η/2) − D(η)` of [`generator_limit_oracle`].
pub fn richardson_limit_oracle(
    direction: Direction,
    f: &AnalyticTestFunction,
    eta: f64,
    grid: &Arc<Grid>,
) -> Result<GridFunction> {
    let coarse = generator_limit_oracle(direction, f, eta, grid)?;
    let fine = generator_limit_oracle(direction, f, 0.5 * eta, grid)?;
    fine.zip_with(&coarse, |a, b| a * 2.0 - b)
}

/// Max-norm of `(B₁B₂ − B₂B₁)f` over the grid nodes.
pub fn commutator_residual(f: &AnalyticTestFunction, grid: &Arc<Grid>) -> Result<f64> {
    let b12 = apply_b(Direction::X, &apply_b(Direction::Y, f)?)?;
    let b21 = apply_b(Direction::Y, &apply_b(Direction::X, f)?)?;
    sample(&b12, grid).max_abs_diff(&sample(&b21, grid))
}

/// `|(Bᵢf, g) + (f, Bᵢg)|`.
pub fn antisymmetry_residual(
    direction: Direction,
    f: &AnalyticTestFunction,
    g: &AnalyticTestFunction,
    grid: &Arc<Grid>,
) -> Result<f64> {
    pairing_residual(FirstOrderOperator::generator(direction), f, g, grid, ONE)
}

/// `|(Πᵢf, g) − (f, Πᵢg)|`.
pub fn pi_symmetry_residual(
    direction: Direction,
    f: &AnalyticTestFunction,
    g: &AnalyticTestFunction,
    grid: &Arc<Grid>,
) -> Result<f64> {
    pairing_residual(FirstOrderOperator::momentum(direction), f, g, grid, -ONE)
}

fn pairing_residual(
    op: FirstOrderOperator,
    f: &AnalyticTestFunction,
    g: &AnalyticTestFunction,
    grid: &Arc<Grid>,
    sign: Complex64,
) -> Result<f64> {
    let sf = sample(f, grid);
    let sg = sample(g, grid);
    let left = inner_product(&sample(&op.apply(f)?, grid), &sg)?;
    let right = inner_product(&sf, &sample(&op.apply(g)?, grid))?;
    Ok((left + right * sign).norm())
}

/// `|z|²·∂ᵢ(f/|z|²)` at `z ≠ 0`, from the jet of the quotient.
pub fn gauge_form_value(direction: Direction, f: &AnalyticTestFunction, z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::UnremovablePole { re: 0.0, im: 0.0 });
    }
    let quotient = f.jet(z, 1) * Jet::squared_distance(z, ZERO, 1).recip();
    Ok(direction.differentiate(&quotient).value() * z.norm_sqr())
}

/// Max-norm of the forward-difference and Richardson oracle errors against
/// `Bᵢf` for each step of a ladder.
pub fn limit_oracle_errors(
    direction: Direction,
    f: &AnalyticTestFunction,
    etas: &[f64],
    grid: &Arc<Grid>,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let exact = sample(&apply_b(direction, f)?, grid);
    let mut plain = Vec::with_capacity(etas.len());
    let mut extrapolated = Vec::with_capacity(etas.len());
    for &eta in etas {
        plain.push(generator_limit_oracle(direction, f, eta, grid)?.max_abs_diff(&exact)?);
        extrapolated.push(richardson_limit_oracle(direction, f, eta, grid)?.max_abs_diff(&exact)?);
    }
    Ok((plain, extrapolated))
}
