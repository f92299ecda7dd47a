//! The translation representation `U(β)` of `H₂` on the weighted space, in
//! shifted coordinates: `(U(β)f)(z) = |z/(z+β)|²·f(z+β)`.

use alloc::sync::Arc;

use num_complex::Complex64;

use crate::coset::{cocycle, coset_action, decompose_h1z, CosetLabel};
use crate::function_space::AnalyticTestFunction;
use crate::group::{coset_representative, make_h2};
use crate::Result;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// An element `β = β₁ + iβ₂` of the translation subgroup `H₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationParameter(pub Complex64);

impl TranslationParameter {
    pub fn new(beta: Complex64) -> Self {
        TranslationParameter(beta)
    }

    pub fn beta(&self) -> Complex64 {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

impl From<Complex64> for TranslationParameter {
    fn from(beta: Complex64) -> Self {
        TranslationParameter(beta)
    }
}

/// `U(β)f`.
///
/// With `f = |z|²ψ` the multiplier's pole cancels exactly and the result is
/// `|z|²·ψ(z+β)`, again gauged at the origin.
pub fn apply_u(beta: TranslationParameter, f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    let gauge = f.require_gauge_at(ZERO)?;
    let b = beta.0;
    let reduced = gauge.reduced().clone();
    let shifted = move |z: Complex64, order: usize| reduced.jet(z + b, order);
    Ok(AnalyticTestFunction::gauged(
        ZERO,
        shifted,
        f.support().translated(b),
    ))
}

/// Evaluates `U(β)f` from the cocycle of the right action, in unshifted
/// coordinates `z′ = z − 1`.
///
/// The label of `z′` in `H₁\SL(2,ℂ)` comes from splitting `d·h₂(z′)`, and the
/// unitarizing factor is the square root of the cocycle of `h₂(β)` there.
#[derive(Debug, Clone)]
pub struct CocycleAction {
    beta: Complex64,
    f: AnalyticTestFunction,
}

impl CocycleAction {
    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `√λ_ρ` at the unshifted point `z′`; equals `|(1+z′)/(1+z′+β)|²`.
    pub fn multiplier_unshifted(&self, z_unshifted: Complex64) -> Result<f64> {
        let label = self.label(z_unshifted)?;
        Ok(num_traits::Float::sqrt(cocycle(label, &make_h2(self.beta))?.value()))
    }

    /// `(U(β)f)` at a shifted point.
    pub fn value(&self, z_shifted: Complex64) -> Result<Complex64> {
        let z_unshifted = z_shifted - ONE;
        let label = self.label(z_unshifted)?;
        let g = make_h2(self.beta);
        let root = num_traits::Float::sqrt(cocycle(label, &g)?.value());
        // The image label is 1/(1 + z″) for the translated unshifted point z″.
        let (image, _) = coset_action(label, &g)?;
        let target_shifted = image.z().inv();
        Ok(self.f.value(target_shifted) * root)
    }

    fn label(&self, z_unshifted: Complex64) -> Result<CosetLabel> {
        let element = coset_representative() * make_h2(z_unshifted);
        Ok(decompose_h1z(&element)?.1)
    }
}

/// The cocycle-built counterpart of [`apply_u`]. Requires the same gauge.
pub fn induced_action_from_cocycle(
    beta: TranslationParameter,
    f: &AnalyticTestFunction,
) -> Result<CocycleAction> {
    f.require_gauge_at(ZERO)?;
    Ok(CocycleAction {
        beta: beta.0,
        f: f.clone(),
    })
}

/// `(Vf)(z) = f(z)/|z|²`, the map onto plain `L²(ℝ²)`.
pub fn intertwiner_v(f: &AnalyticTestFunction) -> Result<AnalyticTestFunction> {
    let gauge = f.require_gauge_at(ZERO)?;
    let reduced = gauge.reduced().clone();
    Ok(AnalyticTestFunction::from_shared(
        Arc::clone(&reduced),
        None,
        f.support(),
    ))
}

/// `(T(β)f)(z) = f(z+β)`.
pub fn regular_translation(beta: TranslationParameter, f: &AnalyticTestFunction) -> AnalyticTestFunction {
    f.translate(beta.0)
}
