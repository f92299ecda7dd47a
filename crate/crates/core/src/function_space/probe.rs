use alloc::sync::Arc;
use core::fmt;

use num_complex::Complex64;

use crate::jet::Jet;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Gauge centers closer than this are considered equal.
const CENTER_TOLERANCE: f64 = 1e-14;

/// Something that can be expanded as a [`Jet`] at any point of the plane.
pub trait Field: Send + Sync {
    fn jet(&self, z: Complex64, order: usize) -> Jet;
}

impl<F> Field for F
where
    F: Fn(Complex64, usize) -> Jet + Send + Sync,
{
    fn jet(&self, z: Complex64, order: usize) -> Jet {
        self(z, order)
    }
}

pub type SharedField = Arc<dyn Field>;

/// Records that `f(z) = |z − center|²·ψ(z)` with smooth `ψ` (the reduced part).
#[derive(Clone)]
pub struct Gauge {
    center: Complex64,
    reduced: SharedField,
}

impl Gauge {
    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn reduced(&self) -> &SharedField {
        &self.reduced
    }

    pub fn reduced_jet(&self, z: Complex64, order: usize) -> Jet {
        self.reduced.jet(z, order)
    }
}

/// Where a test function is effectively nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Zero,
    /// Gaussian envelope `exp(−|z − center|²/width²)`.
    Decaying { center: Complex64, width: f64 },
    /// Identically zero outside `inner ≤ |z − center| ≤ outer`.
    Annulus {
        center: Complex64,
        inner: f64,
        outer: f64,
    },
    Unbounded,
}

impl Support {
    pub fn translated(self, beta: Complex64) -> Self {
        match self {
            Support::Decaying { center, width } => Support::Decaying {
                center: center - beta,
                width,
            },
            Support::Annulus {
                center,
                inner,
                outer,
            } => Support::Annulus {
                center: center - beta,
                inner,
                outer,
            },
            other => other,
        }
    }

    /// Radius about the origin beyond which the function is below
    /// `exp(−widths²)` of its envelope, or `None` when unbounded.
    pub fn extent(&self, widths: f64) -> Option<f64> {
        match *self {
            Support::Zero => Some(0.0),
            Support::Decaying { center, width } => Some(center.norm() + widths * width),
            Support::Annulus { center, outer, .. } => Some(center.norm() + outer),
            Support::Unbounded => None,
        }
    }
}

/// A complex function on the plane with exact partial derivatives.
#[derive(Clone)]
pub struct AnalyticTestFunction {
    field: SharedField,
    gauge: Option<Gauge>,
    support: Support,
}

impl fmt::Debug for AnalyticTestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticTestFunction")
            .field("gauge_center", &self.gauge.as_ref().map(|g| g.center))
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl AnalyticTestFunction {
    /// A function with no known quadratic zero.
    pub fn from_field(field: impl Field + 'static, support: Support) -> Self {
        AnalyticTestFunction {
            field: Arc::new(field),
            gauge: None,
            support,
        }
    }

    pub fn from_shared(
        field: SharedField,
        gauge_center: Option<(Complex64, SharedField)>,
        support: Support,
    ) -> Self {
        AnalyticTestFunction {
            field,
            gauge: gauge_center.map(|(center, reduced)| Gauge { center, reduced }),
            support,
        }
    }

    /// `f(z) = |z − center|²·ψ(z)`.
    pub fn gauged(center: Complex64, reduced: impl Field + 'static, support: Support) -> Self {
        Self::gauged_shared(center, Arc::new(reduced), support)
    }

    pub fn gauged_shared(center: Complex64, reduced: SharedField, support: Support) -> Self {
        let inner = reduced.clone();
        let field = move |z: Complex64, order: usize| {
            Jet::squared_distance(z, center, order) * inner.jet(z, order)
        };
        AnalyticTestFunction {
            field: Arc::new(field),
            gauge: Some(Gauge { center, reduced }),
            support,
        }
    }

    pub fn zero() -> Self {
        let zero = |_: Complex64, order: usize| Jet::zero(order);
        AnalyticTestFunction {
            field: Arc::new(zero),
            gauge: Some(Gauge {
                center: ZERO,
                reduced: Arc::new(zero),
            }),
            support: Support::Zero,
        }
    }

    pub fn constant(value: Complex64) -> Self {
        Self::from_field(
            move |_: Complex64, order: usize| Jet::constant(value, order),
            Support::Unbounded,
        )
    }

    /// `f(z) = z`.
    pub fn coordinate() -> Self {
        Self::from_field(
            |z: Complex64, order: usize| {
                let (x, y) = Jet::coordinates(z, order);
                x + y * Complex64::i()
            },
            Support::Unbounded,
        )
    }

    /// `f(z) = |z|²`, the gauge factor itself.
    pub fn radial_square() -> Self {
        Self::gauged(
            ZERO,
            |_: Complex64, order: usize| Jet::constant(ONE, order),
            Support::Unbounded,
        )
    }

    pub fn field(&self) -> &SharedField {
        &self.field
    }

    pub fn gauge(&self) -> Option<&Gauge> {
        self.gauge.as_ref()
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// True when `f` carries a quadratic zero at `point`, so multipliers with a
    /// `|z − point|⁻²` pole stay finite on it.
    pub fn vanishes_quadratically_at(&self, point: Complex64) -> bool {
        self.support == Support::Zero
            || self
                .gauge
                .as_ref()
                .is_some_and(|g| (g.center - point).norm() <= CENTER_TOLERANCE)
    }

    /// Reduced part at `point`, or [`Error::UnremovablePole`] if `f` has no
    /// quadratic zero there.
    pub fn require_gauge_at(&self, point: Complex64) -> Result<&Gauge> {
        match &self.gauge {
            Some(g) if (g.center - point).norm() <= CENTER_TOLERANCE => Ok(g),
            _ => Err(Error::UnremovablePole {
                re: point.re,
                im: point.im,
            }),
        }
    }

    pub fn jet(&self, z: Complex64, order: usize) -> Jet {
        self.field.jet(z, order)
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 0).value()
    }

    pub fn dx(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 1).dx()
    }

    pub fn dy(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 1).dy()
    }

    pub fn dxx(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 2).dxx()
    }

    pub fn dxy(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 2).dxy()
    }

    pub fn dyy(&self, z: Complex64) -> Complex64 {
        self.field.jet(z, 2).dyy()
    }

    /// `z ↦ f(z + β)`.
    pub fn translate(&self, beta: Complex64) -> Self {
        let inner = self.field.clone();
        let field = move |z: Complex64, order: usize| inner.jet(z + beta, order);
        let gauge = self.gauge.as_ref().map(|g| {
            let reduced = g.reduced.clone();
            Gauge {
                center: g.center - beta,
                reduced: Arc::new(move |z: Complex64, order: usize| reduced.jet(z + beta, order)),
            }
        });
        AnalyticTestFunction {
            field: Arc::new(field),
            gauge,
            support: self.support.translated(beta),
        }
    }

    /// Same gauge and support, different evaluation of the full field. The
    /// caller guarantees both describe the same function.
    pub(crate) fn with_field(mut self, field: SharedField) -> Self {
        self.field = field;
        self
    }

    /// `f + g`. The sum keeps a gauge only when both summands share its center.
    pub fn sum(&self, other: &AnalyticTestFunction) -> Self {
        let (a, b) = (self.field.clone(), other.field.clone());
        let field = move |z: Complex64, order: usize| a.jet(z, order) + b.jet(z, order);
        let gauge = match (&self.gauge, &other.gauge) {
            (Some(ga), Some(gb)) if (ga.center - gb.center).norm() <= CENTER_TOLERANCE => {
                let (ra, rb) = (ga.reduced.clone(), gb.reduced.clone());
                Some(Gauge {
                    center: ga.center,
                    reduced: Arc::new(move |z: Complex64, order: usize| {
                        ra.jet(z, order) + rb.jet(z, order)
                    }),
                })
            }
            _ => None,
        };
        let support = match (self.support, other.support) {
            (Support::Zero, s) | (s, Support::Zero) => s,
            (a, b) if a == b => a,
            _ => Support::Unbounded,
        };
        AnalyticTestFunction {
            field: Arc::new(field),
            gauge,
            support,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let inner = self.field.clone();
        let gauge = self.gauge.as_ref().map(|g| {
            let reduced = g.reduced.clone();
            Gauge {
                center: g.center,
                reduced: Arc::new(move |z: Complex64, order: usize| reduced.jet(z, order) * s),
            }
        });
        AnalyticTestFunction {
            field: Arc::new(move |z: Complex64, order: usize| inner.jet(z, order) * s),
            gauge,
            support: if s == ZERO {
                Support::Zero
            } else {
                self.support
            },
        }
    }
}

fn angular_phase(z: Complex64, m: i32, order: usize) -> Jet {
    if m == 0 || z == ZERO {
        return Jet::constant(ONE, order);
    }
    let (x, y) = Jet::coordinates(z, order);
    let r = (x * x + y * y).sqrt();
    let unit = (x + y * Complex64::i()) * r.recip();
    let phase = unit.powi(m.unsigned_abs());
    if m < 0 {
        phase.conj()
    } else {
        phase
    }
}

/// Probe `|z|²·e^{imθ}·exp(−|z − center|²/width²)`.
///
/// The `|z|²` prefactor makes the probe vanish quadratically at the origin,
/// where the `|z|⁻⁴` weight and the generator multipliers are singular.
pub fn make_gaussian_probe(
    center: Complex64,
    width: f64,
    angular_index: i32,
) -> Result<AnalyticTestFunction> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::InvalidParameter("probe width must be positive"));
    }
    let inv_w2 = 1.0 / (width * width);
    let reduced = move |z: Complex64, order: usize| {
        let envelope = (-(Jet::squared_distance(z, center, order) * inv_w2)).exp();
        angular_phase(z, angular_index, order) * envelope
    };
    Ok(AnalyticTestFunction::gauged(
        ZERO,
        reduced,
        Support::Decaying { center, width },
    ))
}

// C^∞ step: 0 for t ≤ 0, 1 for t ≥ 1.
fn smooth_step(t: Jet) -> Jet {
    let t0 = t.value().re;
    let order = t.order();
    if t0 <= 0.0 {
        return Jet::zero(order);
    }
    if t0 >= 1.0 {
        return Jet::constant(ONE, order);
    }
    let h = |u: Jet| (-u.recip()).exp();
    let rise = h(t);
    let fall = h(-t + ONE);
    rise / (rise + fall)
}

fn check_annulus(inner: f64, outer: f64, ramp: f64) -> Result<()> {
    if !(ramp > 0.0) || !(inner - ramp > 0.0) || !(outer > inner) {
        return Err(Error::InvalidParameter(
            "annulus needs 0 < inner - ramp, inner < outer, ramp > 0",
        ));
    }
    Ok(())
}

fn bump_jet(z: Complex64, order: usize, inner: f64, outer: f64, ramp: f64) -> Jet {
    let radius = z.norm();
    if radius <= inner - ramp || radius >= outer + ramp {
        return Jet::zero(order);
    }
    let (x, y) = Jet::coordinates(z, order);
    let r = (x * x + y * y).sqrt();
    let up = smooth_step((r + Complex64::new(ramp - inner, 0.0)) * (1.0 / ramp));
    let down = smooth_step((-r + Complex64::new(outer + ramp, 0.0)) * (1.0 / ramp));
    up * down
}

/// Radial bump equal to 1 on `inner ≤ |z| ≤ outer`, with smooth ramps of width
/// `ramp` on either side and compact support away from the origin.
pub fn annular_bump(inner: f64, outer: f64, ramp: f64) -> Result<AnalyticTestFunction> {
    check_annulus(inner, outer, ramp)?;
    let field = move |z: Complex64, order: usize| bump_jet(z, order, inner, outer, ramp);
    let reduced = move |z: Complex64, order: usize| {
        let b = bump_jet(z, order, inner, outer, ramp);
        if b.is_zero() {
            b
        } else {
            b / Jet::squared_distance(z, ZERO, order)
        }
    };
    Ok(AnalyticTestFunction::from_shared(
        Arc::new(field),
        Some((ZERO, Arc::new(reduced))),
        Support::Annulus {
            center: ZERO,
            inner: inner - ramp,
            outer: outer + ramp,
        },
    ))
}

/// `|z|²` times [`annular_bump`]: equal to `|z|²` on the plateau.
pub fn annular_plateau(inner: f64, outer: f64, ramp: f64) -> Result<AnalyticTestFunction> {
    check_annulus(inner, outer, ramp)?;
    Ok(AnalyticTestFunction::gauged(
        ZERO,
        move |z: Complex64, order: usize| bump_jet(z, order, inner, outer, ramp),
        Support::Annulus {
            center: ZERO,
            inner: inner - ramp,
            outer: outer + ramp,
        },
    ))
}
