//! The Hilbert space of the induced representation.
//!
//! Functions live on the plane of shifted coset coordinates with inner product
//! `(f₁, f₂) = ∫∫ conj(f₁)·f₂ dx dy / |z|⁴`. Functions are represented
//! analytically ([`AnalyticTestFunction`], exact partials through jets) and
//! discretely on a polar annulus grid ([`GridFunction`]).

mod grid;
mod probe;

pub use grid::{
    cartesian_unshifted_norm_sq, gauss_legendre, inner_product, norm, quadrature_self_test, reference_integral,
    reference_probe, relative_quadrature_error, sample, Grid, GridFunction, GridSpec,
};
pub use probe::{
    annular_bump, annular_plateau, make_gaussian_probe, AnalyticTestFunction, Field, Gauge,
    SharedField, Support,
};
