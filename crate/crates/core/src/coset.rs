//! Coset geometry of `H₁\SL(2,ℂ)`.
//!
//! Right cosets of `H₁` are labelled on the big cell by `z ∈ ℂ`, with
//! representative `[[1, 0], [z, 1]]`. The right action of `g` on labels is the
//! Möbius map `z ↦ (g11·z + g21)/(g12·z + g22)`, which comes straight out of
//! multiplying the representative by `g` and refactoring as `h·[[1, 0], [z′, 1]]`.
//! Its area Jacobian `|g12·z + g22|⁻⁴` is the cocycle of the quasi-invariant
//! measure `dx dy` on the labels.

use num_complex::Complex64;

use crate::group::{coset_representative, multiply, GroupElement, Mat2};
use crate::{Error, Result};

/// Denominators below this modulus are treated as the measure-zero coset at infinity.
pub const BIG_CELL_CUTOFF: f64 = 1e-14;

/// `|g21|` at or below this classifies as the identity double coset.
pub const CLASSIFY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Big-cell coordinate of a right coset `H₁·[[1, 0], [z, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosetLabel(pub Complex64);

impl CosetLabel {
    pub fn new(z: Complex64) -> Self {
        CosetLabel(z)
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    /// The representative `[[1, 0], [z, 1]]`.
    pub fn embed(&self) -> GroupElement {
        GroupElement::from_matrix_unchecked(Mat2::new(ONE, ZERO, self.0, ONE))
    }
}

impl From<Complex64> for CosetLabel {
    fn from(z: Complex64) -> Self {
        CosetLabel(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleCosetClass {
    /// `H₁·e·H₂ = H₁`, the measure-zero class.
    IdentityCoset,
    /// `H₁·d·H₂` with `d = [[1, 0], [1, 1]]`, dense in SL(2,ℂ).
    GenericCoset,
}

/// Result of [`classify_double_coset`]. For the generic class the witness
/// factorization `g = h1·d·h2` is included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub class: DoubleCosetClass,
    pub witness: Option<DoubleCosetWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleCosetWitness {
    pub h1: GroupElement,
    pub representative: GroupElement,
    pub h2: GroupElement,
}

impl DoubleCosetWitness {
    pub fn product(&self) -> GroupElement {
        multiply(&multiply(&self.h1, &self.representative), &self.h2)
    }
}

/// Value of the `λ_ρ` cocycle; always strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CocycleValue(f64);

impl CocycleValue {
    pub fn value(&self) -> f64 {
        self.0
    }
}

fn big_cell_denominator(z: Complex64, g: &GroupElement) -> Result<Complex64> {
    let den = g.g12() * z + g.g22();
    let modulus = den.norm();
    if modulus < BIG_CELL_CUTOFF {
        Err(Error::BigCellViolation(modulus))
    } else {
        Ok(den)
    }
}

/// Right action of `g` on a coset label.
///
/// Returns `(z′, h)` with `embed(z)·g = h·embed(z′)` and `h ∈ H₁`.
pub fn coset_action(z: CosetLabel, g: &GroupElement) -> Result<(CosetLabel, GroupElement)> {
    let den = big_cell_denominator(z.0, g)?;
    let z_out = (g.g11() * z.0 + g.g21()) / den;
    let h = GroupElement::from_matrix_unchecked(Mat2::new(den.inv(), g.g12(), ZERO, den));
    Ok((CosetLabel(z_out), h))
}

/// The `H₂` parameter linking two nonzero labels: `β = 1/z − 1/z′`, so that
/// `z′ = z/(1 − βz)`.
///
/// In terms of the right action this reads `z·make_h2(−β) = z′`, or
/// equivalently `z′·make_h2(β) = z`.
pub fn double_coset_link(z: Complex64, z_prime: Complex64) -> Result<Complex64> {
    if z == ZERO || z_prime == ZERO {
        return Err(Error::ZeroLabel);
    }
    Ok(z.inv() - z_prime.inv())
}

/// Decides which of the two `H₁ \ SL(2,ℂ) / H₂` double cosets contains `g`.
pub fn classify_double_coset(g: &GroupElement) -> Classification {
    let g21 = g.g21();
    if g21.norm() <= CLASSIFY_TOLERANCE {
        return Classification {
            class: DoubleCosetClass::IdentityCoset,
            witness: None,
        };
    }
    // h1·d·h2 = [[λ+μ, (λ+μ)β + μ], [λ⁻¹, (1+β)λ⁻¹]]
    let lambda = g21.inv();
    let beta = g.g22() / g21 - ONE;
    let mu = g.g11() - lambda;
    let h1 = GroupElement::from_matrix_unchecked(Mat2::new(lambda, mu, ZERO, g21));
    Classification {
        class: DoubleCosetClass::GenericCoset,
        witness: Some(DoubleCosetWitness {
            h1,
            representative: coset_representative(),
            h2: crate::group::make_h2(beta),
        }),
    }
}

/// Splits `g = h·embed(z)` with `h ∈ H₁`: `z = g21/g22`, `h = [[1/g22, g12], [0, g22]]`.
pub fn decompose_h1z(g: &GroupElement) -> Result<(GroupElement, CosetLabel)> {
    let g22 = g.g22();
    let modulus = g22.norm();
    if modulus < BIG_CELL_CUTOFF {
        return Err(Error::BigCellViolation(modulus));
    }
    let h = GroupElement::from_matrix_unchecked(Mat2::new(g22.inv(), g.g12(), ZERO, g22));
    Ok((h, CosetLabel(g.g21() / g22)))
}

/// `λ_ρ(H₁z, g) = |z·g12 + g22|⁻⁴`.
pub fn cocycle(z: CosetLabel, g: &GroupElement) -> Result<CocycleValue> {
    let den = big_cell_denominator(z.0, g)?;
    let sq = den.norm_sqr();
    Ok(CocycleValue(1.0 / (sq * sq)))
}

/// Central-difference area Jacobian of `(x, y) ↦ (x′, y′)` under [`coset_action`].
pub fn numeric_jacobian(z: CosetLabel, g: &GroupElement, step: f64) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("finite-difference step must be positive"));
    }
    let image = |w: Complex64| coset_action(CosetLabel(w), g).map(|(out, _)| out.0);
    let hx = Complex64::new(step, 0.0);
    let hy = Complex64::new(0.0, step);
    let d_dx = (image(z.0 + hx)? - image(z.0 - hx)?) / (2.0 * step);
    let d_dy = (image(z.0 + hy)? - image(z.0 - hy)?) / (2.0 * step);
    Ok(d_dx.re * d_dy.im - d_dy.re * d_dx.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{inverse, is_in_h1, make_h1, make_h2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_element(a: f64, b: f64, cc: f64, d: f64) -> GroupElement {
        GroupElement::new(Mat2::from_real(a, b, cc, d)).unwrap()
    }

    #[test]
    fn action_examples() {
        let z = CosetLabel(c(0.7, -1.3));
        let (out, h) = coset_action(z, &GroupElement::identity()).unwrap();
        assert_eq!(out, z);
        assert_eq!(h, GroupElement::identity());

        let (out, _) = coset_action(CosetLabel(c(0.5, 0.0)), &make_h2(ONE)).unwrap();
        assert!((out.0 - c(1.0 / 3.0, 0.0)).norm() < 1e-15);

        let d = coset_representative();
        let (out, h) = coset_action(CosetLabel(ONE), &d).unwrap();
        assert_eq!(out.0, c(2.0, 0.0));
        assert_eq!(h, GroupElement::identity());
    }

    #[test]
    fn action_factorization_certifies_itself() {
        let g = real_element(2.0, 1.0, 3.0, 2.0);
        let z = CosetLabel(c(0.3, 0.4));
        let (out, h) = coset_action(z, &g).unwrap();
        assert!(is_in_h1(&h));
        let lhs = multiply(&z.embed(), &g);
        let rhs = multiply(&h, &out.embed());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn big_cell_violation() {
        // g12·z + g22 = 0 at z = −1 for g = [[1,1],[0,1]].
        let err = coset_action(CosetLabel(c(-1.0, 0.0)), &make_h2(ONE)).unwrap_err();
        assert!(matches!(err, Error::BigCellViolation(_)));
        assert!(cocycle(CosetLabel(c(-1.0, 0.0)), &make_h2(ONE)).is_err());
    }

    #[test]
    fn link_examples() {
        assert_eq!(double_coset_link(ONE, ONE).unwrap(), ZERO);
        let beta = double_coset_link(c(0.5, 0.0), ONE).unwrap();
        assert_eq!(beta, ONE);
        assert_eq!(c(0.5, 0.0) / (ONE - beta * c(0.5, 0.0)), ONE);

        let z = c(0.0, 2.0);
        let beta = double_coset_link(z, c(-1.0, 0.0)).unwrap();
        assert!((beta - c(1.0, -0.5)).norm() < 1e-15);
        assert!((z / (ONE - beta * z) - c(-1.0, 0.0)).norm() < 1e-12);

        assert_eq!(double_coset_link(ZERO, ONE), Err(Error::ZeroLabel));
        assert_eq!(double_coset_link(ONE, ZERO), Err(Error::ZeroLabel));
    }

    #[test]
    fn link_orientation_under_right_action() {
        let (z, zp) = (c(0.2, 1.1), c(-0.7, 0.4));
        let beta = double_coset_link(z, zp).unwrap();
        let (forward, _) = coset_action(CosetLabel(z), &make_h2(-beta)).unwrap();
        assert!((forward.0 - zp).norm() < 1e-12);
        let (back, _) = coset_action(CosetLabel(zp), &make_h2(beta)).unwrap();
        assert!((back.0 - z).norm() < 1e-12);
    }

    #[test]
    fn classification_examples() {
        let d = coset_representative();
        let cls = classify_double_coset(&d);
        assert_eq!(cls.class, DoubleCosetClass::GenericCoset);
        let w = cls.witness.unwrap();
        assert!(w.h1.max_abs_diff(&GroupElement::identity()) < 1e-15);
        assert!(w.h2.max_abs_diff(&GroupElement::identity()) < 1e-15);

        let upper = make_h1(c(2.0, 0.0), ONE).unwrap();
        assert_eq!(
            classify_double_coset(&upper).class,
            DoubleCosetClass::IdentityCoset
        );

        let g = real_element(1.0, 1.0, 1.0, 2.0);
        let cls = classify_double_coset(&g);
        assert_eq!(cls.class, DoubleCosetClass::GenericCoset);
        let w = cls.witness.unwrap();
        // Unique solution of h1·d·h2 = g: h1 = e, h2 = make_h2(1).
        assert!(w.h1.max_abs_diff(&GroupElement::identity()) < 1e-15);
        assert!(w.h2.max_abs_diff(&make_h2(ONE)) < 1e-15);
        assert!(w.product().max_abs_diff(&g) < 1e-10);
    }

    #[test]
    fn decomposition_examples() {
        let k = real_element(1.0, 1.0, 1.0, 2.0);
        let (h, z) = decompose_h1z(&k).unwrap();
        assert_eq!(z.0, c(0.5, 0.0));
        assert_eq!(*h.matrix(), Mat2::from_real(0.5, 1.0, 0.0, 2.0));
        assert!(multiply(&h, &z.embed()).max_abs_diff(&k) < 1e-12);

        let (h, z) = decompose_h1z(&GroupElement::identity()).unwrap();
        assert_eq!(z.0, ZERO);
        assert_eq!(h, GroupElement::identity());

        let lower = CosetLabel(c(3.0, -1.0)).embed();
        let (h, z) = decompose_h1z(&lower).unwrap();
        assert_eq!(z.0, c(3.0, -1.0));
        assert_eq!(h, GroupElement::identity());

        let singular = real_element(0.0, 1.0, -1.0, 0.0);
        assert!(matches!(
            decompose_h1z(&singular),
            Err(Error::BigCellViolation(_))
        ));
    }

    #[test]
    fn cocycle_examples() {
        let z = CosetLabel(c(-0.4, 2.5));
        assert_eq!(cocycle(z, &GroupElement::identity()).unwrap().value(), 1.0);
        assert_eq!(
            cocycle(CosetLabel(ONE), &make_h2(ONE)).unwrap().value(),
            0.0625
        );
        // Label of d·[[1, z′], [0, 1]] at z′ = 1 is 1/(1 + z′) = 1/2.
        let k = multiply(&coset_representative(), &make_h2(ONE));
        let (_, label) = decompose_h1z(&k).unwrap();
        assert_eq!(label.0, c(0.5, 0.0));
        assert_eq!(
            cocycle(label, &make_h2(c(2.0, 0.0))).unwrap().value(),
            0.0625
        );
    }

    #[test]
    fn numeric_jacobian_examples() {
        let j = numeric_jacobian(CosetLabel(c(0.3, 0.2)), &GroupElement::identity(), 1e-3).unwrap();
        assert!((j - 1.0).abs() < 1e-12);
        let j = numeric_jacobian(CosetLabel(ONE), &make_h2(ONE), 1e-4).unwrap();
        assert!((j - 0.0625).abs() < 1e-7);
        assert!(numeric_jacobian(CosetLabel(ONE), &make_h2(ONE), 0.0).is_err());
    }

    #[test]
    fn inversion_map_is_a_coset_action() {
        // z′ ↦ 1/(1 + z′) is the right action of [[0, i], [i, i]], with
        // Jacobian |1 + z′|⁻⁴.
        let i = c(0.0, 1.0);
        let g = GroupElement::from_entries(ZERO, i, i, i).unwrap();
        let zp = c(0.6, -0.8);
        let (out, _) = coset_action(CosetLabel(zp), &g).unwrap();
        assert!((out.0 - (ONE + zp).inv()).norm() < 1e-15);
        let expected = 1.0 / (ONE + zp).norm_sqr().powi(2);
        assert!((cocycle(CosetLabel(zp), &g).unwrap().value() - expected).abs() < 1e-14);
    }

    #[test]
    fn stabilizer_of_representative_is_trivial() {
        let d = coset_representative();
        assert!(is_in_h1(&(inverse(&d) * make_h2(ZERO) * d)));
        assert!(!is_in_h1(&(inverse(&d) * make_h2(c(1e-6, 0.0)) * d)));
    }
}
