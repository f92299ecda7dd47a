//! SL(2,ℂ) arithmetic, the 4-vector ↔ Hermitian matrix map, and the subgroups
//! used by the construction:
//!
//! * `H₁` — upper-triangular elements `[[λ, μ], [0, λ⁻¹]]`,
//! * `H₂ = T₂` — unipotent translations `[[1, β], [0, 1]]`,
//! * `IS(P)` — the little group of `P = diag(2, 0)`, `[[e^{iθ}, b], [0, e^{-iθ}]]`.

use core::ops::Mul;

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance on `|det − 1|` enforced by [`GroupElement::new`].
pub const DET_TOLERANCE: f64 = 1e-12;

/// Max-norm tolerance for exact algebraic identities and membership predicates.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Mat2::new(ZERO, ZERO, ZERO, ZERO))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// Energy-momentum 4-vector in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl FourVector {
    pub const fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        FourVector { p0, p1, p2, p3 }
    }

    /// The light-like reference momentum `(1, 0, 0, 1)`.
    pub const fn light_like() -> Self {
        FourVector::new(1.0, 0.0, 0.0, 1.0)
    }

    /// `p0² − p1² − p2² − p3²`, i.e. the squared mass.
    pub fn minkowski_norm(&self) -> f64 {
        self.p0 * self.p0 - self.p1 * self.p1 - self.p2 * self.p2 - self.p3 * self.p3
    }
}

/// `[[p0+p3, p1+i·p2], [p1−i·p2, p0−p3]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMomentumMatrix(Mat2);

impl HermitianMomentumMatrix {
    /// Matrix of the reference momentum, `diag(2, 0)`.
    pub fn reference() -> Self {
        vector_to_matrix(FourVector::light_like())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det().re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.0.max_abs_diff(&self.0.adjoint())
    }
}

pub fn vector_to_matrix(p: FourVector) -> HermitianMomentumMatrix {
    HermitianMomentumMatrix(Mat2::new(
        Complex64::new(p.p0 + p.p3, 0.0),
        Complex64::new(p.p1, p.p2),
        Complex64::new(p.p1, -p.p2),
        Complex64::new(p.p0 - p.p3, 0.0),
    ))
}

/// A unit-determinant 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Mat2);

impl GroupElement {
    /// Rejects matrices with `|det − 1| > DET_TOLERANCE`; never renormalizes.
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerance(m, DET_TOLERANCE)
    }

    pub fn with_tolerance(m: Mat2, tolerance: f64) -> Result<Self> {
        let det = m.det();
        if (det - ONE).norm() <= tolerance {
            Ok(GroupElement(m))
        } else {
            Err(Error::DeterminantNotUnit {
                re: det.re,
                im: det.im,
                tolerance,
            })
        }
    }

    pub fn from_entries(
        g11: Complex64,
        g12: Complex64,
        g21: Complex64,
        g22: Complex64,
    ) -> Result<Self> {
        Self::new(Mat2::new(g11, g12, g21, g22))
    }

    // Products and inverses of unit-determinant matrices stay unimodular up to
    // roundoff proportional to the entry size, so they skip the check.
    pub(crate) const fn from_matrix_unchecked(m: Mat2) -> Self {
        GroupElement(m)
    }

    pub const fn identity() -> Self {
        GroupElement(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn g11(&self) -> Complex64 {
        self.0 .0[0][0]
    }

    pub fn g12(&self) -> Complex64 {
        self.0 .0[0][1]
    }

    pub fn g21(&self) -> Complex64 {
        self.0 .0[1][0]
    }

    pub fn g22(&self) -> Complex64 {
        self.0 .0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0.det()
    }

    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        multiply(&self, &rhs)
    }
}

pub fn multiply(g: &GroupElement, h: &GroupElement) -> GroupElement {
    GroupElement(g.0 * h.0)
}

/// `[[d, −b], [−c, a]]`, the inverse of a unit-determinant matrix.
pub fn inverse(g: &GroupElement) -> GroupElement {
    let [[a, b], [c, d]] = g.0 .0;
    GroupElement(Mat2::new(d, -b, -c, a))
}

/// `‖A·P·A† − P‖_max`.
pub fn isotropy_defect(a: &GroupElement, p: &HermitianMomentumMatrix) -> f64 {
    let moved = a.0 * p.0 * a.0.adjoint();
    moved.max_abs_diff(&p.0)
}

pub fn is_isotropy_element(a: &GroupElement, p: &HermitianMomentumMatrix) -> bool {
    isotropy_defect(a, p) <= MEMBERSHIP_TOLERANCE
}

/// `[[e^{iθ}, b], [0, e^{−iθ}]]`.
pub fn make_isotropy(theta: f64, b: Complex64) -> GroupElement {
    let phase = Complex64::from_polar(1.0, theta);
    GroupElement(Mat2::new(phase, b, ZERO, phase.conj()))
}

/// `[[λ, μ], [0, λ⁻¹]]`.
pub fn make_h1(lambda: Complex64, mu: Complex64) -> Result<GroupElement> {
    if lambda == ZERO {
        return Err(Error::DegenerateParameter("H1 diagonal entry lambda = 0"));
    }
    Ok(GroupElement(Mat2::new(lambda, mu, ZERO, lambda.inv())))
}

/// `[[1, β], [0, 1]]`.
pub fn make_h2(beta: Complex64) -> GroupElement {
    GroupElement(Mat2::new(ONE, beta, ZERO, ONE))
}

/// The double-coset representative `d = [[1, 0], [1, 1]]`.
pub fn coset_representative() -> GroupElement {
    GroupElement(Mat2::new(ONE, ZERO, ONE, ONE))
}

/// Distance from `H₁`: the modulus of the lower-left entry.
pub fn h1_defect(g: &GroupElement) -> f64 {
    g.g21().norm()
}

pub fn is_in_h1(g: &GroupElement) -> bool {
    h1_defect(g) <= MEMBERSHIP_TOLERANCE
}

/// Distance from `H₂`: lower-left entry and deviation of the diagonal from 1.
pub fn h2_defect(g: &GroupElement) -> f64 {
    g.g21()
        .norm()
        .max((g.g11() - ONE).norm())
        .max((g.g22() - ONE).norm())
}

pub fn is_in_h2(g: &GroupElement) -> bool {
    h2_defect(g) <= MEMBERSHIP_TOLERANCE
}

/// Membership in `IS(P)` for the reference momentum: `c = 0` and `|a| = 1`.
pub fn is_in_little_group(g: &GroupElement) -> bool {
    is_isotropy_element(g, &HermitianMomentumMatrix::reference())
}
