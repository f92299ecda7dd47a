//! Momentum operators for a localized massless particle.
//!
//! The crate follows the construction end to end: the SL(2,ℂ) little group of a
//! light-like momentum ([`group`]), the coset geometry of `H₁\SL(2,ℂ)` with its
//! quasi-invariant cocycle ([`coset`]), the weighted Hilbert space on the plane
//! ([`function_space`]), the induced translation representation
//! ([`induced`]), its generators and the momentum operators ([`momentum`]),
//! and the `P²` eigenproblem with plane-wave states and wavepackets
//! ([`spectral`]).
//!
//! Everything here is pure computation over immutable values. The crate is
//! `no_std` and only needs `alloc`. File formats, randomness and the CLI live in
//! the companion `massless-verify` crate.
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bessel;
pub mod convergence;
pub mod coset;
mod error;
pub mod function_space;
pub mod group;
pub mod induced;
pub mod jet;
pub(crate) mod math;
pub mod momentum;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
