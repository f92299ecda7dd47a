//! Verification suite, file formats and command-line front end for
//! [`massless_core`].

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod export;
pub mod report;
pub mod suite;
