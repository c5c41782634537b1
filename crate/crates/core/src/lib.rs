//! Spinor bilinears, Lounesto classification and the spinor-plane built on
//! RIM spinors.

// `!(x > t)` is used on purpose so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tensor code reads closest to index notation with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod bilinear;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod homotopy;
pub mod lounesto;
pub mod mdo;
pub mod plane;
pub mod rim;
pub mod rng;
pub mod spinor;
pub mod suites;

pub use error::{Error, Result};
