//! Numerics for the Dirichlet generating function
//!
//! ```text
//! D(s) = Σ a_n n^{-s},   φ(q) = Π (1 - q^n) = Σ a_n q^n,
//! ```
//!
//! whose coefficients `a_n ∈ {-1, 0, 1}` are supported on the generalized
//! pentagonal numbers `(3m² ± m)/2`.
//!
//! The crate provides several independent routes to the entire continuation
//! `D*(s)`:
//!
//! * a Bromwich-type line integral `(1/2πi) ∫ F(z) u(z)^{-s} dz` along
//!   `Re z = 0` ([`dgf::dstar_integral`]),
//! * the pentagonal Dirichlet series with alternating-series acceleration
//!   ([`dgf::d_series`]),
//! * a Mellin transform of `φ(e^{-t}) - 1` ([`dgf::d_mellin`]),
//! * an exact finite sum at positive integers built from Bernoulli and
//!   Glaisher numbers ([`dgf::d_explicit`]), checked by a residue oracle,
//!
//! together with Perron partial sums, Hankel-contour representations of the
//! Euler function and the Dedekind eta function, and a zero finder for the
//! critical strip.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accel;
pub mod contour;
pub mod dgf;
pub mod error;
pub mod gauss;
pub mod kernel;
pub mod perron;
pub mod qfunc;
pub mod specialnum;
pub mod zeros;

pub use contour::{EvalResult, Method};
pub use error::{Error, Result};
pub use num_complex::Complex64;
