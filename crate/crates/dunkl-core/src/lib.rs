//! One-dimensional Dunkl analysis on the weighted line.
//!
//! Everything here is built on the measure `|x|^{2mu+1} dx` and the
//! differential-difference operator
//!
//! ```text
//! T_mu f(x) = f'(x) + (mu + 1/2) * (f(x) - f(-x)) / x
//! ```
//!
//! with `mu >= -1/2`. The crate provides
//!
//! * [`special`] — the Gamma function, the normalized spherical Bessel
//!   function `j_mu` and the Dunkl kernel `E_mu` for complex arguments,
//! * [`quadrature`] — deterministic composite Gauss–Legendre rules for the
//!   weighted measure on a truncated line,
//! * [`operators`] — `T_mu` itself and its algebraic identities,
//! * [`transforms`] — the Dunkl transform `D_mu` and the fractional family
//!   `D_mu^alpha`, including the chirp factorization and exact branches at
//!   integer multiples of pi,
//! * [`functionals`] — weighted norms, moments, dispersions, covariance,
//!   absolute covariance and the parity term `A`,
//! * [`bounds`] — evaluators for the four uncertainty lower bounds,
//! * [`extremals`] — the Gaussian-kernel families attaining equality.
//!
//! The crate is `no_std` (alloc only). All scalar math routes through
//! `libm`, so identical inputs produce identical bits on every target; the
//! companion CLI crate carries IO, configuration and report formats.

#![cfg_attr(not(test), no_std)]
// validation guards are written `!(x > 0.0)` so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod extremals;
pub mod functionals;
pub(crate) mod math;
pub mod operators;
pub mod quadrature;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use special::{MuParam, SeriesControl};

/// Complex double, the scalar type of every sampled quantity.
pub type C64 = num_complex::Complex<f64>;
