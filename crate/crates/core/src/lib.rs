//! High-precision numerics for the asymptotic expansion of the colored Jones
//! polynomial of the figure-eight knot, compared against SL(2,ℂ)
//! Chern–Simons data (classical action, volume, torsion), together with the
//! log-term rule engine and the exact Fox-calculus algebra behind it.
//!
//! Module map:
//!
//! - [`numkit`]: precision contract, log-domain complex values, Lobachevsky
//!   function, Gauss–Legendre quadrature, log-affine least squares.
//! - [`knotlang`]: knot-expression and braid-word parsers, Wirtinger
//!   presentations of braid closures.
//! - [`alexander`]: Laurent polynomials, Fox matrices, Alexander polynomials.
//! - [`jones`]: colored Jones evaluation at points on the unit circle.
//! - [`geometry`]: A-polynomial branch, actions `S′` and `S`, volume,
//!   Chern–Simons invariant, torsion.
//! - [`deltacalc`]: the log-term coefficient from cohomological rules.
//! - [`asym`]: residuals, sweeps and coefficient fits.
//! - [`cli`]: the command-line front end used by the `cjones` binary.

pub mod alexander;
pub mod asym;
pub mod cli;
pub mod deltacalc;
mod error;
pub mod geometry;
pub mod jones;
pub mod knotlang;
pub mod numkit;

pub use error::{Error, Result};
pub use numkit::{LogComplex, PrecisionCfg};
