//! Precision arithmetic, special functions, quadrature and regression shared
//! by the numeric modules.
//!
//! Everything here runs on MPFR floats via `rug`; the working precision is
//! derived from a [`PrecisionCfg`].

mod fit;
mod lobachevsky;
mod logc;
mod prec;
mod quad;

pub use fit::{fit_log_affine, fit_log_affine_with, AffineFit, FitModel};
pub use lobachevsky::{lobachevsky, lobachevsky_f64, vol_fig8};
pub use logc::{log_sum_exp, LogComplex};
pub use prec::PrecisionCfg;
pub use quad::{gauss_legendre_nodes, integrate_segment};
