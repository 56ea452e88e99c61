//! Colored Jones polynomials at `q = exp(2πi·r/N)`, evaluated in the log
//! domain.
//!
//! The half-integer power convention is `q^{1/2} = exp(πi·r/N)`, so every
//! difference `q^{a/2} − q^{−a/2}` equals `2i·sin(π·r·a/N)`. All values
//! produced here are therefore real; they are still returned as
//! [`LogComplex`] because their magnitudes leave the `f64` range long before
//! `N = 2000`.
//!
//! `r` is taken to be exactly the binary value of the `f64` passed in. Sines
//! of exact integer multiples of π are detected and returned as exact zeros.

use rug::Float;

use crate::error::{Error, Result};
use crate::knotlang::{Atom, KnotExpr};
use crate::numkit::{log_sum_exp, LogComplex, PrecisionCfg};

/// Color `N` and the ratio `r = N/k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    n: u64,
    r: f64,
}

impl EvalPoint {
    pub fn new(n: u64, r: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("the color N must be at least 1".into()));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("r must be positive and finite, got {r}")));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The level `k = N/r`.
    pub fn k(&self) -> f64 {
        self.n as f64 / self.r
    }
}

/// `sin(π·r·a/N)`, exactly zero when `r·a/N` is an integer.
fn sin_pi_ratio(a: u64, p: &EvalPoint, prec: u32) -> Float {
    // r has 53 significant bits and a fits in 64, so r·a is exact here
    let x = Float::with_val(prec, p.r) * a;
    let y = x / p.n;
    if y.is_integer() {
        return Float::new(prec);
    }
    // reduce mod 2 before multiplying by π
    let two = Float::with_val(prec, 2);
    let reduced = Float::with_val(prec, &y - Float::with_val(prec, &y / &two).floor() * &two);
    (reduced * Float::with_val(prec, rug::float::Constant::Pi)).sin()
}

/// Quantum integer `[M] = sin(Mπr/N) / sin(πr/N)`.
pub fn quantum_int(m: u64, p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    let prec = cfg.bits();
    let den = sin_pi_ratio(1, p, prec);
    if den.is_zero() {
        return Err(Error::DegeneratePoint(format!(
            "q^(1/2) = ±1 at N = {}, r = {}; quantum integers are undefined",
            p.n, p.r
        )));
    }
    let num = sin_pi_ratio(m, p, prec);
    Ok(LogComplex::from_real(&(num / den)))
}

/// `J_N(U) = [N]`.
pub fn jones_unknot(p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    quantum_int(p.n, p, cfg)
}

/// `J_N(hopf) = [N²]`.
pub fn jones_hopf(p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    let n2 = p
        .n
        .checked_mul(p.n)
        .ok_or_else(|| Error::Domain(format!("N = {} is too large for the Hopf link", p.n)))?;
    quantum_int(n2, p, cfg)
}

/// Reduced colored Jones polynomial of the figure-eight knot,
///
/// `V_N = Σ_{j=0}^{N−1} Π_{k=1}^{j} (q^{(N−k)/2} − q^{−(N−k)/2})(q^{(N+k)/2} − q^{−(N+k)/2})`.
///
/// Each factor is `−4·sin(πr(N+k)/N)·sin(πr(N−k)/N)`. The partial products
/// are accumulated as log-magnitude plus sign and summed by
/// [`log_sum_exp`]; a vanishing factor truncates the sum.
pub fn fig8_reduced(p: &EvalPoint, cfg: &PrecisionCfg) -> LogComplex {
    let prec = cfg.bits();
    let n = p.n;
    let pi = cfg.pi();
    let mut terms = Vec::with_capacity(n as usize);
    terms.push(LogComplex::one(prec));
    let mut log_mag = Float::new(prec);
    let mut negative = false;
    for k in 1..n {
        let s1 = sin_pi_ratio(n + k, p, prec);
        let s2 = sin_pi_ratio(n - k, p, prec);
        if s1.is_zero() || s2.is_zero() {
            break;
        }
        let f = Float::with_val(prec, &s1 * &s2) * -4i32;
        negative ^= f.is_sign_negative();
        log_mag += f.abs().ln();
        let phase = if negative { pi.clone() } else { Float::new(prec) };
        terms.push(LogComplex::new(log_mag.clone(), phase));
    }
    log_sum_exp(&terms)
}

/// Kashaev invariant `V_N(4₁; e^{2πi/N})`, a positive real number.
pub fn kashaev_fig8(n: u64, cfg: &PrecisionCfg) -> Result<Float> {
    let v = kashaev_fig8_log(n, cfg)?;
    let mag = Float::with_val(cfg.bits(), v.log_mag().exp_ref());
    Ok(if v.phase().clone().cos() < 0 { -mag } else { mag })
}

/// [`kashaev_fig8`] in log form, for `N` where the value overflows `f64`.
pub fn kashaev_fig8_log(n: u64, cfg: &PrecisionCfg) -> Result<LogComplex> {
    if n < 2 {
        return Err(Error::Domain(format!("the Kashaev invariant needs N >= 2, got {n}")));
    }
    Ok(fig8_reduced(&EvalPoint::new(n, 1.0)?, cfg))
}

fn unsupported(expr: &KnotExpr) -> Error {
    Error::UnsupportedEvaluation(expr.render())
}

/// Checks that every operand can be evaluated before any number is produced,
/// so unsupported atoms are reported ahead of degenerate points.
fn check_evaluable(expr: &KnotExpr) -> Result<()> {
    match expr {
        KnotExpr::Atom(Atom::Unknot | Atom::FigureEight | Atom::Hopf) => Ok(()),
        KnotExpr::Atom(_) | KnotExpr::Satellite { .. } => Err(unsupported(expr)),
        KnotExpr::ConnectedSum(parts) => {
            for part in parts {
                if matches!(part, KnotExpr::Atom(Atom::Hopf)) {
                    return Err(Error::Structural("the Hopf link cannot be an operand of `#`".into()));
                }
                check_evaluable(part)?;
            }
            Ok(())
        }
    }
}

/// Reduced invariant `V_N = J_N / [N]`. At `r = 1` this is the only
/// meaningful normalization for knots, since `[N]` vanishes there.
pub fn jones_reduced(expr: &KnotExpr, p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    check_evaluable(expr)?;
    reduced_unchecked(expr, p, cfg)
}

fn reduced_unchecked(expr: &KnotExpr, p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    match expr {
        KnotExpr::Atom(Atom::Unknot) => Ok(LogComplex::one(cfg.bits())),
        KnotExpr::Atom(Atom::FigureEight) => Ok(fig8_reduced(p, cfg)),
        KnotExpr::Atom(Atom::Hopf) => {
            let unknot = jones_unknot(p, cfg)?;
            jones_hopf(p, cfg)?
                .div(&unknot)
                .ok_or_else(|| Error::DegeneratePoint(format!("[N] vanishes at N = {}, r = {}", p.n, p.r)))
        }
        KnotExpr::ConnectedSum(parts) => parts.iter().try_fold(LogComplex::one(cfg.bits()), |acc, part| {
            Ok(acc.mul(&reduced_unchecked(part, p, cfg)?))
        }),
        _ => Err(unsupported(expr)),
    }
}

/// Unreduced `J_N`. A connected sum is `[N]·Π V_N(K_i)`, the product
/// `Π J_N(K_i)` divided by `[N]^{m−1}`; where `[N] = 0` that quotient is
/// undefined and a degenerate-point error is returned.
pub fn jones_eval(expr: &KnotExpr, p: &EvalPoint, cfg: &PrecisionCfg) -> Result<LogComplex> {
    check_evaluable(expr)?;
    match expr {
        KnotExpr::Atom(Atom::Unknot) => jones_unknot(p, cfg),
        KnotExpr::Atom(Atom::FigureEight) => Ok(jones_unknot(p, cfg)?.mul(&fig8_reduced(p, cfg))),
        KnotExpr::Atom(Atom::Hopf) => jones_hopf(p, cfg),
        KnotExpr::ConnectedSum(_) => {
            let unknot = jones_unknot(p, cfg)?;
            if unknot.is_zero() {
                return Err(Error::DegeneratePoint(format!(
                    "J_N(U) = [N] vanishes at N = {}, r = {}; evaluate the connected sum in reduced mode",
                    p.n, p.r
                )));
            }
            Ok(unknot.mul(&reduced_unchecked(expr, p, cfg)?))
        }
        _ => Err(unsupported(expr)),
    }
}
