//! Measured `log J_N` against the predicted large-`N` expansion: residuals,
//! residual sweeps over `r`, and least-squares extraction of the expansion
//! coefficients.
//!
//! At `r = N/k ≠ 1` the evaluation point corresponds to the cone-angle
//! deformation `u = 2πi(r − 1)` of cone angle `α = 2π|r − 1|`, and the
//! prediction is
//!
//! `(N/r)·Im S(u) + (3/2)·log(N/r) + ½·log(T_E(α)/2π²)`.
//!
//! At `r = 1` the unreduced invariant vanishes, so the reduced `V_N`, the
//! trivial-deformation torsion `T_E(0)` and `(3/2)·log N` are used instead.

use rayon::prelude::*;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{action_s, torsion_fig8, torsion_fig8_zero};
use crate::jones::{fig8_reduced, jones_eval, jones_reduced, kashaev_fig8_log, EvalPoint};
use crate::knotlang::{Atom, KnotExpr};
use crate::numkit::{fit_log_affine_with, vol_fig8, FitModel, LogComplex, PrecisionCfg};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub r: f64,
    pub log_jones: f64,
    pub prediction: f64,
    /// `log_jones − prediction`, computed from the two stored values.
    pub residual: f64,
}

/// One sample of a sweep; a failed point keeps its coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub r: f64,
    pub outcome: Result<ResidualRow>,
}

fn log_mag_or_zero_error(z: &LogComplex, p: &EvalPoint) -> Result<Float> {
    if z.is_zero() {
        return Err(Error::DegeneratePoint(format!(
            "the colored Jones value vanishes at N = {}, r = {}",
            p.n(),
            p.r()
        )));
    }
    Ok(z.log_mag().clone())
}

/// Residual of the figure-eight expansion at `(N, r)`.
pub fn residual(n: u64, r: f64, cfg: &PrecisionCfg) -> Result<ResidualRow> {
    let p = EvalPoint::new(n, r)?;
    let prec = cfg.bits();
    let pi = cfg.pi();
    let two_pi_sq = Float::with_val(prec, pi.square_ref()) * 2u32;
    let (log_jones, prediction) = if r == 1.0 {
        let measured = log_mag_or_zero_error(&fig8_reduced(&p, cfg), &p)?;
        let nf = Float::with_val(prec, n);
        let leading = Float::with_val(prec, &nf * vol_fig8(cfg)) / Float::with_val(prec, &pi * 2u32);
        let log_term = Float::with_val(prec, nf.ln_ref()) * 1.5f64;
        let constant = (torsion_fig8_zero(cfg) / &two_pi_sq).ln() / 2u32;
        (measured, leading + log_term + constant)
    } else {
        let alpha = Float::with_val(prec, &pi * 2u32) * Float::with_val(prec, r - 1.0).abs();
        let torsion = torsion_fig8(&alpha, cfg)?;
        let u = Complex::with_val(prec, (Float::new(prec), Float::with_val(prec, &pi * 2u32) * (r - 1.0)));
        let action = action_s(&u, cfg)?;
        let measured = log_mag_or_zero_error(&jones_eval(&KnotExpr::Atom(Atom::FigureEight), &p, cfg)?, &p)?;
        let k = Float::with_val(prec, n) / r;
        let leading = Float::with_val(prec, &k * action.s.imag());
        let log_term = Float::with_val(prec, k.ln_ref()) * 1.5f64;
        let constant = (torsion / &two_pi_sq).ln() / 2u32;
        (measured, leading + log_term + constant)
    };
    let log_jones = log_jones.to_f64();
    let prediction = prediction.to_f64();
    Ok(ResidualRow {
        n,
        r,
        log_jones,
        prediction,
        residual: log_jones - prediction,
    })
}

/// `steps` evenly spaced values from `r_min` to `r_max` inclusive; a single
/// step yields `r_min` alone.
pub fn r_grid(r_min: f64, r_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Config("a sweep needs at least one step".into()));
    }
    if !(r_min.is_finite() && r_max.is_finite()) || r_min > r_max {
        return Err(Error::Config(format!("invalid r range [{r_min}, {r_max}]")));
    }
    if steps == 1 {
        return Ok(vec![r_min]);
    }
    let width = r_max - r_min;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                r_max
            } else {
                r_min + width * i as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

/// Residuals over an `r` grid at fixed `N`, evaluated in parallel. Failed
/// points are kept as error rows and the sweep continues.
pub fn sweep(n: u64, r_min: f64, r_max: f64, steps: usize, cfg: &PrecisionCfg) -> Result<Vec<SweepRow>> {
    let grid = r_grid(r_min, r_max, steps)?;
    Ok(grid
        .into_par_iter()
        .map(|r| SweepRow {
            n,
            r,
            outcome: residual(n, r, cfg),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub knot: String,
    pub r: f64,
    /// Coefficient of `N`.
    pub a: f64,
    /// Coefficient of `log N`.
    pub b: f64,
    pub c: f64,
    /// Coefficient of `1/N` when the extended model was used.
    pub d: Option<f64>,
    /// `2π·r·a`: the leading growth is `(N/r)·Vol/2π`.
    pub vol_est: f64,
    pub delta_est: f64,
    /// `2π²·exp(2c + 2b·log r)`; the `log r` part moves the constant from
    /// `log N` back to `log(N/r)`.
    pub torsion_const_est: f64,
    pub rms: f64,
}

/// `Re log` of the quantity fitted at `(N, r)`: `V_N` at `r = 1`, `J_N`
/// elsewhere.
fn fitted_log(expr: &KnotExpr, n: u64, r: f64, cfg: &PrecisionCfg) -> Result<Float> {
    let p = EvalPoint::new(n, r)?;
    let z = if r == 1.0 {
        jones_reduced(expr, &p, cfg)?
    } else {
        jones_eval(expr, &p, cfg)?
    };
    log_mag_or_zero_error(&z, &p)
}

/// Least-squares fit of `Re log J_N ≈ a·N + b·log N + c` over `n_list`.
pub fn fit_expansion(expr: &KnotExpr, n_list: &[u64], r: f64, cfg: &PrecisionCfg) -> Result<FitReport> {
    fit_expansion_with(expr, n_list, r, FitModel::LogAffine, cfg)
}

pub fn fit_expansion_with(
    expr: &KnotExpr,
    n_list: &[u64],
    r: f64,
    model: FitModel,
    cfg: &PrecisionCfg,
) -> Result<FitReport> {
    let samples = n_list
        .par_iter()
        .map(|&n| Ok((n, fitted_log(expr, n, r, cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_log_affine_with(&samples, model, cfg)?;
    let (a, b, c) = (fit.a.to_f64(), fit.b.to_f64(), fit.c.to_f64());
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok(FitReport {
        knot: expr.render(),
        r,
        a,
        b,
        c,
        d: fit.d.as_ref().map(Float::to_f64),
        vol_est: two_pi * r * a,
        delta_est: 2.0 * b,
        torsion_const_est: 2.0 * std::f64::consts::PI.powi(2) * (2.0 * c + 2.0 * b * r.ln()).exp(),
        rms: fit.rms.to_f64(),
    })
}

/// Colors used by [`volume_conjecture_check`]: multiples of 100 up to
/// `n_max`, or quarters of `n_max` when that would leave fewer than four.
pub fn volcheck_colors(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 100 {
        return Err(Error::Config(format!("N-max must be at least 100, got {n_max}")));
    }
    if n_max < 400 {
        let step = n_max / 4;
        return Ok((1..=4).map(|i| if i == 4 { n_max } else { i * step }).collect());
    }
    Ok((1..=n_max / 100).map(|i| i * 100).collect())
}

/// `2π·a` from a fit of `log ⟨4₁⟩_N` over [`volcheck_colors`].
pub fn volume_conjecture_check(n_max: u64, cfg: &PrecisionCfg) -> Result<Float> {
    let samples = volcheck_colors(n_max)?
        .into_par_iter()
        .map(|n| Ok((n, kashaev_fig8_log(n, cfg)?.log_mag().clone())))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_log_affine_with(&samples, FitModel::LogAffine, cfg)?;
    Ok(fit.a * Float::with_val(cfg.bits(), &cfg.pi() * 2u32))
}
