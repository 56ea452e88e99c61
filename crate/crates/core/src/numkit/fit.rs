use std::collections::BTreeSet;

use rug::Float;

use super::PrecisionCfg;
use crate::error::{Error, Result};

/// Regression model for `y(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitModel {
    /// `y ≈ a·N + b·log N + c`
    #[default]
    LogAffine,
    /// `y ≈ a·N + b·log N + c + d/N`
    LogAffineWithInverse,
}

impl FitModel {
    fn columns(self) -> usize {
        match self {
            FitModel::LogAffine => 3,
            FitModel::LogAffineWithInverse => 4,
        }
    }
}

/// Fitted coefficients of `a·N + b·log N + c (+ d/N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFit {
    pub a: Float,
    pub b: Float,
    pub c: Float,
    /// Coefficient of `1/N`; `None` for [`FitModel::LogAffine`].
    pub d: Option<Float>,
    /// Root-mean-square of the residuals.
    pub rms: Float,
}

/// Least-squares fit of `y ≈ a·N + b·log N + c`.
pub fn fit_log_affine(samples: &[(u64, Float)], cfg: &PrecisionCfg) -> Result<AffineFit> {
    fit_log_affine_with(samples, FitModel::LogAffine, cfg)
}

/// Least-squares fit through the normal equations, solved at working
/// precision with partial pivoting.
pub fn fit_log_affine_with(samples: &[(u64, Float)], model: FitModel, cfg: &PrecisionCfg) -> Result<AffineFit> {
    let prec = cfg.bits();
    let k = model.columns();
    if samples.len() < 4 {
        return Err(Error::SingularFit(format!("need at least 4 samples, got {}", samples.len())));
    }
    let distinct: BTreeSet<u64> = samples.iter().map(|(n, _)| *n).collect();
    if distinct.len() < k {
        return Err(Error::SingularFit(format!(
            "{} distinct N values cannot determine {k} coefficients",
            distinct.len()
        )));
    }
    if samples.iter().any(|(n, _)| *n == 0) {
        return Err(Error::SingularFit("N = 0 has no logarithm".into()));
    }

    let rows: Vec<Vec<Float>> = samples.iter().map(|(n, _)| design_row(*n, model, prec)).collect();

    // augmented normal matrix [AᵀA | Aᵀy]
    let mut m: Vec<Vec<Float>> = vec![vec![Float::new(prec); k + 1]; k];
    for (row, (_, y)) in rows.iter().zip(samples) {
        for i in 0..k {
            for j in 0..k {
                m[i][j] += Float::with_val(prec, &row[i] * &row[j]);
            }
            m[i][k] += Float::with_val(prec, &row[i] * y);
        }
    }
    let coef = solve_augmented(m, prec)?;

    let mut sq = Float::new(prec);
    for (row, (_, y)) in rows.iter().zip(samples) {
        let mut pred = Float::new(prec);
        for (x, c) in row.iter().zip(&coef) {
            pred += Float::with_val(prec, x * c);
        }
        let r = Float::with_val(prec, y - &pred);
        sq += r.square();
    }
    let rms = (sq / samples.len() as u32).sqrt();

    let mut it = coef.into_iter();
    let a = it.next().expect("a");
    let b = it.next().expect("b");
    let c = it.next().expect("c");
    let d = it.next();
    Ok(AffineFit { a, b, c, d, rms })
}

fn design_row(n: u64, model: FitModel, prec: u32) -> Vec<Float> {
    let nf = Float::with_val(prec, n);
    let mut row = vec![nf.clone(), Float::with_val(prec, nf.ln_ref()), Float::with_val(prec, 1)];
    if model == FitModel::LogAffineWithInverse {
        row.push(Float::with_val(prec, 1) / &nf);
    }
    row
}

fn solve_augmented(mut m: Vec<Vec<Float>>, prec: u32) -> Result<Vec<Float>> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|r| r[..k].iter())
        .map(|x| Float::with_val(prec, x.abs_ref()))
        .fold(Float::new(prec), |acc, x| if x > acc { x } else { acc });
    let threshold = scale * Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2));

    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| {
                Float::with_val(prec, m[i][col].abs_ref())
                    .partial_cmp(&Float::with_val(prec, m[j][col].abs_ref()))
                    .expect("finite entries")
            })
            .expect("non-empty range");
        if Float::with_val(prec, m[pivot][col].abs_ref()) <= threshold {
            return Err(Error::SingularFit("design matrix is rank deficient".into()));
        }
        m.swap(col, pivot);
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = Float::with_val(prec, &row[col] / &pivot_row[col]);
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= Float::with_val(prec, &factor * p);
            }
        }
    }
    let mut x = vec![Float::new(prec); k];
    for i in (0..k).rev() {
        let mut acc = m[i][k].clone();
        for j in i + 1..k {
            acc -= Float::with_val(prec, &m[i][j] * &x[j]);
        }
        x[i] = acc / &m[i][i];
    }
    Ok(x)
}
