use rug::float::Constant;
use rug::{Complex, Float};

use super::PrecisionCfg;
use crate::error::{Error, Result};

const RULE_POINTS: usize = 32;
const MAX_HALVINGS: u32 = 12;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [−1, 1] at
/// `prec` bits, nodes in increasing order.
pub fn gauss_legendre_nodes(n: usize, prec: u32) -> Vec<(Float, Float)> {
    assert!(n >= 1, "rule needs at least one node");
    let pi = Float::with_val(prec, Constant::Pi);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    let mut nodes = Vec::with_capacity(n);
    for i in 1..=n.div_ceil(2) {
        // Chebyshev-like initial guess, refined by Newton on P_n
        let mut x = Float::with_val(prec, (i as f64 - 0.25) / (n as f64 + 0.5));
        x *= &pi;
        x.cos_mut();
        let mut deriv = Float::new(prec);
        for _ in 0..200 {
            let (p, dp) = legendre_with_derivative(n, &x);
            let step = Float::with_val(prec, &p / &dp);
            x -= &step;
            deriv = dp;
            if step.abs() < tol {
                let (_, dp) = legendre_with_derivative(n, &x);
                deriv = dp;
                break;
            }
        }
        let one_minus_x2 = Float::with_val(prec, 1 - Float::with_val(prec, x.square_ref()));
        let w = Float::with_val(prec, 2) / (one_minus_x2 * Float::with_val(prec, deriv.square_ref()));
        nodes.push((x, w));
    }
    let mut full: Vec<(Float, Float)> = Vec::with_capacity(n);
    for (x, w) in nodes.iter() {
        full.push((Float::with_val(prec, -x), w.clone()));
    }
    let mirrored = if n % 2 == 1 { nodes.len() - 1 } else { nodes.len() };
    for (x, w) in nodes.iter().take(mirrored).rev() {
        full.push((x.clone(), w.clone()));
    }
    full.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    full
}

fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        // k P_k = (2k−1) x P_{k−1} − (k−1) P_{k−2}
        let mut p2 = Float::with_val(prec, x * &p1) * (2 * kf - 1);
        p2 -= Float::with_val(prec, &p0 * (kf - 1));
        p2 /= kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 1 {
        return (p1, Float::with_val(prec, 1));
    }
    // P'_n = n (x P_n − P_{n−1}) / (x² − 1)
    let num = Float::with_val(prec, x * &p1) - &p0;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    let dp = num * n as u32 / den;
    (p1, dp)
}

/// Integral of `f` along the straight segment `z0 → z1`.
///
/// Composite 32-point Gauss–Legendre; the panel count doubles until two
/// successive estimates agree within `cfg.quad_tol()`. The integrand is never
/// evaluated at the endpoints.
pub fn integrate_segment<F>(mut f: F, z0: &Complex, z1: &Complex, cfg: &PrecisionCfg) -> Result<Complex>
where
    F: FnMut(&Complex) -> Result<Complex>,
{
    let prec = cfg.bits();
    let rule = gauss_legendre_nodes(RULE_POINTS, prec);
    let span = Complex::with_val(prec, z1 - z0);
    let tol = cfg.quad_tol();

    let mut previous = panel_sum(&mut f, z0, &span, 1, &rule)?;
    let mut last_change = f64::INFINITY;
    for level in 1..=MAX_HALVINGS {
        let current = panel_sum(&mut f, z0, &span, 1 << level, &rule)?;
        let change = Float::with_val(prec, Complex::with_val(prec, &current - &previous).abs_ref());
        last_change = change.to_f64();
        if last_change <= tol {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::QuadratureFailure {
        halvings: MAX_HALVINGS,
        last_change,
    })
}

fn panel_sum<F>(f: &mut F, z0: &Complex, span: &Complex, panels: u32, rule: &[(Float, Float)]) -> Result<Complex>
where
    F: FnMut(&Complex) -> Result<Complex>,
{
    let prec = span.prec().0;
    let h = Complex::with_val(prec, span / panels);
    let half = Complex::with_val(prec, &h / 2u32);
    let mut total = Complex::new(prec);
    for p in 0..panels {
        // panel midpoint
        let mid = Complex::with_val(prec, z0 + Complex::with_val(prec, &h * p)) + &half;
        let mut acc = Complex::new(prec);
        for (x, w) in rule {
            let z = Complex::with_val(prec, &half * x) + &mid;
            acc += f(&z)? * w;
        }
        total += acc;
    }
    Ok(total * half)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionCfg {
        PrecisionCfg::default()
    }

    fn close(a: &Complex, re: &Float, im: &Float, tol: f64) -> bool {
        let d = Complex::with_val(a.prec().0, a - Complex::with_val(a.prec().0, (re, im)));
        d.abs().real().to_f64() <= tol
    }

    #[test]
    fn weights_sum_to_two() {
        let nodes = gauss_legendre_nodes(32, 256);
        let s: Float = nodes.iter().fold(Float::new(256), |acc, (_, w)| acc + w);
        assert!((s - 2u32).abs() < 1e-70);
        assert_eq!(nodes.len(), 32);
        let odd = gauss_legendre_nodes(5, 256);
        assert_eq!(odd.len(), 5);
        assert!(odd[2].0.is_zero() || odd[2].0.clone().abs() < 1e-70);
    }

    #[test]
    fn constant_over_diagonal() {
        let c = cfg();
        let r = integrate_segment(|_| Ok(c.complex(1.0, 0.0)), &c.complex(0.0, 0.0), &c.complex(1.0, 1.0), &c).unwrap();
        assert!(close(&r, &c.float(1.0), &c.float(1.0), 1e-60));
    }

    #[test]
    fn identity_integrates_to_half_square() {
        let c = cfg();
        let r = integrate_segment(|z| Ok(z.clone()), &c.complex(0.0, 0.0), &c.complex(2.0, 0.0), &c).unwrap();
        assert!(close(&r, &c.float(2.0), &c.zero(), 1e-60));
    }

    #[test]
    fn exponential_closed_form() {
        let c = cfg();
        let r = integrate_segment(|z| Ok(Complex::with_val(z.prec().0, z.exp_ref())), &c.complex(0.0, 0.0), &c.complex(1.0, 0.0), &c)
            .unwrap();
        let e_minus_1 = c.float(1.0).exp() - 1u32;
        assert!(close(&r, &e_minus_1, &c.zero(), 1e-38));
    }

    #[test]
    fn additive_over_subdivision() {
        let c = cfg();
        let f = |z: &Complex| Ok(Complex::with_val(z.prec().0, z.sin_ref()) * z);
        let a = c.complex(-0.3, 0.2);
        let m = c.complex(0.4, 0.9);
        let b = c.complex(1.1, -0.5);
        let whole = integrate_segment(f, &a, &b, &c).unwrap();
        // a → m → b is a different path, but the integrand is entire
        let split = integrate_segment(f, &a, &m, &c).unwrap() + integrate_segment(f, &m, &b, &c).unwrap();
        let d = Complex::with_val(c.bits(), &whole - &split);
        assert!(d.abs().real().to_f64() < 10.0 * c.quad_tol());
    }

    #[test]
    fn non_convergence_is_reported() {
        let c = PrecisionCfg::with_quad_tol(20, 1e-300).unwrap();
        // |x|^{1/2}-type kink at an interior point stalls convergence
        let err = integrate_segment(
            |z| Ok(Complex::with_val(z.prec().0, (z - Complex::with_val(z.prec().0, (0.3, 0.0))).abs_ref()).sqrt()),
            &c.complex(0.0, 0.0),
            &c.complex(1.0, 0.0),
            &c,
        )
        .unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure { .. }));
    }
}
