use rug::float::Round;
use rug::{Complex, Float};

use super::{integrate_segment, PrecisionCfg};

/// Split point between the series head and the quadrature tail.
const HEAD: f64 = 0.1;

/// Lobachevsky function `Λ(θ) = −∫₀^θ log|2 sin t| dt` at working precision.
///
/// The argument is reduced to (−π/2, π/2] using π-periodicity and oddness.
/// On `[0, min(θ, 0.1)]` the logarithmic endpoint is integrated exactly via
/// `log(2 sin t) = log 2t − Σ ζ(2n) t^{2n} / (n π^{2n})`; the rest of the
/// interval goes to Gauss–Legendre quadrature.
pub fn lobachevsky(theta: &Float, cfg: &PrecisionCfg) -> Float {
    let prec = cfg.bits();
    let pi = cfg.pi();
    let mut k = Float::with_val(prec, theta / &pi);
    k.round_mut();
    let mut t = Float::with_val(prec, theta - Float::with_val(prec, &k * &pi));
    // round-half-away leaves t in [−π/2, π/2]; fold −π/2 onto +π/2
    let half_pi = Float::with_val(prec, &pi / 2u32);
    if t <= Float::with_val(prec, -&half_pi) {
        t += &pi;
    }
    if t.is_zero() {
        return cfg.zero();
    }
    if t.is_sign_negative() {
        let neg = Float::with_val(prec, -&t);
        return -lobachevsky_reduced(&neg, cfg);
    }
    lobachevsky_reduced(&t, cfg)
}

fn lobachevsky_reduced(t: &Float, cfg: &PrecisionCfg) -> Float {
    let prec = cfg.bits();
    let h = if *t < HEAD { t.clone() } else { cfg.float(HEAD) };
    let mut integral = log_2sin_head(&h, cfg);
    if *t > h {
        let tail = integrate_segment(
            |z: &Complex| {
                let s = Float::with_val(prec, z.real().sin_ref()) * 2u32;
                Ok(Complex::with_val(prec, s.ln()))
            },
            &Complex::with_val(prec, &h),
            &Complex::with_val(prec, t),
            cfg,
        )
        .expect("log(2 sin t) is analytic on [0.1, π/2]");
        integral += tail.real();
    }
    -integral
}

/// `∫₀^h log(2 sin t) dt` for `0 < h < π`, by the ζ-series of `log(sin t / t)`.
fn log_2sin_head(h: &Float, cfg: &PrecisionCfg) -> Float {
    let prec = cfg.bits();
    let pi = cfg.pi();
    let two_h = Float::with_val(prec, h * 2u32);
    let mut acc = Float::with_val(prec, two_h.ln() - 1u32) * h;
    let ratio = Float::with_val(prec, h / &pi).square();
    let mut power = Float::with_val(prec, h); // h^{2n+1} / π^{2n}
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for n in 1u32.. {
        power *= &ratio;
        let zeta = Float::with_val_round(prec, Float::zeta_u(2 * n), Round::Nearest).0;
        let term = zeta * &power / (n * (2 * n + 1));
        acc -= &term;
        if term.abs() < tiny {
            break;
        }
    }
    acc
}

/// Double-precision convenience wrapper.
pub fn lobachevsky_f64(theta: f64) -> f64 {
    let cfg = PrecisionCfg::new(24).expect("valid precision");
    lobachevsky(&cfg.float(theta), &cfg).to_f64()
}

/// Hyperbolic volume of the figure-eight knot complement, `6 Λ(π/3)`.
pub fn vol_fig8(cfg: &PrecisionCfg) -> Float {
    let third = Float::with_val(cfg.bits(), cfg.pi() / 3u32);
    lobachevsky(&third, cfg) * 6u32
}

#[cfg(test)]
mod tests {
    use super::*;

    // 6Λ(π/3) to 40 digits, from an independent Clausen-function evaluation
    const VOL_4_1: &str = "2.029883212819307250042405108549040571883";

    #[test]
    fn zero_and_half_pi_vanish() {
        let cfg = PrecisionCfg::default();
        assert!(lobachevsky(&cfg.zero(), &cfg).is_zero());
        let hp = Float::with_val(cfg.bits(), cfg.pi() / 2u32);
        assert!(lobachevsky(&hp, &cfg).abs() < 1e-40);
    }

    #[test]
    fn figure_eight_volume() {
        let cfg = PrecisionCfg::default();
        let expect = Float::with_val(cfg.bits(), Float::parse(VOL_4_1).unwrap());
        let got = vol_fig8(&cfg);
        assert!(Float::with_val(cfg.bits(), &got - &expect).abs() < 1e-38);
        assert!((lobachevsky_f64(std::f64::consts::FRAC_PI_3) - 0.338_313_868_803_217_9).abs() < 1e-15);
    }

    #[test]
    fn small_arguments_use_series_only() {
        let cfg = PrecisionCfg::default();
        // Λ(θ) ≈ θ(1 − log 2θ) for tiny θ
        let x = cfg.float(1e-6);
        let approx = Float::with_val(cfg.bits(), 1 - Float::with_val(cfg.bits(), &x * 2u32).ln()) * &x;
        assert!(Float::with_val(cfg.bits(), lobachevsky(&x, &cfg) - approx).abs() < 1e-18);
    }

    #[test]
    fn odd_and_pi_periodic() {
        let cfg = PrecisionCfg::default();
        for theta in [0.05, 0.3, 1.0, 1.4, 2.5, 3.0] {
            let x = cfg.float(theta);
            let l = lobachevsky(&x, &cfg);
            let neg = lobachevsky(&Float::with_val(cfg.bits(), -&x), &cfg);
            let shifted = lobachevsky(&Float::with_val(cfg.bits(), &x + cfg.pi()), &cfg);
            assert!(Float::with_val(cfg.bits(), &l + &neg).abs() < cfg.quad_tol());
            assert!(Float::with_val(cfg.bits(), &l - &shifted).abs() < cfg.quad_tol() * 10.0);
        }
    }
}
