//! SL(2,ℂ) data of the figure-eight knot along its geometric A-polynomial
//! branch: holonomies `(l, m)`, the longitude parameter `v(u)`, the actions
//! `S′` and `S`, volume, Chern–Simons invariant and torsion.
//!
//! With `m = e^{u/2}` the A-polynomial is quadratic in `l` with
//! `l + 1/l = m⁴ + m⁻⁴ − m² − m⁻² − 2 = 2cosh 2u − 2cosh u − 2`.
//! At `u = 0` both roots equal `−1`; the geometric branch leaves it as
//! `l ≈ −exp(−√3·i·u)`, and `v = −2 log(−l)` is continued from `v(0) = 0`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numkit::{integrate_segment, vol_fig8, PrecisionCfg};

/// Points with `|Re u| + |Im u|` beyond this are refused.
pub const SEARCH_BOX: f64 = 3.0;

const MAX_STEP_DL: f64 = 0.1;
const MIN_STEP: f64 = 1e-14;
/// Root separation below which two branches count as collided.
const COLLISION_GAP: f64 = 1e-6;
/// Around the origin the double root is an analytic crossing, not a collision.
const ORIGIN_RADIUS: f64 = 1e-3;

/// `−m⁴ + l(1 − m² − 2m⁴ − m⁶ + m⁸) − l²m⁴`
pub fn a_poly_fig8(l: &Complex, m: &Complex) -> Complex {
    let prec = l.prec().0.max(m.prec().0);
    let m2 = Complex::with_val(prec, m.square_ref());
    let m4 = Complex::with_val(prec, m2.square_ref());
    let m6 = Complex::with_val(prec, &m4 * &m2);
    let m8 = Complex::with_val(prec, m4.square_ref());
    let b = Complex::with_val(prec, 1) - &m2 - Complex::with_val(prec, &m4 * 2u32) - &m6 + &m8;
    let l2 = Complex::with_val(prec, l.square_ref());
    -m4.clone() + Complex::with_val(prec, l * &b) - l2 * m4
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyPoint {
    pub u: Complex,
    pub v: Complex,
    pub m: Complex,
    pub l: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionValue {
    pub u: Complex,
    pub v: Complex,
    pub s_prime: Complex,
    pub s: Complex,
    pub vol: Float,
    pub cs: Float,
}

fn check_box(u: &Complex) -> Result<()> {
    let (re, im) = (u.real().to_f64(), u.imag().to_f64());
    let inside = re.abs() + im.abs() <= SEARCH_BOX;
    if !inside {
        return Err(Error::OutOfDomain { re, im });
    }
    Ok(())
}

/// `g(u) = 2cosh 2u − 2cosh u − 2` and its derivative.
fn g_and_dg(u: &Complex, prec: u32) -> (Complex, Complex) {
    let two_u = Complex::with_val(prec, u * 2u32);
    let (s1, c1) = (Complex::with_val(prec, u.sinh_ref()), Complex::with_val(prec, u.cosh_ref()));
    let (s2, c2) = (Complex::with_val(prec, two_u.sinh_ref()), Complex::with_val(prec, two_u.cosh_ref()));
    let g = (c2 - c1) * 2u32 - 2u32;
    let dg = s2 * 4u32 - s1 * 2u32;
    (g, dg)
}

/// Both roots of `l² − g·l + 1 = 0`; the small one is taken as the
/// reciprocal of the large one to avoid cancellation.
fn roots(g: &Complex, prec: u32) -> (Complex, Complex) {
    let disc = (Complex::with_val(prec, g.square_ref()) - 4u32).sqrt();
    let plus = Complex::with_val(prec, g + &disc) / 2u32;
    let minus = Complex::with_val(prec, g - &disc) / 2u32;
    let big_plus = *Complex::with_val(prec, plus.abs_ref()).real() >= *Complex::with_val(prec, minus.abs_ref()).real();
    if big_plus {
        let other = Complex::with_val(prec, plus.recip_ref());
        (plus, other)
    } else {
        let other = Complex::with_val(prec, minus.recip_ref());
        (minus, other)
    }
}

fn abs_f64(z: &Complex) -> f64 {
    Complex::with_val(53, z.abs_ref()).real().to_f64()
}

#[derive(Debug, Clone)]
struct State {
    t: Float,
    u: Complex,
    l: Complex,
    v: Complex,
    /// Overrides the implicit derivative at the double root of the origin.
    dl: Option<Complex>,
}

impl State {
    fn origin(cfg: &PrecisionCfg) -> Self {
        let prec = cfg.bits();
        let sqrt3 = Float::with_val(prec, 3).sqrt();
        Self {
            t: Float::new(prec),
            u: Complex::new(prec),
            l: Complex::with_val(prec, -1),
            v: Complex::new(prec),
            dl: Some(Complex::with_val(prec, (Float::new(prec), sqrt3))),
        }
    }

    fn derivative(&self, prec: u32) -> Complex {
        if let Some(d) = &self.dl {
            return d.clone();
        }
        let (_, dg) = g_and_dg(&self.u, prec);
        let l2 = Complex::with_val(prec, self.l.square_ref());
        let den = Complex::with_val(prec, &l2 - 1u32);
        if den.is_zero() {
            return Complex::new(prec);
        }
        dg * l2 / den
    }
}

/// Continuation of the geometric branch along one straight segment. Every
/// evaluated point is kept, and a new query continues from the nearest
/// earlier point on the segment.
struct SegmentTracker<'a> {
    cfg: &'a PrecisionCfg,
    z0: Complex,
    span: Complex,
    states: Vec<State>,
}

impl<'a> SegmentTracker<'a> {
    fn new(start: State, z1: &Complex, cfg: &'a PrecisionCfg) -> Self {
        let prec = cfg.bits();
        let z0 = start.u.clone();
        let span = Complex::with_val(prec, z1 - &z0);
        let mut start = start;
        start.t = Float::new(prec);
        Self {
            cfg,
            z0,
            span,
            states: vec![start],
        }
    }

    fn point_at(&self, t: &Float) -> Complex {
        let prec = self.cfg.bits();
        Complex::with_val(prec, &self.span * t) + &self.z0
    }

    /// State at the point of the segment closest to `z`.
    fn eval(&mut self, z: &Complex) -> Result<State> {
        let prec = self.cfg.bits();
        let mut t = if self.span.is_zero() {
            Float::new(prec)
        } else {
            Complex::with_val(prec, Complex::with_val(prec, z - &self.z0) / &self.span)
                .real()
                .clone()
        };
        t.clamp_mut(&0, &1);
        self.eval_t(&t)
    }

    fn eval_t(&mut self, t: &Float) -> Result<State> {
        if self.span.is_zero() {
            return Ok(self.states[0].clone());
        }
        let idx = self.states.partition_point(|s| s.t <= *t);
        let from = &self.states[idx - 1];
        if from.t == *t {
            return Ok(from.clone());
        }
        let reached = self.advance(from.clone(), t)?;
        self.states.insert(idx, reached.clone());
        Ok(reached)
    }

    fn advance(&self, mut cur: State, target: &Float) -> Result<State> {
        let prec = self.cfg.bits();
        let mut h = Float::with_val(prec, target - &cur.t);
        while cur.t < *target {
            let remaining = Float::with_val(prec, target - &cur.t);
            let t_new = if h >= remaining {
                target.clone()
            } else {
                Float::with_val(prec, &cur.t + &h)
            };
            let step = Float::with_val(prec, &t_new - &cur.t);
            let u_new = self.point_at(&t_new);
            check_box(&u_new)?;
            let (g, _) = g_and_dg(&u_new, prec);
            let (r1, r2) = roots(&g, prec);
            let du = Complex::with_val(prec, &u_new - &cur.u);
            let pred = Complex::with_val(prec, cur.derivative(prec) * du) + &cur.l;
            let d1 = abs_f64(&Complex::with_val(prec, &r1 - &pred));
            let d2 = abs_f64(&Complex::with_val(prec, &r2 - &pred));
            let (near, far) = if d1 <= d2 { (r1, r2) } else { (r2, r1) };
            let sep = abs_f64(&Complex::with_val(prec, &near - &far));
            let miss = d1.min(d2);
            let near_origin = abs_f64(&u_new) < ORIGIN_RADIUS;
            if !near_origin && sep < COLLISION_GAP {
                return Err(self.degeneration(&u_new));
            }
            let ratio = Complex::with_val(prec, &near / &cur.l).ln();
            let accept = miss < 0.25 * sep
                && abs_f64(&Complex::with_val(prec, &near - &cur.l)) < MAX_STEP_DL
                && abs_f64(&ratio) < 0.5;
            if accept {
                let v = Complex::with_val(prec, &cur.v - Complex::with_val(prec, &ratio * 2u32));
                cur = State {
                    t: t_new,
                    u: u_new,
                    l: near,
                    v,
                    dl: None,
                };
                h = step * 2u32;
            } else {
                h = step / 2u32;
                if h.to_f64() < MIN_STEP {
                    return Err(self.degeneration(&u_new));
                }
            }
        }
        Ok(cur)
    }

    fn degeneration(&self, u: &Complex) -> Error {
        Error::BranchDegeneration {
            re: u.real().to_f64(),
            im: u.imag().to_f64(),
        }
    }
}

fn to_point(s: State, prec: u32) -> HolonomyPoint {
    let m = Complex::with_val(prec, &s.u / 2u32).exp();
    HolonomyPoint {
        u: s.u,
        v: s.v,
        m,
        l: s.l,
    }
}

/// The geometric-branch point over `u`, continued along the segment `0 → u`.
pub fn holonomy_branch(u: &Complex, cfg: &PrecisionCfg) -> Result<HolonomyPoint> {
    holonomy_branch_path(&[], u, cfg)
}

/// As [`holonomy_branch`], continuing along the polyline
/// `0 → waypoints… → u`.
pub fn holonomy_branch_path(waypoints: &[Complex], u: &Complex, cfg: &PrecisionCfg) -> Result<HolonomyPoint> {
    check_box(u)?;
    let mut state = State::origin(cfg);
    for z in waypoints.iter().chain(std::iter::once(u)) {
        let z = Complex::with_val(cfg.bits(), z);
        check_box(&z)?;
        let mut tracker = SegmentTracker::new(state, &z, cfg);
        state = tracker.eval_t(&Float::with_val(cfg.bits(), 1))?;
    }
    Ok(to_point(state, cfg.bits()))
}

pub fn v_of_u(u: &Complex, cfg: &PrecisionCfg) -> Result<Complex> {
    Ok(holonomy_branch(u, cfg)?.v)
}

/// `6Λ(π/3)`, computed once per precision.
fn vol0(cfg: &PrecisionCfg) -> Float {
    static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("volume cache poisoned").get(&cfg.bits()) {
        return v.clone();
    }
    let v = vol_fig8(cfg);
    cache.lock().expect("volume cache poisoned").insert(cfg.bits(), v.clone());
    v
}

/// `S′(u) = i·Vol(4₁)/2π + (1/4π)∫₀^u (v(s) + 2πi) ds` along the segment
/// `0 → u`.
pub fn action_sprime(u: &Complex, cfg: &PrecisionCfg) -> Result<Complex> {
    Ok(sprime_and_point(&[], u, cfg)?.0)
}

/// `S′(u)` integrated along the polyline `0 → waypoints… → u`.
pub fn action_sprime_path(waypoints: &[Complex], u: &Complex, cfg: &PrecisionCfg) -> Result<Complex> {
    Ok(sprime_and_point(waypoints, u, cfg)?.0)
}

fn sprime_and_point(waypoints: &[Complex], u: &Complex, cfg: &PrecisionCfg) -> Result<(Complex, HolonomyPoint)> {
    let prec = cfg.bits();
    check_box(u)?;
    let mut state = State::origin(cfg);
    let mut integral = Complex::new(prec);
    for z in waypoints.iter().chain(std::iter::once(u)) {
        let z = Complex::with_val(prec, z);
        check_box(&z)?;
        let z0 = state.u.clone();
        let mut tracker = SegmentTracker::new(state, &z, cfg);
        if z != z0 {
            integral += integrate_segment(|s| Ok(tracker.eval(s)?.v), &z0, &z, cfg)?;
        }
        state = tracker.eval_t(&Float::with_val(prec, 1))?;
    }
    let pi = cfg.pi();
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let four_pi = Float::with_val(prec, &pi * 4u32);
    // ∫ 2πi ds = 2πi·u exactly
    integral += Complex::with_val(prec, u * cfg.i()) * &two_pi;
    let base = Complex::with_val(prec, (Float::new(prec), vol0(cfg) / &two_pi));
    let sprime = base + integral / four_pi;
    Ok((sprime, to_point(state, prec)))
}

/// `S = S′ + (1/π)(ũ·Re ṽ − πi·ṽ)` with `ũ = −v/2`, `ṽ = u/2`.
fn polarize(s_prime: &Complex, u: &Complex, v: &Complex, cfg: &PrecisionCfg) -> Complex {
    let prec = cfg.bits();
    let pi = cfg.pi();
    let u_t = Complex::with_val(prec, v / -2i32);
    let v_t = Complex::with_val(prec, u / 2u32);
    let first = u_t * v_t.real();
    let second = Complex::with_val(prec, &v_t * cfg.i()) * &pi;
    Complex::with_val(prec, s_prime + (first - second) / &pi)
}

/// The full action record at `u`.
pub fn action_s(u: &Complex, cfg: &PrecisionCfg) -> Result<ActionValue> {
    let prec = cfg.bits();
    let (s_prime, point) = sprime_and_point(&[], u, cfg)?;
    let s = polarize(&s_prime, &point.u, &point.v, cfg);
    let pi = cfg.pi();
    let vol = Float::with_val(prec, s.imag() * Float::with_val(prec, &pi * 2u32));
    let cs = Float::with_val(prec, -s.real()) / &pi;
    Ok(ActionValue {
        u: point.u,
        v: point.v,
        s_prime,
        s,
        vol,
        cs,
    })
}

/// `Vol = 2π·Im S′ − π·Re u − ½·Re u·Im v`.
pub fn volume(u: &Complex, cfg: &PrecisionCfg) -> Result<Float> {
    let (s_prime, point) = sprime_and_point(&[], u, cfg)?;
    Ok(volume_from(&s_prime, &point.u, &point.v, cfg))
}

fn volume_from(s_prime: &Complex, u: &Complex, v: &Complex, cfg: &PrecisionCfg) -> Float {
    let prec = cfg.bits();
    let pi = cfg.pi();
    let a = Float::with_val(prec, s_prime.imag() * &pi) * 2u32;
    let b = Float::with_val(prec, u.real() * &pi);
    let c = Float::with_val(prec, u.real() * v.imag()) / 2u32;
    a - b - c
}

/// `CS = −Re S / π`.
pub fn chern_simons(u: &Complex, cfg: &PrecisionCfg) -> Result<Float> {
    Ok(action_s(u, cfg)?.cs)
}

/// Central-difference check of `dVol = −½(Re u·d Im v − Re v·d Im u)` in the
/// two real directions at `u`; the larger absolute residual.
pub fn schlafli_residual(u: &Complex, h: f64, cfg: &PrecisionCfg) -> Result<f64> {
    let prec = cfg.bits();
    let h_f = Float::with_val(prec, h);
    let eval = |z: Complex| -> Result<(Float, Complex)> {
        let (sp, point) = sprime_and_point(&[], &z, cfg)?;
        Ok((volume_from(&sp, &point.u, &point.v, cfg), point.v))
    };
    let v0 = v_of_u(u, cfg)?;
    let mut worst = 0.0f64;
    for dir in [cfg.complex(1.0, 0.0), cfg.complex(0.0, 1.0)] {
        let d = Complex::with_val(prec, &dir * &h_f);
        let (vol_p, v_p) = eval(Complex::with_val(prec, u + &d))?;
        let (vol_m, v_m) = eval(Complex::with_val(prec, u - &d))?;
        let two_h = Float::with_val(prec, &h_f * 2u32);
        let d_vol = Float::with_val(prec, &vol_p - &vol_m) / &two_h;
        let d_im_v = Float::with_val(prec, v_p.imag() - v_m.imag()) / &two_h;
        let d_im_u = dir.imag().clone();
        let rhs = (Float::with_val(prec, u.real() * &d_im_v) - Float::with_val(prec, v0.real() * &d_im_u)) / -2i32;
        worst = worst.max(Float::with_val(prec, d_vol - rhs).abs().to_f64());
    }
    Ok(worst)
}

/// `T_E(α) = 1/√((3/2 − cos α)(1/2 + cos α))` for cone angle `0 ≤ α < 2π/3`.
pub fn torsion_fig8(alpha: &Float, cfg: &PrecisionCfg) -> Result<Float> {
    let prec = cfg.bits();
    let limit = Float::with_val(prec, Constant::Pi) * 2u32 / 3u32;
    if alpha.is_nan() || *alpha < 0 || *alpha >= limit {
        return Err(Error::Domain(format!(
            "torsion needs a cone angle in [0, 2π/3), got {}",
            alpha.to_f64()
        )));
    }
    let c = Float::with_val(prec, alpha.cos_ref());
    let a = Float::with_val(prec, 1.5) - &c;
    let b = Float::with_val(prec, 0.5) + c;
    Ok((a * b).sqrt().recip())
}

/// `T_E(0) = 2π²/√3`, the torsion at the complete structure in the reduced
/// normalization.
pub fn torsion_fig8_zero(cfg: &PrecisionCfg) -> Float {
    let prec = cfg.bits();
    let pi = cfg.pi();
    Float::with_val(prec, pi.square_ref()) * 2u32 / Float::with_val(prec, 3).sqrt()
}
