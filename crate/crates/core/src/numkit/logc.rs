use std::fmt;

use rug::float::Special;
use rug::{Complex, Float};

/// A complex number stored as `(log |z|, arg z)`.
///
/// The phase is never reduced modulo 2π: products add phases, so a value
/// built from a long chain of factors keeps a continuous argument. Exact
/// zero is the distinguished value whose `log_mag` is −∞.
#[derive(Debug, Clone, PartialEq)]
pub struct LogComplex {
    log_mag: Float,
    phase: Float,
}

impl LogComplex {
    pub fn new(log_mag: Float, phase: Float) -> Self {
        Self { log_mag, phase }
    }

    pub fn zero(prec: u32) -> Self {
        Self {
            log_mag: Float::with_val(prec, Special::NegInfinity),
            phase: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self {
            log_mag: Float::new(prec),
            phase: Float::new(prec),
        }
    }

    /// A real number: phase 0 for positive values, π for negative ones.
    pub fn from_real(x: &Float) -> Self {
        let prec = x.prec();
        if x.is_zero() {
            return Self::zero(prec);
        }
        let log_mag = Float::with_val(prec, x.abs_ref()).ln();
        let phase = if x.is_sign_negative() {
            Float::with_val(prec, rug::float::Constant::Pi)
        } else {
            Float::new(prec)
        };
        Self { log_mag, phase }
    }

    /// Principal-branch logarithm of a complex value.
    pub fn from_complex(z: &Complex) -> Self {
        let prec = z.prec().0;
        if z.is_zero() {
            return Self::zero(prec);
        }
        let log_mag = Float::with_val(prec, z.abs_ref()).ln();
        let phase = Float::with_val(prec, z.arg_ref());
        Self { log_mag, phase }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag.is_infinite() && self.log_mag.is_sign_negative()
    }

    pub fn log_mag(&self) -> &Float {
        &self.log_mag
    }

    pub fn phase(&self) -> &Float {
        &self.phase
    }

    pub fn prec(&self) -> u32 {
        self.log_mag.prec()
    }

    pub fn log_mag_f64(&self) -> f64 {
        self.log_mag.to_f64()
    }

    pub fn phase_f64(&self) -> f64 {
        self.phase.to_f64()
    }

    /// The full logarithm `log_mag + i·phase`; `None` for zero.
    pub fn ln(&self) -> Option<Complex> {
        if self.is_zero() {
            None
        } else {
            Some(Complex::with_val(self.prec(), (&self.log_mag, &self.phase)))
        }
    }

    /// Back to rectangular form. Overflows to infinity for huge magnitudes.
    pub fn to_complex(&self) -> Complex {
        let prec = self.prec();
        if self.is_zero() {
            return Complex::new(prec);
        }
        let mag = Float::with_val(prec, self.log_mag.exp_ref());
        let (s, c) = Float::with_val(prec, &self.phase).sin_cos(Float::new(prec));
        Complex::with_val(prec, (&mag * c, mag * s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.prec());
        }
        Self {
            log_mag: Float::with_val(self.prec(), &self.log_mag + &other.log_mag),
            phase: Float::with_val(self.prec(), &self.phase + &other.phase),
        }
    }

    /// Division; `None` when `other` is zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.prec()));
        }
        Some(Self {
            log_mag: Float::with_val(self.prec(), &self.log_mag - &other.log_mag),
            phase: Float::with_val(self.prec(), &self.phase - &other.phase),
        })
    }

    pub fn powi(&self, n: i32) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::one(self.prec()) } else { self.clone() };
        }
        Self {
            log_mag: Float::with_val(self.prec(), &self.log_mag * n),
            phase: Float::with_val(self.prec(), &self.phase * n),
        }
    }

    /// Relative distance `|a − b| / max(|a|, |b|)` evaluated without leaving
    /// the log domain: `|1 − exp(Δlog + iΔphase)|` about the larger value.
    pub fn rel_diff(&self, other: &Self) -> Float {
        let prec = self.prec();
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Float::new(prec),
            (true, false) | (false, true) => return Float::with_val(prec, 1),
            _ => {}
        }
        let (big, small) = if self.log_mag >= other.log_mag {
            (self, other)
        } else {
            (other, self)
        };
        let dl = Float::with_val(prec, &small.log_mag - &big.log_mag);
        let dp = Float::with_val(prec, &small.phase - &big.phase);
        let ratio = Complex::with_val(prec, (dl, dp)).exp();
        Float::with_val(prec, (ratio - 1u32).abs_ref())
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "exp({:.17e} + {:.17e}i)", self.log_mag.to_f64(), self.phase.to_f64())
        }
    }
}

/// `log Σ exp(zᵢ)` with every term rescaled by the largest magnitude, so no
/// intermediate leaves the floating range. Exact zeros are skipped; the
/// result's phase is continued from the phase of the dominant term.
pub fn log_sum_exp(terms: &[LogComplex]) -> LogComplex {
    let Some(prec) = terms.iter().map(LogComplex::prec).max() else {
        return LogComplex::zero(53);
    };
    let Some(pivot) = terms
        .iter()
        .filter(|t| !t.is_zero())
        .max_by(|a, b| a.log_mag.partial_cmp(&b.log_mag).expect("log magnitudes are not NaN"))
    else {
        return LogComplex::zero(prec);
    };

    let mut acc = Complex::new(prec);
    let mut count = 0u32;
    for t in terms.iter().filter(|t| !t.is_zero()) {
        let dl = Float::with_val(prec, &t.log_mag - &pivot.log_mag);
        let dp = Float::with_val(prec, &t.phase - &pivot.phase);
        acc += Complex::with_val(prec, (dl, dp)).exp();
        count += 1;
    }
    // cancellation down to the rounding level of the pivot is exact zero
    let noise = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32)) * count;
    if *Float::with_val(prec, acc.abs_ref()).as_abs() <= noise {
        return LogComplex::zero(prec);
    }
    let rel = LogComplex::from_complex(&acc);
    LogComplex {
        log_mag: Float::with_val(prec, &pivot.log_mag + &rel.log_mag),
        phase: Float::with_val(prec, &pivot.phase + &rel.phase),
    }
}
