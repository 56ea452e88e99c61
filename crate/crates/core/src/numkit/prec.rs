use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};

const DEFAULT_DIGITS: u32 = 64;
const GUARD_BITS: u32 = 32;

/// Working precision for every multiprecision computation.
///
/// `digits` is the number of significant decimal digits the caller wants to
/// trust; the binary precision carries 32 guard bits on top of that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionCfg {
    digits: u32,
    quad_tol: f64,
}

impl Default for PrecisionCfg {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS).expect("default precision is valid")
    }
}

impl PrecisionCfg {
    /// Precision with the default quadrature tolerance `10^-(5·digits/8)`.
    pub fn new(digits: u32) -> Result<Self> {
        let exp = (digits as f64 * 5.0 / 8.0).min(300.0);
        Self::with_quad_tol(digits, 10f64.powf(-exp))
    }

    pub fn with_quad_tol(digits: u32, quad_tol: f64) -> Result<Self> {
        if digits < 16 {
            return Err(Error::Config(format!("digits must be at least 16, got {digits}")));
        }
        if !(quad_tol > 0.0 && quad_tol.is_finite()) {
            return Err(Error::Config(format!("quad_tol must be positive, got {quad_tol}")));
        }
        Ok(Self { digits, quad_tol })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    /// Binary precision in bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// `10^-digits`, the relative size of the last trusted digit.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits(), 10).pow(-(self.digits as i32))
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.bits(), x)
    }

    pub fn int(&self, n: i64) -> Float {
        Float::with_val(self.bits(), n)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.bits(), (re, im))
    }

    pub fn complex_from(&self, re: &Float, im: &Float) -> Complex {
        Complex::with_val(self.bits(), (re, im))
    }

    /// The imaginary unit at working precision.
    pub fn i(&self) -> Complex {
        self.complex(0.0, 1.0)
    }
}
