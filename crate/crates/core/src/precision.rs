//! Working-precision policy shared by every numeric entry point.

use crate::bigreal::BigReal;
use crate::quad::{QuadOptions, DEFAULT_MAX_LEVEL};

/// Digits of headroom between the requested output digits and the
/// quadrature tolerance.
pub const TOLERANCE_HEADROOM_DIGITS: u32 = 8;

/// Requested output digits plus the binary precision used to get them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Accuracy {
    digits: u32,
    bits: usize,
    max_level: u32,
}

impl Accuracy {
    /// Guard policy: ⌈digits·log₂10⌉ plus max(16 bits, 10%).
    pub fn from_digits(digits: u32) -> Self {
        let base = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        let guard = (base / 10).max(16);
        Self {
            digits,
            bits: base + guard,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }

    /// Explicit precision; `bits` should be at least what
    /// [`Accuracy::from_digits`] would choose.
    pub fn with_bits(digits: u32, bits: usize) -> Self {
        Self {
            digits,
            bits,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }

    /// Caps quadrature refinement; mostly useful to provoke non-convergence.
    pub fn with_max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// 10^{−(digits − 8)}
    pub fn tolerance(&self) -> BigReal {
        let e = self.digits.saturating_sub(TOLERANCE_HEADROOM_DIGITS).max(1);
        BigReal::parse(&format!("1e-{e}"), self.bits).expect("literal")
    }

    pub fn quad_options(&self) -> QuadOptions {
        QuadOptions::new(self.tolerance(), self.bits).max_level(self.max_level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_policy() {
        // 50 digits: ⌈166.1⌉ = 167 bits + 16
        assert_eq!(Accuracy::from_digits(50).bits(), 183);
        // 1000 digits: 3322 + 332
        assert_eq!(Accuracy::from_digits(1000).bits(), 3654);
    }

    #[test]
    fn tolerance_policy() {
        let a = Accuracy::from_digits(30);
        let want = BigReal::parse("1e-22", a.bits()).unwrap();
        assert_eq!(a.tolerance(), want);
    }
}
