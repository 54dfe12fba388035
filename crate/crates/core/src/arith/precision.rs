use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

use super::Real;

/// Working precision in decimal digits plus the number of guard digits that
/// may be consumed by roundoff. The derived tolerance is `10^(guard - digits)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub digits: u32,
    pub guard: u32,
}

impl PrecisionConfig {
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const DEFAULT_GUARD: u32 = 4;

    pub fn new(digits: u32, guard: u32) -> Result<Self> {
        if guard < 2 {
            return Err(invalid(format!("guard digits must be >= 2, got {guard}")));
        }
        if digits <= guard {
            return Err(invalid(format!(
                "digits ({digits}) must exceed guard digits ({guard})"
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(
            digits,
            Self::DEFAULT_GUARD.min(digits.saturating_sub(1)).max(2),
        )
    }

    /// Configuration matching IEEE double arithmetic.
    pub fn double() -> Self {
        Self {
            digits: 16,
            guard: 2,
        }
    }

    pub fn tau(&self) -> f64 {
        10f64.powi(self.guard as i32 - self.digits as i32)
    }

    /// MPFR mantissa bits for `digits` decimal digits, plus a few spare bits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    pub fn doubled(&self) -> Self {
        Self {
            digits: self.digits * 2,
            guard: self.guard,
        }
    }

    pub fn real(&self, v: f64) -> Real {
        Real::with_prec(self.bits(), v)
    }

    /// Digits from [`DIGITS_ENV`] when set, otherwise the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DIGITS_ENV) {
            Ok(v) => {
                let digits = v.trim().parse::<u32>().map_err(|_| {
                    invalid(format!(
                        "{DIGITS_ENV} must be a positive integer, got {v:?}"
                    ))
                })?;
                Self::with_digits(digits)
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

/// Environment variable holding the default working precision in decimal digits.
pub const DIGITS_ENV: &str = "SQUEEZE_DIGITS";

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            digits: Self::DEFAULT_DIGITS,
            guard: Self::DEFAULT_GUARD,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_guard_and_digits() {
        assert!(PrecisionConfig::new(50, 1).is_err());
        assert!(PrecisionConfig::new(3, 3).is_err());
        assert!(PrecisionConfig::new(3, 2).is_ok());
    }

    #[test]
    fn tolerance_and_bits() {
        let p = PrecisionConfig::new(50, 4).unwrap();
        assert!((p.tau() / 1e-46 - 1.0).abs() < 1e-12);
        assert!(p.bits() >= 166);
    }
}
