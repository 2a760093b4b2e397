use crate::error::{Error, Result};

/// Working precision and stopping policy threaded through every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    precision_bits: u32,
    target_tol: f64,
    max_terms: usize,
    guard_digits: u32,
    max_levin_order: usize,
}

pub const MIN_PRECISION_BITS: u32 = 64;
pub const DEFAULT_MAX_TERMS: usize = 200_000;
pub const DEFAULT_MAX_LEVIN_ORDER: usize = 40;

impl PrecisionContext {
    pub fn new(
        precision_bits: u32,
        target_tol: f64,
        max_terms: usize,
        guard_digits: u32,
    ) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::InvalidInput(format!(
                "precision_bits must be at least {MIN_PRECISION_BITS}, got {precision_bits}"
            )));
        }
        if !(target_tol > 0.0 && target_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "target_tol must be a positive finite number, got {target_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidInput("max_terms must be at least 1".into()));
        }
        Ok(PrecisionContext {
            precision_bits,
            target_tol,
            max_terms,
            guard_digits,
            max_levin_order: DEFAULT_MAX_LEVIN_ORDER,
        })
    }

    /// Context targeting `digits` correct decimal digits: tolerance `10^-digits`
    /// and 20% guard digits on top of the target.
    pub fn with_digits(digits: u32) -> Self {
        let digits = digits.max(16);
        let guard = (digits as f64 * 0.2).ceil() as u32;
        let bits = digits_to_bits(digits + guard) + 16;
        PrecisionContext {
            precision_bits: bits.max(MIN_PRECISION_BITS),
            target_tol: 10f64.powi(-(digits as i32)),
            max_terms: DEFAULT_MAX_TERMS,
            guard_digits: guard,
            max_levin_order: DEFAULT_MAX_LEVIN_ORDER,
        }
    }

    pub fn bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn max_levin_order(&self) -> usize {
        self.max_levin_order
    }

    /// Number of decimal digits the tolerance asks for.
    pub fn target_digits(&self) -> u32 {
        (-self.target_tol.log10()).ceil().max(0.0) as u32
    }

    pub fn with_tolerance(&self, target_tol: f64) -> Self {
        PrecisionContext {
            target_tol,
            ..self.clone()
        }
    }

    pub fn with_max_terms(&self, max_terms: usize) -> Self {
        PrecisionContext {
            max_terms: max_terms.max(1),
            ..self.clone()
        }
    }

    pub fn with_max_levin_order(&self, order: usize) -> Self {
        PrecisionContext {
            max_levin_order: order.max(2),
            ..self.clone()
        }
    }

    /// Same policy with `extra` more bits of working precision.
    pub fn elevated(&self, extra: u32) -> Self {
        PrecisionContext {
            precision_bits: self.precision_bits + extra,
            ..self.clone()
        }
    }

    /// Same policy at exactly `bits` bits of working precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        PrecisionContext {
            precision_bits: bits.max(MIN_PRECISION_BITS),
            ..self.clone()
        }
    }

    /// Context for inner evaluations: 24 extra bits and the tolerance tightened
    /// by the guard digits.
    pub fn guarded(&self) -> Self {
        PrecisionContext {
            precision_bits: self.precision_bits + 24,
            target_tol: self.target_tol * 10f64.powi(-(self.guard_digits.min(300) as i32)),
            ..self.clone()
        }
    }

    /// Doubled precision and term budget; used for refinement checks.
    pub fn refined(&self) -> Self {
        PrecisionContext {
            precision_bits: self.precision_bits * 2,
            max_terms: self.max_terms.saturating_mul(2),
            ..self.clone()
        }
    }

    /// Unit roundoff of the working precision as an `f64` (0 when it underflows).
    pub fn epsilon(&self) -> f64 {
        2f64.powi(-(self.precision_bits.min(1000) as i32))
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_settings() {
        assert!(PrecisionContext::new(32, 1e-10, 10, 0).is_err());
        assert!(PrecisionContext::new(128, 0.0, 10, 0).is_err());
        assert!(PrecisionContext::new(128, 1e-10, 0, 0).is_err());
        assert!(PrecisionContext::new(128, 1e-10, 10, 0).is_ok());
    }

    #[test]
    fn digits_context_has_guard() {
        let ctx = PrecisionContext::with_digits(50);
        assert_eq!(ctx.guard_digits(), 10);
        assert!(ctx.bits() >= digits_to_bits(60));
        assert_eq!(ctx.target_digits(), 50);
    }
}
