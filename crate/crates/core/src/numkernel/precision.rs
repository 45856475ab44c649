use rug::Float;

/// Digits requested when neither the caller nor `QSCALE_PRECISION` says otherwise.
pub const DEFAULT_DIGITS: u32 = 50;
/// Extra decimal digits carried beyond the requested ones.
pub const GUARD_DIGITS: u32 = 10;

/// Requested number of significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision { digits: digits.max(1) }
    }

    /// `QSCALE_PRECISION` if set and valid, otherwise [`DEFAULT_DIGITS`].
    pub fn from_env() -> Self {
        let digits = std::env::var("QSCALE_PRECISION")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|&d| d > 0)
            .unwrap_or(DEFAULT_DIGITS);
        Precision::new(digits)
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    pub fn working_digits(self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    /// Mantissa bits. The 64 spare bits absorb log magnitudes up to about 2^40.
    pub fn bits(self) -> u32 {
        (self.working_digits() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
    }

    pub fn doubled(self) -> Self {
        Precision::new(self.digits * 2)
    }

    /// Default truncation tolerance: ten digits past the working precision.
    pub fn default_tolerance(self) -> Tolerance {
        Tolerance::from_digits(self.working_digits() + GUARD_DIGITS)
    }
}

/// A relative tolerance stored as its natural logarithm, so values far below
/// `f64::MIN_POSITIVE` are representable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    ln: f64,
}

impl Tolerance {
    /// `eps` must lie in `(0, 1)`.
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0 && eps < 1.0, "tolerance must lie in (0, 1)");
        Tolerance { ln: eps.ln() }
    }

    /// `10^-digits`.
    pub fn from_digits(digits: u32) -> Self {
        Tolerance { ln: -(digits as f64) * std::f64::consts::LN_10 }
    }

    pub fn from_ln(ln: f64) -> Self {
        assert!(ln < 0.0, "tolerance must be below 1");
        Tolerance { ln }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// `eps / k`.
    pub fn divided(self, k: f64) -> Self {
        Tolerance { ln: self.ln - k.max(1.0).ln() }
    }

    /// `min(eps, 1/2)`.
    pub fn at_most_half(self) -> Self {
        Tolerance { ln: self.ln.min(-std::f64::consts::LN_2) }
    }

    pub fn value(self, prec: u32) -> Float {
        Float::with_val(prec, self.ln).exp()
    }
}
