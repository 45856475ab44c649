//! Log-domain arithmetic, precision bookkeeping and Bernoulli numbers.
//!
//! All evaluation in the crate goes through [`LogRealValue`] and
//! [`LogComplexValue`]; raw `Float` values only appear for quantities known to
//! stay in a moderate range (logarithms, arguments, ratios).

mod bernoulli;
mod logcomplex;
mod logreal;
mod precision;
mod sum;
mod trig;

pub use bernoulli::{
    bernoulli_number, bernoulli_polynomial, bernoulli_polynomial_rational, MAX_BERNOULLI_INDEX,
};
pub use logcomplex::LogComplexValue;
pub use logreal::{log_add, LogRealValue, Sign};
pub use precision::{Precision, Tolerance, DEFAULT_DIGITS, GUARD_DIGITS};
pub use sum::{LogSum, SumOutcome};
pub use trig::{cos_pi, sin_pi};

use rug::float::Constant;
use rug::Float;

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub(crate) fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

pub(crate) fn ln10(prec: u32) -> Float {
    Float::with_val(prec, 10).ln()
}

/// Decimal string to `Float`, correctly rounded at the given precision.
pub fn parse_float(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s.trim()).ok().map(|p| Float::with_val(prec, p))
}
