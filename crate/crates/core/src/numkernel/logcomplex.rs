use std::fmt;
use std::ops::{Div, Mul, Neg};

use rug::Float;

use super::logreal::{log_add, LogRealValue, Sign};
use crate::error::{Error, Result};

/// `i^quarter_phase * magnitude` with a non-negative magnitude.
///
/// Zero always carries phase 0. Addition is only defined between values on
/// the same axis (phases of equal parity).
#[derive(Clone, Debug, PartialEq)]
pub struct LogComplexValue {
    quarter_phase: u8,
    magnitude: LogRealValue,
}

impl LogComplexValue {
    pub fn zero(prec: u32) -> Self {
        LogComplexValue { quarter_phase: 0, magnitude: LogRealValue::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        LogComplexValue { quarter_phase: 0, magnitude: LogRealValue::one(prec) }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64, prec: u32) -> Self {
        LogComplexValue { quarter_phase: k.rem_euclid(4) as u8, magnitude: LogRealValue::one(prec) }
    }

    /// `i^phase * x` for a signed real `x`.
    pub fn on_axis(phase: i64, x: LogRealValue) -> Self {
        match x.sign() {
            Sign::Zero => LogComplexValue::zero(x.prec()),
            Sign::Positive => LogComplexValue { quarter_phase: phase.rem_euclid(4) as u8, magnitude: x },
            Sign::Negative => {
                LogComplexValue { quarter_phase: (phase + 2).rem_euclid(4) as u8, magnitude: x.abs() }
            }
        }
    }

    pub fn from_real(x: LogRealValue) -> Self {
        LogComplexValue::on_axis(0, x)
    }

    pub fn quarter_phase(&self) -> u8 {
        self.quarter_phase
    }

    pub fn abs(&self) -> &LogRealValue {
        &self.magnitude
    }

    pub fn prec(&self) -> u32 {
        self.magnitude.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    /// `x` with `self = i^axis * x`, if the value lies on that axis.
    pub fn coordinate(&self, axis: u8) -> Option<LogRealValue> {
        if self.is_zero() {
            return Some(self.magnitude.clone());
        }
        let d = (self.quarter_phase + 4 - axis % 4) % 4;
        match d {
            0 => Some(self.magnitude.clone()),
            2 => Some(-&self.magnitude),
            _ => None,
        }
    }

    /// The real value if the phase is 0 or 2.
    pub fn as_real(&self) -> Option<LogRealValue> {
        self.coordinate(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.quarter_phase + other.quarter_phase) % 2 != 0 {
            return Err(Error::MixedAxis { a: self.quarter_phase, b: other.quarter_phase });
        }
        let axis = self.quarter_phase % 2;
        let x = self.coordinate(axis).expect("same axis");
        let y = other.coordinate(axis).expect("same axis");
        Ok(LogComplexValue::on_axis(axis as i64, log_add(&x, &y)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&-other)
    }

    pub fn scale(&self, x: &LogRealValue) -> Self {
        self * &LogComplexValue::from_real(x.clone())
    }

    pub fn recip(&self) -> Self {
        LogComplexValue::on_axis(-(self.quarter_phase as i64), self.magnitude.recip())
    }

    pub fn log10_abs(&self) -> Float {
        self.magnitude.log10_abs()
    }
}

impl Neg for &LogComplexValue {
    type Output = LogComplexValue;
    fn neg(self) -> LogComplexValue {
        LogComplexValue::on_axis(self.quarter_phase as i64 + 2, self.magnitude.clone())
    }
}

impl Mul for &LogComplexValue {
    type Output = LogComplexValue;
    fn mul(self, other: &LogComplexValue) -> LogComplexValue {
        LogComplexValue::on_axis(
            self.quarter_phase as i64 + other.quarter_phase as i64,
            &self.magnitude * &other.magnitude,
        )
    }
}

impl Div for &LogComplexValue {
    type Output = LogComplexValue;
    fn div(self, other: &LogComplexValue) -> LogComplexValue {
        self * &other.recip()
    }
}

impl fmt::Display for LogComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.quarter_phase {
            0 => write!(f, "{}", self.magnitude),
            1 => write!(f, "i*{}", self.magnitude),
            2 => write!(f, "-{}", self.magnitude),
            _ => write!(f, "-i*{}", self.magnitude),
        }
    }
}
