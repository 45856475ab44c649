use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use rug::float::Special;
use rug::Float;

use super::ln10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i32(s: i32) -> Self {
        match s.cmp(&0) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Self {
        Sign::from_i32(-self.to_i32())
    }

    pub fn times(self, other: Sign) -> Self {
        Sign::from_i32(self.to_i32() * other.to_i32())
    }

    /// `self^k`, with `0^0 = 1`.
    pub fn pow(self, k: u64) -> Self {
        match self {
            Sign::Negative if k % 2 == 1 => Sign::Negative,
            Sign::Zero if k > 0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// A real number stored as `sign * exp(logmag)`.
///
/// For zero the log magnitude is irrelevant and kept at `0`.
#[derive(Clone, Debug)]
pub struct LogRealValue {
    sign: Sign,
    logmag: Float,
}

impl LogRealValue {
    pub fn zero(prec: u32) -> Self {
        LogRealValue { sign: Sign::Zero, logmag: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        LogRealValue { sign: Sign::Positive, logmag: Float::new(prec) }
    }

    pub fn from_parts(sign: Sign, logmag: Float) -> Self {
        if sign == Sign::Zero {
            LogRealValue::zero(logmag.prec())
        } else {
            LogRealValue { sign, logmag }
        }
    }

    /// `exp(logmag)`.
    pub fn from_log(logmag: Float) -> Self {
        LogRealValue { sign: Sign::Positive, logmag }
    }

    pub fn from_float(x: &Float) -> Self {
        if x.is_zero() {
            return LogRealValue::zero(x.prec());
        }
        let sign = if x.is_sign_negative() { Sign::Negative } else { Sign::Positive };
        LogRealValue { sign, logmag: Float::with_val(x.prec(), x.abs_ref()).ln() }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        LogRealValue::from_float(&Float::with_val(prec, x))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn logmag(&self) -> &Float {
        &self.logmag
    }

    pub fn prec(&self) -> u32 {
        self.logmag.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn abs(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            LogRealValue { sign: Sign::Positive, logmag: self.logmag.clone() }
        }
    }

    /// `1 / self`; the reciprocal of zero is `+inf`.
    pub fn recip(&self) -> Self {
        if self.is_zero() {
            let inf = Float::with_val(self.prec(), Special::Infinity);
            return LogRealValue { sign: Sign::Positive, logmag: inf };
        }
        LogRealValue { sign: self.sign, logmag: -self.logmag.clone() }
    }

    /// `self^k` for integer `k`.
    pub fn powi(&self, k: i64) -> Self {
        if k == 0 {
            return LogRealValue::one(self.prec());
        }
        if self.is_zero() {
            return if k > 0 { self.clone() } else { self.recip() };
        }
        let sign = self.sign.pow(k.unsigned_abs());
        LogRealValue { sign, logmag: Float::with_val(self.prec(), &self.logmag * k) }
    }

    /// `|self|^x` for a real exponent; the sign is dropped.
    pub fn abs_pow(&self, x: &Float) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LogRealValue::from_log(Float::with_val(self.prec(), &self.logmag * x))
    }

    /// Multiply by `exp(delta)`.
    pub fn scale_log(&self, delta: &Float) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LogRealValue { sign: self.sign, logmag: Float::with_val(self.prec(), &self.logmag + delta) }
    }

    /// Plain floating value; overflows to infinity for huge magnitudes.
    pub fn to_float(&self) -> Float {
        match self.sign {
            Sign::Zero => Float::new(self.prec()),
            Sign::Positive => self.logmag.clone().exp(),
            Sign::Negative => -self.logmag.clone().exp(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float().to_f64()
    }

    /// `log10 |self|`; `-inf` for zero.
    pub fn log10_abs(&self) -> Float {
        if self.is_zero() {
            return Float::with_val(self.prec(), Special::NegInfinity);
        }
        self.logmag.clone() / ln10(self.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        log_add(self, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        log_add(self, &-other)
    }

    /// Compare absolute values.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.logmag.partial_cmp(&other.logmag).unwrap_or(Ordering::Equal),
        }
    }

    /// `|self / other - 1|` as a plain float (`+inf` if `other` is zero and
    /// `self` is not, `0` if both are zero).
    pub fn rel_diff(&self, other: &Self) -> Float {
        let prec = self.prec().max(other.prec());
        if other.is_zero() {
            if self.is_zero() {
                return Float::new(prec);
            }
            return Float::with_val(prec, Special::Infinity);
        }
        let ratio = (self / other).to_float();
        Float::with_val(prec, ratio - 1u32).abs()
    }
}

/// `a + b` computed as `big * (1 +/- exp(small - big))`.
pub fn log_add(a: &LogRealValue, b: &LogRealValue) -> LogRealValue {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let prec = a.prec().max(b.prec());
    let (big, small) = if a.logmag >= b.logmag { (a, b) } else { (b, a) };
    let d = Float::with_val(prec, &small.logmag - &big.logmag);
    let e = d.exp();
    if a.sign == b.sign {
        let l = Float::with_val(prec, &big.logmag + e.ln_1p());
        LogRealValue { sign: big.sign, logmag: l }
    } else {
        if e == 1u32 {
            return LogRealValue::zero(prec);
        }
        let l = Float::with_val(prec, &big.logmag + (-e).ln_1p());
        LogRealValue { sign: big.sign, logmag: l }
    }
}

impl PartialEq for LogRealValue {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && (self.is_zero() || self.logmag == other.logmag)
    }
}

impl Neg for &LogRealValue {
    type Output = LogRealValue;
    fn neg(self) -> LogRealValue {
        LogRealValue { sign: self.sign.flip(), logmag: self.logmag.clone() }
    }
}

impl Neg for LogRealValue {
    type Output = LogRealValue;
    fn neg(self) -> LogRealValue {
        LogRealValue { sign: self.sign.flip(), logmag: self.logmag }
    }
}

impl Mul for &LogRealValue {
    type Output = LogRealValue;
    fn mul(self, other: &LogRealValue) -> LogRealValue {
        let prec = self.prec().max(other.prec());
        let sign = self.sign.times(other.sign);
        if sign == Sign::Zero {
            return LogRealValue::zero(prec);
        }
        LogRealValue { sign, logmag: Float::with_val(prec, &self.logmag + &other.logmag) }
    }
}

impl Div for &LogRealValue {
    type Output = LogRealValue;
    fn div(self, other: &LogRealValue) -> LogRealValue {
        self * &other.recip()
    }
}

impl fmt::Display for LogRealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            s => write!(
                f,
                "{}exp({})",
                if s == Sign::Negative { "-" } else { "" },
                self.logmag.to_string_radix(10, Some(20))
            ),
        }
    }
}
