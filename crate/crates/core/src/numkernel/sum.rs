use rug::Float;

use super::logreal::{LogRealValue, Sign};

/// Result of a log-domain summation.
#[derive(Clone, Debug)]
pub struct SumOutcome {
    pub value: LogRealValue,
    /// Sum of absolute values of the terms; measures cancellation.
    pub abs_sum: LogRealValue,
    pub terms: usize,
}

impl SumOutcome {
    /// Decimal digits lost to cancellation, `log10(abs_sum / |value|)`.
    pub fn cancellation_digits(&self) -> f64 {
        if self.value.is_zero() {
            return f64::INFINITY;
        }
        (self.abs_sum.log10_abs() - self.value.log10_abs()).to_f64()
    }
}

/// Accumulator for signed log-domain terms.
///
/// Terms are factored by the largest magnitude and added largest first, with
/// positive and negative parts kept apart until the final subtraction.
#[derive(Clone, Debug)]
pub struct LogSum {
    prec: u32,
    terms: Vec<LogRealValue>,
    count: usize,
}

impl LogSum {
    pub fn new(prec: u32) -> Self {
        LogSum { prec, terms: Vec::new(), count: 0 }
    }

    pub fn push(&mut self, term: LogRealValue) {
        self.count += 1;
        if !term.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn finish(mut self) -> SumOutcome {
        let prec = self.prec;
        if self.terms.is_empty() {
            return SumOutcome {
                value: LogRealValue::zero(prec),
                abs_sum: LogRealValue::zero(prec),
                terms: self.count,
            };
        }
        // Stable sort keeps insertion order among equal magnitudes.
        self.terms.sort_by(|a, b| b.logmag().partial_cmp(a.logmag()).unwrap_or(std::cmp::Ordering::Equal));
        let max = self.terms[0].logmag().clone();
        let cutoff = -(prec as f64) * std::f64::consts::LN_2 - 64.0;
        let mut pos = Float::new(prec);
        let mut neg = Float::new(prec);
        for t in &self.terms {
            let d = Float::with_val(prec, t.logmag() - &max);
            if d < cutoff {
                break;
            }
            let w = d.exp();
            match t.sign() {
                Sign::Positive => pos += w,
                Sign::Negative => neg += w,
                Sign::Zero => {}
            }
        }
        let total = Float::with_val(prec, &pos + &neg);
        let diff = Float::with_val(prec, &pos - &neg);
        let abs_sum = LogRealValue::from_log(Float::with_val(prec, &max + total.ln()));
        let value = if diff.is_zero() {
            LogRealValue::zero(prec)
        } else {
            let sign = if diff.is_sign_negative() { Sign::Negative } else { Sign::Positive };
            LogRealValue::from_parts(sign, Float::with_val(prec, &max + diff.abs().ln()))
        };
        SumOutcome { value, abs_sum, terms: self.count }
    }
}
