//! q-shifted factorials with certified truncation, the q-Gamma function and
//! the small-`t` expansion of `log (q^x;q)_inf`.
//!
//! Infinite products stop at the first `N` with `2|a| q^N / (1-q) < min(eps, 1/2)`.
//! Past that index the product of the remaining factors is `1 + r` with
//! `|r|` at most the same quantity, which is reported as a [`TailBound`].

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numkernel::{
    bernoulli_number, bernoulli_polynomial, ln2, log_add, pi, LogRealValue, Sign, Tolerance,
};

/// Hard cap on the number of factors of a truncated infinite product.
pub const TRUNCATION_CAP: u64 = 10_000_000;

/// Highest order accepted by [`mcintosh_log_qpoch`].
pub const MAX_MCINTOSH_ORDER: u32 = 20;

/// `q = exp(-pi t)` with `t > 0`; `t` is the stored quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct QParameter {
    t: Float,
}

impl QParameter {
    pub fn new(t: Float) -> Result<Self> {
        if !(t > 0u32) || t.is_infinite() {
            return Err(Error::Domain(format!("q parameter needs t > 0, got {t}")));
        }
        Ok(QParameter { t })
    }

    /// `q = exp(-pi / lambda)`.
    pub fn from_lambda(lambda: &Float) -> Result<Self> {
        if !(*lambda > 0u32) {
            return Err(Error::Domain("lambda must be positive".into()));
        }
        QParameter::new(Float::with_val(lambda.prec(), lambda.recip_ref()))
    }

    /// From the nome itself, `0 < q < 1`.
    pub fn from_nome(q: &Float) -> Result<Self> {
        if !(*q > 0u32 && *q < 1u32) {
            return Err(Error::Domain(format!("nome must lie in (0, 1), got {q}")));
        }
        let prec = q.prec();
        QParameter::new(-Float::with_val(prec, q.ln_ref()) / pi(prec))
    }

    pub fn t(&self) -> &Float {
        &self.t
    }

    pub fn prec(&self) -> u32 {
        self.t.prec()
    }

    /// `1 / t`.
    pub fn lambda(&self) -> Float {
        Float::with_val(self.prec(), self.t.recip_ref())
    }

    /// `log q = -pi t`.
    pub fn log_q(&self) -> Float {
        -Float::with_val(self.prec(), &self.t * pi(self.prec()))
    }

    /// `log(1 - q)` via `expm1`.
    pub fn log_one_minus_q(&self) -> Float {
        let e = self.log_q().exp_m1();
        (-e).ln()
    }

    /// `q^k = exp(-pi t k)`, i.e. the same base raised to a real power, as a nome.
    pub fn powered(&self, k: &Float) -> Result<QParameter> {
        QParameter::new(Float::with_val(self.prec(), &self.t * k))
    }

    /// `q^x` in the log domain.
    pub fn pow(&self, x: &Float) -> LogRealValue {
        LogRealValue::from_log(Float::with_val(self.prec(), self.log_q() * x))
    }

    pub fn pow_int(&self, k: i64) -> LogRealValue {
        LogRealValue::from_log(self.log_q() * k)
    }

    /// The nome as a plain float.
    pub fn value(&self) -> Float {
        self.log_q().exp()
    }

    /// Tolerance at the working precision of this parameter.
    pub fn working_tolerance(&self) -> Tolerance {
        Tolerance::from_ln(-(self.prec() as f64) * std::f64::consts::LN_2)
    }
}

/// Certified bound on the relative error of a truncated product.
#[derive(Clone, Debug)]
pub struct TailBound {
    pub value: LogRealValue,
    pub n_terms: u64,
}

/// `1 - x` in the log domain.
pub(crate) fn one_minus(x: &LogRealValue) -> LogRealValue {
    log_add(&LogRealValue::one(x.prec()), &-x)
}

/// Smallest `N` with `2|a| q^N / (1-q) < min(eps, 1/2)`, given `log|a|`.
pub(crate) fn certified_terms(log_abs_a: f64, q: &QParameter, tol: Tolerance) -> Result<u64> {
    let lq = q.log_q().to_f64();
    let l1q = q.log_one_minus_q().to_f64();
    let target = tol.at_most_half().ln();
    let x = (std::f64::consts::LN_2 + log_abs_a - l1q - target) / (-lq);
    let n = if x < 0.0 { 0.0 } else { x.floor() + 1.0 };
    if !n.is_finite() || n > TRUNCATION_CAP as f64 {
        return Err(Error::TruncationCap { needed: n.min(u64::MAX as f64) as u64, cap: TRUNCATION_CAP });
    }
    Ok(n as u64)
}

fn tail_value(log_abs_a: &Float, q: &QParameter, n: u64) -> LogRealValue {
    let prec = q.prec();
    let l = Float::with_val(prec, ln2(prec) + log_abs_a) + q.log_q() * n - q.log_one_minus_q();
    LogRealValue::from_log(l)
}

/// `(a;q)_n = prod_{k<n} (1 - a q^k)`.
pub fn qpoch_finite(a: &LogRealValue, q: &QParameter, n: u64) -> LogRealValue {
    let prec = q.prec();
    let mut acc = LogRealValue::one(prec);
    if a.is_zero() {
        return acc;
    }
    let lq = q.log_q();
    for k in 0..n {
        let x = a.scale_log(&Float::with_val(prec, &lq * k));
        let f = one_minus(&x);
        if f.is_zero() {
            return LogRealValue::zero(prec);
        }
        acc = &acc * &f;
    }
    acc
}

/// `(a;q)_inf` truncated at the certified index, with its tail bound.
pub fn qpoch_infinite(
    a: &LogRealValue,
    q: &QParameter,
    tol: Tolerance,
) -> Result<(LogRealValue, TailBound)> {
    let prec = q.prec();
    if a.is_zero() {
        return Ok((
            LogRealValue::one(prec),
            TailBound { value: LogRealValue::zero(prec), n_terms: 0 },
        ));
    }
    let mut n = certified_terms(a.logmag().to_f64(), q, tol)?;
    // Guard against f64 rounding at the boundary.
    let limit = tol.at_most_half().ln();
    while tail_value(a.logmag(), q, n).logmag().to_f64() >= limit {
        n += 1;
    }
    let value = qpoch_finite(a, q, n);
    Ok((value, TailBound { value: tail_value(a.logmag(), q, n), n_terms: n }))
}

/// `log (q^beta; q)_inf` for `beta > 0`, as a plain float.
pub(crate) fn log_qpoch_power(beta: &Float, q: &QParameter, tol: Tolerance) -> Result<Float> {
    let (v, _) = qpoch_infinite(&q.pow(beta), q, tol)?;
    Ok(v.logmag().clone())
}

/// `Gamma_q(z) = (q;q)_inf / (q^z;q)_inf * (1-q)^(1-z)`.
pub fn qgamma(z: &Float, q: &QParameter) -> Result<LogRealValue> {
    let prec = q.prec();
    if *z <= 0u32 && z.is_integer() {
        return Err(Error::Pole { function: "q-Gamma", at: z.to_string() });
    }
    let tol = q.working_tolerance();
    let (num, _) = qpoch_infinite(&q.pow_int(1), q, tol)?;
    let (den, _) = qpoch_infinite(&q.pow(z), q, tol)?;
    let one_minus_z = Float::with_val(prec, 1u32 - z);
    let factor = LogRealValue::from_log(q.log_one_minus_q() * one_minus_z);
    Ok(&(&num / &den) * &factor)
}

/// Truncated small-`t` expansion of `log (q^x;q)_inf` with `q = exp(-t)`:
///
/// `-pi^2/(6t) + (1/2 - x) log t + log(2 pi)/2 - log Gamma(x)
///  - sum_{k=1}^{p} B_k B_{k+1}(x) t^k / (k (k+1)!)`
///
/// with `B_1 = -1/2`. At `x = 1` the first correction is `+t/24`; the `t^2`
/// term is `-B_3(x) t^2 / 72`. For `x` in `{1/2, 1}` every term past `k = 1`
/// vanishes and the remainder is exponentially small.
pub fn mcintosh_log_qpoch(x: &Float, q: &QParameter, p: u32) -> Result<Float> {
    if !(*x > 0u32) {
        return Err(Error::Domain(format!("expansion needs x > 0, got {x}")));
    }
    if p == 0 || p > MAX_MCINTOSH_ORDER {
        return Err(Error::UnsupportedOrder { order: p, max: MAX_MCINTOSH_ORDER });
    }
    let prec = q.prec();
    let pi = pi(prec);
    let t = Float::with_val(prec, q.t() * &pi);
    let x = Float::with_val(prec, x);
    let mut acc = -Float::with_val(prec, &pi * &pi) / Float::with_val(prec, &t * 6u32);
    let half_minus_x = Float::with_val(prec, 0.5f64 - &x);
    acc += half_minus_x * Float::with_val(prec, t.ln_ref());
    acc += Float::with_val(prec, &pi * 2u32).ln() / 2u32;
    acc -= Float::with_val(prec, x.ln_gamma_ref());
    let mut t_pow = Float::with_val(prec, 1);
    let mut factorial = Rational::from(1);
    for k in 1..=p {
        t_pow *= &t;
        factorial *= k + 1;
        let bk = bernoulli_number(k)?;
        let coeff = Float::with_val(prec, -bk / (Rational::from(k) * &factorial));
        acc += coeff * bernoulli_polynomial(k + 1, &x)? * &t_pow;
    }
    Ok(acc)
}

/// Leading behaviour of `(q^x;q)_inf` for `q = exp(-pi/lambda)`:
/// `sqrt(2) pi^(1-x) lambda^(x-1/2) / (Gamma(x) exp(pi lambda / 6))`.
pub fn log_qpoch_simplified(x: &Float, q: &QParameter) -> Result<LogRealValue> {
    if !(*x > 0u32) {
        return Err(Error::Domain(format!("expansion needs x > 0, got {x}")));
    }
    let prec = q.prec();
    let pi = pi(prec);
    let lambda = q.lambda();
    let mut l = ln2(prec) / 2u32;
    l += Float::with_val(prec, 1u32 - x) * Float::with_val(prec, pi.ln_ref());
    l += Float::with_val(prec, x - 0.5f64) * Float::with_val(prec, lambda.ln_ref());
    l -= Float::with_val(prec, x.ln_gamma_ref());
    l -= Float::with_val(prec, &pi * &lambda) / 6u32;
    Ok(LogRealValue::from_parts(Sign::Positive, l))
}

/// `log(1 - q^(beta+m))` for `m` in `start..end`, with prefix and suffix sums.
///
/// For `beta > 0` every factor lies in `(0, 1)`, so only logs are stored.
pub(crate) struct PowerTable {
    start: u64,
    /// `prefix[j] = sum_{m=start}^{start+j-1} log(1 - q^(beta+m))`.
    prefix: Vec<Float>,
    /// `suffix[j] = sum_{m=start+j}^{end-1} log(1 - q^(beta+m))`.
    suffix: Vec<Float>,
}

impl PowerTable {
    pub(crate) fn new(beta: &Float, q: &QParameter, start: u64, end: u64) -> Self {
        let prec = q.prec();
        let lq = q.log_q();
        let len = (end - start) as usize;
        let mut logs = Vec::with_capacity(len);
        for m in start..end {
            let e = Float::with_val(prec, Float::with_val(prec, beta + m) * &lq).exp();
            logs.push((-e).ln_1p());
        }
        let mut prefix = Vec::with_capacity(len + 1);
        let mut acc = Float::new(prec);
        prefix.push(acc.clone());
        for l in &logs {
            acc += l;
            prefix.push(acc.clone());
        }
        let mut suffix = vec![Float::new(prec); len + 1];
        let mut acc = Float::new(prec);
        for j in (0..len).rev() {
            acc += &logs[j];
            suffix[j] = acc.clone();
        }
        PowerTable { start, prefix, suffix }
    }

    /// Table long enough that the suffix from any index `<= last` is a
    /// certified `(q^(beta+k);q)_inf` to tolerance `tol`.
    pub(crate) fn certified(
        beta: &Float,
        q: &QParameter,
        start: u64,
        last: u64,
        tol: Tolerance,
    ) -> Result<Self> {
        let lq = q.log_q().to_f64();
        let extra = certified_terms(beta.to_f64() * lq + last as f64 * lq, q, tol)?;
        Ok(PowerTable::new(beta, q, start, last + extra.max(1)))
    }

    /// `log (q^(beta+start); q)_j` relative to `start`.
    pub(crate) fn log_finite(&self, m: u64) -> &Float {
        &self.prefix[(m - self.start) as usize]
    }

    /// `log (q^(beta+k); q)_inf` up to the certified tail.
    pub(crate) fn log_infinite_from(&self, k: u64) -> &Float {
        &self.suffix[(k - self.start) as usize]
    }
}
