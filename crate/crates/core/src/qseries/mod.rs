//! The `g` and `h` functions and their named specializations.
//!
//! With `a_j = q^alpha_j`, `b_k = q^beta_k`, `c_i = q^gamma_i`:
//!
//! `g(z) = sum_{k>=0} (q^(k+1), b q^k; q)_inf q^(l k^2) (-z)^k / (a q^k; q)_inf`
//!
//! `h_n(z) = sum_{k=0}^{n} (q^(k+1), b q^k; q)_inf q^(l k^2) (-z)^k
//!           (q, c; q)_n / ((a q^k; q)_inf (q, c; q)_(n-k))`
//!
//! Infinite sums are cut to a window around the Gaussian peak of
//! `q^(l k^2) |z|^k`. The window is certified: outside it, the terms are
//! bounded by the Gaussian times a uniform bound on the Pochhammer quotient,
//! and their total stays below `eps` times the smallest possible peak term.

mod families;
mod window;

pub use families::{
    ismail_masson_h, ismail_masson_h_stats, jackson_j2, jackson_j2_stats, q_laguerre_eval,
    q_laguerre_eval_stats, ramanujan_aq, ramanujan_aq_stats, rphis_eval, rphis_eval_stats,
    stieltjes_wigert_eval, stieltjes_wigert_eval_stats,
};

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{LogComplexValue, LogRealValue, LogSum, Sign, SumOutcome, Tolerance};
use crate::qpochhammer::{qpoch_infinite, PowerTable, QParameter};
use window::{gaussian_window, log_bound};

/// Value of a series together with the sum of the absolute values of its
/// terms (same prefactor applied), which measures cancellation.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: LogComplexValue,
    pub abs_sum: LogRealValue,
    pub terms: usize,
}

impl Evaluation {
    fn from_sum(sum: SumOutcome) -> Self {
        Evaluation { value: LogComplexValue::from_real(sum.value), abs_sum: sum.abs_sum, terms: sum.terms }
    }

    fn scaled(sum: SumOutcome, prefactor: &LogComplexValue) -> Self {
        Evaluation {
            value: &LogComplexValue::from_real(sum.value) * prefactor,
            abs_sum: &sum.abs_sum * prefactor.abs(),
            terms: sum.terms,
        }
    }

    /// The value as a real number; errors if it is off the real axis.
    pub fn real(&self) -> Result<LogRealValue> {
        self.value
            .as_real()
            .ok_or_else(|| Error::PhaseModel(format!("expected a real value, got {}", self.value)))
    }
}

/// Exponents of the parameters of `g` and `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    alphas: Vec<Float>,
    betas: Vec<Float>,
    gammas: Vec<Float>,
    ell: Float,
}

impl SeriesSpec {
    pub fn new(alphas: Vec<Float>, betas: Vec<Float>, gammas: Vec<Float>, ell: Float) -> Result<Self> {
        for (name, list) in [("alpha", &alphas), ("beta", &betas), ("gamma", &gammas)] {
            if let Some(x) = list.iter().find(|x| !(**x > 0u32)) {
                return Err(Error::Domain(format!("{name} exponents must be positive, got {x}")));
            }
        }
        if !(ell > 0u32) {
            return Err(Error::Domain(format!("ell must be positive, got {ell}")));
        }
        Ok(SeriesSpec { alphas, betas, gammas, ell })
    }

    /// No `a`, `b` or `c` parameters.
    pub fn empty(ell: Float) -> Result<Self> {
        SeriesSpec::new(Vec::new(), Vec::new(), Vec::new(), ell)
    }

    pub fn alphas(&self) -> &[Float] {
        &self.alphas
    }

    pub fn betas(&self) -> &[Float] {
        &self.betas
    }

    pub fn gammas(&self) -> &[Float] {
        &self.gammas
    }

    pub fn ell(&self) -> &Float {
        &self.ell
    }
}

/// Parameters of a confluent `r phi s` series, `l = (s + 1 - r)/2 > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfluentParams {
    spec: SeriesSpec,
    rho: Float,
}

impl ConfluentParams {
    pub fn new(alphas: Vec<Float>, betas: Vec<Float>, prec: u32) -> Result<Self> {
        let (r, s) = (alphas.len() as i64, betas.len() as i64);
        if s + 1 - r <= 0 {
            return Err(Error::Unsupported(format!(
                "non-confluent series (r = {r}, s = {s}); need s + 1 - r > 0"
            )));
        }
        let mut rho = Float::with_val(prec, -1);
        alphas.iter().for_each(|a| rho += a);
        betas.iter().for_each(|b| rho -= b);
        let ell = Float::with_val(prec, s + 1 - r) / 2u32;
        Ok(ConfluentParams { spec: SeriesSpec::new(alphas, betas, Vec::new(), ell)?, rho })
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    /// `sum alpha - sum beta - 1`.
    pub fn rho(&self) -> &Float {
        &self.rho
    }

    pub fn r(&self) -> usize {
        self.spec.alphas.len()
    }

    pub fn s(&self) -> usize {
        self.spec.betas.len()
    }

    pub fn ell(&self) -> &Float {
        &self.spec.ell
    }
}

/// `n mod 2`.
pub fn char_chi(n: u64) -> u64 {
    n % 2
}

fn one(prec: u32) -> Float {
    Float::with_val(prec, 1)
}

/// `log (q, b; q)_inf - log (a; q)_inf`, the `k = 0` weight.
fn log_weight_zero(spec: &SeriesSpec, q: &QParameter, tol: Tolerance) -> Result<LogRealValue> {
    let parts = 1 + spec.alphas.len() + spec.betas.len();
    let tol = tol.divided(parts as f64);
    let (mut acc, _) = qpoch_infinite(&q.pow_int(1), q, tol)?;
    for b in &spec.betas {
        acc = &acc * &qpoch_infinite(&q.pow(b), q, tol)?.0;
    }
    for a in &spec.alphas {
        acc = &acc / &qpoch_infinite(&q.pow(a), q, tol)?.0;
    }
    Ok(acc)
}

/// `log |z|` as f64, `-inf` for zero.
fn log_abs_f64(z: &LogRealValue) -> f64 {
    if z.is_zero() {
        f64::NEG_INFINITY
    } else {
        z.logmag().to_f64()
    }
}

pub fn g_eval(spec: &SeriesSpec, q: &QParameter, z: &LogRealValue, tol: Tolerance) -> Result<LogRealValue> {
    g_eval_stats(spec, q, z, tol)?.real()
}

pub fn g_eval_stats(spec: &SeriesSpec, q: &QParameter, z: &LogRealValue, tol: Tolerance) -> Result<Evaluation> {
    let prec = q.prec();
    if z.is_zero() {
        let w = log_weight_zero(spec, q, tol)?;
        return Ok(Evaluation { value: LogComplexValue::from_real(w.clone()), abs_sum: w, terms: 1 });
    }
    // Weight quotient lies in [(q, b; q)_inf, 1 / (a; q)_inf].
    let upper = -spec.alphas.iter().map(|a| log_bound(a, q)).sum::<Result<f64>>()?;
    let lower = log_bound(&one(prec), q)? + spec.betas.iter().map(|b| log_bound(b, q)).sum::<Result<f64>>()?;
    let ell = spec.ell.to_f64();
    let lq = q.log_q();
    let win = gaussian_window(ell, lq.to_f64(), log_abs_f64(z), upper - lower, tol)?;

    let parts = (1 + spec.alphas.len() + spec.betas.len()) as f64 * 2.0;
    let ptol = tol.divided(parts);
    let q_table = PowerTable::certified(&one(prec), q, win.lo, win.hi, ptol)?;
    let b_tables = spec
        .betas
        .iter()
        .map(|b| PowerTable::certified(b, q, win.lo, win.hi, ptol))
        .collect::<Result<Vec<_>>>()?;
    let a_tables = spec
        .alphas
        .iter()
        .map(|a| PowerTable::certified(a, q, win.lo, win.hi, ptol))
        .collect::<Result<Vec<_>>>()?;

    let neg_z = z.sign().flip();
    let quad = Float::with_val(prec, &spec.ell * &lq);
    let mut sum = LogSum::new(prec);
    for k in win.lo..=win.hi {
        let mut l = q_table.log_infinite_from(k).clone();
        b_tables.iter().for_each(|t| l += t.log_infinite_from(k));
        a_tables.iter().for_each(|t| l -= t.log_infinite_from(k));
        l += Float::with_val(prec, &quad * (k * k));
        l += Float::with_val(prec, z.logmag() * k);
        sum.push(LogRealValue::from_parts(neg_z.pow(k), l));
    }
    Ok(Evaluation::from_sum(sum.finish()))
}

pub fn h_eval(spec: &SeriesSpec, q: &QParameter, n: u64, z: &LogRealValue, tol: Tolerance) -> Result<LogRealValue> {
    h_eval_stats(spec, q, n, z, tol)?.real()
}

/// Exactly `n + 1` terms are summed.
pub fn h_eval_stats(spec: &SeriesSpec, q: &QParameter, n: u64, z: &LogRealValue, tol: Tolerance) -> Result<Evaluation> {
    let prec = q.prec();
    let parts = (1 + spec.alphas.len() + spec.betas.len()) as f64 * (n + 1) as f64;
    let ptol = tol.divided(parts);
    let q_table = PowerTable::certified(&one(prec), q, 0, n, ptol)?;
    let b_tables =
        spec.betas.iter().map(|b| PowerTable::certified(b, q, 0, n, ptol)).collect::<Result<Vec<_>>>()?;
    let a_tables =
        spec.alphas.iter().map(|a| PowerTable::certified(a, q, 0, n, ptol)).collect::<Result<Vec<_>>>()?;
    let c_tables = spec.gammas.iter().map(|c| PowerTable::new(c, q, 0, n)).collect::<Vec<_>>();

    let lq = q.log_q();
    let quad = Float::with_val(prec, &spec.ell * &lq);
    let neg_z = z.sign().flip();
    let mut sum = LogSum::new(prec);
    for k in 0..=n {
        let sign = neg_z.pow(k);
        if sign == Sign::Zero {
            sum.push(LogRealValue::zero(prec));
            continue;
        }
        let mut l = q_table.log_infinite_from(k).clone();
        b_tables.iter().for_each(|t| l += t.log_infinite_from(k));
        a_tables.iter().for_each(|t| l -= t.log_infinite_from(k));
        l += q_table.log_finite(n);
        l -= q_table.log_finite(n - k);
        for t in &c_tables {
            l += t.log_finite(n);
            l -= t.log_finite(n - k);
        }
        l += Float::with_val(prec, &quad * (k * k));
        if k > 0 {
            l += Float::with_val(prec, z.logmag() * k);
        }
        sum.push(LogRealValue::from_parts(sign, l));
    }
    Ok(Evaluation::from_sum(sum.finish()))
}

#[cfg(test)]
mod tests;
