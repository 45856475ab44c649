//! Named specializations summed directly from their defining series.

use rug::Float;

use super::window::{gaussian_window, log_bound};
use super::{log_abs_f64, one, ConfluentParams, Evaluation};
use crate::error::{Error, Result};
use crate::numkernel::{LogComplexValue, LogRealValue, LogSum, Sign, Tolerance};
use crate::qpochhammer::{qpoch_infinite, PowerTable, QParameter};

/// `(-1)^k`.
fn alternating(k: u64) -> Sign {
    Sign::Negative.pow(k)
}

/// `A_q(z) = sum_{k>=0} q^(k^2) (-z)^k / (q;q)_k`.
pub fn ramanujan_aq(z: &LogRealValue, q: &QParameter, tol: Tolerance) -> Result<LogRealValue> {
    ramanujan_aq_stats(z, q, tol)?.real()
}

pub fn ramanujan_aq_stats(z: &LogRealValue, q: &QParameter, tol: Tolerance) -> Result<Evaluation> {
    let prec = q.prec();
    let spread = -log_bound(&one(prec), q)?;
    let win = gaussian_window(1.0, q.log_q().to_f64(), log_abs_f64(z), spread, tol)?;
    let table = PowerTable::new(&one(prec), q, 0, win.hi);
    let lq = q.log_q();
    let neg_z = z.sign().flip();
    let mut sum = LogSum::new(prec);
    for k in win.lo..=win.hi {
        let sign = neg_z.pow(k);
        if sign == Sign::Zero {
            sum.push(LogRealValue::zero(prec));
            continue;
        }
        let mut l = Float::with_val(prec, &lq * (k * k)) - table.log_finite(k);
        if k > 0 {
            l += Float::with_val(prec, z.logmag() * k);
        }
        sum.push(LogRealValue::from_parts(sign, l));
    }
    Ok(Evaluation::from_sum(sum.finish()))
}

/// `J_nu^(2)(z;q) = (q^(nu+1);q)_inf / (q;q)_inf (z/2)^nu
///  sum_k q^(k^2 + k nu) (-1)^k (z/2)^(2k) / (q, q^(nu+1); q)_k`.
///
/// `z` must lie on a quarter-phase axis with `i^(p nu)` a quarter phase;
/// the principal branch puts `p = 3` at argument `-pi/2`.
pub fn jackson_j2(z: &LogComplexValue, nu: &Float, q: &QParameter, tol: Tolerance) -> Result<LogComplexValue> {
    Ok(jackson_j2_stats(z, nu, q, tol)?.value)
}

pub fn jackson_j2_stats(z: &LogComplexValue, nu: &Float, q: &QParameter, tol: Tolerance) -> Result<Evaluation> {
    let prec = q.prec();
    if !(*nu > -1i32) {
        return Err(Error::Domain(format!("Jackson q-Bessel needs nu > -1, got {nu}")));
    }
    if z.is_zero() {
        return match nu.cmp0() {
            Some(std::cmp::Ordering::Greater) => Ok(zero_eval(prec)),
            Some(std::cmp::Ordering::Equal) => Ok(one_eval(prec)),
            _ => Err(Error::Pole { function: "Jackson q-Bessel", at: "0".into() }),
        };
    }
    let p: i64 = match z.quarter_phase() {
        3 => -1,
        p => p as i64,
    };
    let phase_nu = Float::with_val(prec, nu * p);
    if !phase_nu.is_integer() {
        return Err(Error::PhaseModel(format!("(z/2)^nu leaves the axes for phase {p}, nu = {nu}")));
    }
    let phase_nu = phase_nu.to_f64() as i64;

    let beta = Float::with_val(prec, nu + 1u32);
    let lq = q.log_q();
    let log_half_r = Float::with_val(prec, z.abs().logmag() - crate::numkernel::ln2(prec));
    let log_w = Float::with_val(prec, nu * &lq) + Float::with_val(prec, &log_half_r * 2u32);
    let spread = -log_bound(&one(prec), q)? - log_bound(&beta, q)?;
    let win = gaussian_window(1.0, lq.to_f64(), log_w.to_f64(), spread, tol)?;
    let q_table = PowerTable::new(&one(prec), q, 0, win.hi);
    let b_table = PowerTable::new(&beta, q, 0, win.hi);

    let mut sum = LogSum::new(prec);
    for k in win.lo..=win.hi {
        let mut l = Float::with_val(prec, &lq * (k * k));
        l += Float::with_val(prec, &log_w * k);
        l -= q_table.log_finite(k);
        l -= b_table.log_finite(k);
        let sign = if (1 + p).rem_euclid(2) == 1 { alternating(k) } else { Sign::Positive };
        sum.push(LogRealValue::from_parts(sign, l));
    }

    let ptol = tol.divided(4.0);
    let (num, _) = qpoch_infinite(&q.pow(&beta), q, ptol)?;
    let (den, _) = qpoch_infinite(&q.pow_int(1), q, ptol)?;
    let power = LogRealValue::from_log(Float::with_val(prec, &log_half_r * nu));
    let prefactor = LogComplexValue::on_axis(phase_nu, &(&num / &den) * &power);
    Ok(Evaluation::scaled(sum.finish(), &prefactor))
}

/// `h_n(sinh xi | q) = sum_{k=0}^{n} (q;q)_n q^(k(k-n)) (-1)^k e^((n-2k) xi)
///  / ((q;q)_k (q;q)_(n-k))`, with `exp_xi = e^xi` on a quarter-phase axis.
pub fn ismail_masson_h(n: u64, exp_xi: &LogComplexValue, q: &QParameter) -> Result<LogComplexValue> {
    Ok(ismail_masson_h_stats(n, exp_xi, q)?.value)
}

pub fn ismail_masson_h_stats(n: u64, exp_xi: &LogComplexValue, q: &QParameter) -> Result<Evaluation> {
    let prec = q.prec();
    if exp_xi.is_zero() {
        return Err(Error::Domain("e^xi must be nonzero".into()));
    }
    let p = exp_xi.quarter_phase() as i64;
    let lr = exp_xi.abs().logmag();
    let lq = q.log_q();
    let table = PowerTable::new(&one(prec), q, 0, n);
    let mut sum = LogSum::new(prec);
    for k in 0..=n {
        let mut l = table.log_finite(n).clone();
        l -= table.log_finite(k);
        l -= table.log_finite(n - k);
        l += Float::with_val(prec, &lq * (k as i64 * (k as i64 - n as i64)));
        l += Float::with_val(prec, lr * (n as i64 - 2 * k as i64));
        let sign = if (1 + p) % 2 == 1 { alternating(k) } else { Sign::Positive };
        sum.push(LogRealValue::from_parts(sign, l));
    }
    let prefactor = LogComplexValue::i_pow(p * n as i64, prec);
    Ok(Evaluation::scaled(sum.finish(), &prefactor))
}

/// `S_n(x;q) = sum_{k=0}^{n} q^(k^2) (-x)^k / ((q;q)_k (q;q)_(n-k))`.
pub fn stieltjes_wigert_eval(n: u64, x: &LogRealValue, q: &QParameter) -> Result<LogRealValue> {
    stieltjes_wigert_eval_stats(n, x, q)?.real()
}

pub fn stieltjes_wigert_eval_stats(n: u64, x: &LogRealValue, q: &QParameter) -> Result<Evaluation> {
    finite_family(n, x, q, None)
}

/// `L_n^(alpha)(x;q) = sum_{k=0}^{n} q^(k^2 + alpha k) (-x)^k (q^(alpha+1);q)_n
///  / ((q;q)_k (q, q^(alpha+1); q)_(n-k))`.
pub fn q_laguerre_eval(n: u64, alpha: &Float, x: &LogRealValue, q: &QParameter) -> Result<LogRealValue> {
    q_laguerre_eval_stats(n, alpha, x, q)?.real()
}

pub fn q_laguerre_eval_stats(n: u64, alpha: &Float, x: &LogRealValue, q: &QParameter) -> Result<Evaluation> {
    if !(*alpha > -1i32) {
        return Err(Error::Domain(format!("q-Laguerre needs alpha > -1, got {alpha}")));
    }
    finite_family(n, x, q, Some(alpha))
}

fn finite_family(n: u64, x: &LogRealValue, q: &QParameter, alpha: Option<&Float>) -> Result<Evaluation> {
    let prec = q.prec();
    let lq = q.log_q();
    let table = PowerTable::new(&one(prec), q, 0, n);
    let c_table = alpha.map(|a| PowerTable::new(&Float::with_val(prec, a + 1u32), q, 0, n));
    let neg_x = x.sign().flip();
    let mut sum = LogSum::new(prec);
    for k in 0..=n {
        let sign = neg_x.pow(k);
        if sign == Sign::Zero {
            sum.push(LogRealValue::zero(prec));
            continue;
        }
        let mut l = Float::with_val(prec, &lq * (k * k));
        l -= table.log_finite(k);
        l -= table.log_finite(n - k);
        if k > 0 {
            l += Float::with_val(prec, x.logmag() * k);
        }
        if let (Some(a), Some(c)) = (alpha, &c_table) {
            l += Float::with_val(prec, Float::with_val(prec, a * k) * &lq);
            l += c.log_finite(n);
            l -= c.log_finite(n - k);
        }
        sum.push(LogRealValue::from_parts(sign, l));
    }
    Ok(Evaluation::from_sum(sum.finish()))
}

/// `r phi s (a; b | q, z) = sum_k (a;q)_k / (q, b; q)_k
///  ((-1)^k q^(k(k-1)/2))^(s+1-r) z^k`, written with `l = (s+1-r)/2` as
///  `q^(l k^2) (z q^(-l))^k (-1)^(k(s+1-r))`.
pub fn rphis_eval(params: &ConfluentParams, q: &QParameter, z: &LogRealValue, tol: Tolerance) -> Result<LogRealValue> {
    rphis_eval_stats(params, q, z, tol)?.real()
}

pub fn rphis_eval_stats(params: &ConfluentParams, q: &QParameter, z: &LogRealValue, tol: Tolerance) -> Result<Evaluation> {
    let prec = q.prec();
    let spec = params.spec();
    if z.is_zero() {
        return Ok(one_eval(prec));
    }
    let ell = params.ell();
    let lq = q.log_q();
    let log_w = Float::with_val(prec, z.logmag() - Float::with_val(prec, ell * &lq));
    // (a;q)_k / (q, b; q)_k lies in [(a;q)_inf, 1 / (q, b; q)_inf].
    let upper = -log_bound(&one(prec), q)? - spec.betas().iter().map(|b| log_bound(b, q)).sum::<Result<f64>>()?;
    let lower = spec.alphas().iter().map(|a| log_bound(a, q)).sum::<Result<f64>>()?;
    let win = gaussian_window(ell.to_f64(), lq.to_f64(), log_w.to_f64(), upper - lower, tol)?;

    let q_table = PowerTable::new(&one(prec), q, 0, win.hi);
    let a_tables = spec.alphas().iter().map(|a| PowerTable::new(a, q, 0, win.hi)).collect::<Vec<_>>();
    let b_tables = spec.betas().iter().map(|b| PowerTable::new(b, q, 0, win.hi)).collect::<Vec<_>>();
    let flip = (params.s() + 1 - params.r()) % 2 == 1;
    let quad = Float::with_val(prec, ell * &lq);
    let mut sum = LogSum::new(prec);
    for k in win.lo..=win.hi {
        let mut l = Float::with_val(prec, &quad * (k * k));
        l += Float::with_val(prec, &log_w * k);
        l -= q_table.log_finite(k);
        a_tables.iter().for_each(|t| l += t.log_finite(k));
        b_tables.iter().for_each(|t| l -= t.log_finite(k));
        let mut sign = z.sign().pow(k);
        if flip {
            sign = sign.times(alternating(k));
        }
        sum.push(LogRealValue::from_parts(sign, l));
    }
    Ok(Evaluation::from_sum(sum.finish()))
}

fn zero_eval(prec: u32) -> Evaluation {
    Evaluation { value: LogComplexValue::zero(prec), abs_sum: LogRealValue::zero(prec), terms: 1 }
}

fn one_eval(prec: u32) -> Evaluation {
    Evaluation { value: LogComplexValue::one(prec), abs_sum: LogRealValue::one(prec), terms: 1 }
}
