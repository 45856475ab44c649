//! Jacobi theta functions for purely imaginary `tau = i s`.
//!
//! Arguments are either real (`v`) or purely imaginary (`v = i w`). In both
//! cases `theta_2..theta_4` are real; `theta_1` is real for real `v` and
//! imaginary for imaginary `v`, so every value fits the quarter-phase model.
//!
//! Conventions, with `Q = exp(-pi s)`:
//! `theta_3(v) = sum_k Q^(k^2) e^(2 pi i k v)`,
//! `theta_4(v) = theta_3(v + 1/2)`,
//! `theta_2(v) = sum_k Q^((k+1/2)^2) e^((2k+1) pi i v)`,
//! `theta_1(v) = -i sum_k (-1)^k Q^((k+1/2)^2) e^((2k+1) pi i v)`.

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{cos_pi, log_add, pi, sin_pi, LogComplexValue, LogRealValue, LogSum, Sign, Tolerance};
use crate::qpochhammer::{certified_terms, qpoch_infinite, QParameter};

const MAX_SERIES_TERMS: u64 = 10_000_000;

/// Elliptic argument on one of the two axes.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaArg {
    /// `v` real.
    Real(Float),
    /// `v = i w` with `w` real.
    Imag(Float),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPoint {
    index: u8,
    arg: ThetaArg,
    tau_im: Float,
}

impl ThetaPoint {
    pub fn new(index: u8, arg: ThetaArg, tau_im: Float) -> Result<Self> {
        if !(1..=4).contains(&index) {
            return Err(Error::Domain(format!("theta index must be 1..=4, got {index}")));
        }
        if !(tau_im > 0u32) || tau_im.is_infinite() {
            return Err(Error::Domain(format!("Im(tau) must be positive, got {tau_im}")));
        }
        Ok(ThetaPoint { index, arg, tau_im })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn arg(&self) -> &ThetaArg {
        &self.arg
    }

    pub fn tau_im(&self) -> &Float {
        &self.tau_im
    }

    pub fn prec(&self) -> u32 {
        self.tau_im.prec()
    }

    pub fn with_arg(&self, arg: ThetaArg) -> Self {
        ThetaPoint { arg, ..self.clone() }
    }
}

/// Multiplicative form `theta(z; q)` with `z = e^(2 pi i v) > 0` and `q` the nome.
#[derive(Clone, Debug)]
pub struct NomeForm {
    pub z: LogRealValue,
    pub q: QParameter,
}

impl NomeForm {
    pub fn new(z: LogRealValue, q: QParameter) -> Result<Self> {
        if z.sign() != Sign::Positive {
            return Err(Error::Domain("multiplicative theta argument must be positive".into()));
        }
        Ok(NomeForm { z, q })
    }

    /// `z = e^(-2 pi w)` with `v = i w`.
    pub fn to_point(&self, index: u8) -> Result<ThetaPoint> {
        let prec = self.q.prec();
        let w = -Float::with_val(prec, self.z.logmag()) / Float::with_val(prec, pi(prec) * 2u32);
        ThetaPoint::new(index, ThetaArg::Imag(w), self.q.t().clone())
    }
}

/// Half-offset for the index: terms run over `m = k + 1/2` for indices 1, 2.
fn is_half(index: u8) -> bool {
    index <= 2
}

/// Log envelope `m^2 log Q + 2 pi m |w|` of the `m`-th pair.
fn envelope(m: f64, log_q: f64, w_abs: f64) -> f64 {
    m * m * log_q + 2.0 * std::f64::consts::PI * m * w_abs
}

/// Number of pairs `k = 0..K` needed so the discarded pairs sum below
/// `eps` times the largest pair envelope.
fn series_terms(index: u8, log_q: f64, w_abs: f64, tol: Tolerance) -> Result<u64> {
    let off = if is_half(index) { 0.5 } else { 0.0 };
    let peak = (std::f64::consts::PI * w_abs / -log_q).max(off);
    let fmax = envelope(peak, log_q, w_abs);
    let width = ((-tol.ln() + 10.0) / -log_q).sqrt() + 2.0;
    let estimate = peak + width;
    if !estimate.is_finite() || estimate > MAX_SERIES_TERMS as f64 {
        return Err(Error::Regime { needed: estimate.min(u64::MAX as f64) as u64 });
    }
    let mut k = (estimate.floor() as u64).max(1);
    loop {
        let m = k as f64 + off;
        let a = envelope(m, log_q, w_abs);
        let b = envelope(m + 1.0, log_q, w_abs);
        if m > peak && b < a {
            // Each pair is at most twice its envelope; geometric tail from m.
            let tail = std::f64::consts::LN_2 + a - (-(b - a).exp()).ln_1p();
            if tail < tol.ln() + fmax {
                return Ok(k);
            }
        }
        k += 1;
        if k > MAX_SERIES_TERMS {
            return Err(Error::Regime { needed: k });
        }
    }
}

/// Direct bilateral series with `k, -k` (or `k, -k-1`) terms paired.
pub fn theta_series(p: &ThetaPoint, tol: Tolerance) -> Result<LogComplexValue> {
    let prec = p.prec();
    let pi = pi(prec);
    let log_q = -Float::with_val(prec, &pi * &p.tau_im);
    let w_abs = match &p.arg {
        ThetaArg::Real(_) => 0.0,
        ThetaArg::Imag(w) => w.to_f64().abs(),
    };
    let terms = series_terms(p.index, log_q.to_f64(), w_abs, tol)?;
    let half = is_half(p.index);
    let mut sum = LogSum::new(prec);
    if !half {
        sum.push(LogRealValue::one(prec));
    }
    let k_start = if half { 0 } else { 1 };
    let ln2 = Float::with_val(prec, 2).ln();
    for k in k_start..terms {
        // m = k + 1/2 for indices 1, 2; m = k otherwise. Work with 2m.
        let two_m = if half { 2 * k + 1 } else { 2 * k };
        let m = Float::with_val(prec, two_m) / 2u32;
        let gauss = Float::with_val(prec, &m * &m) * &log_q;
        let alternating = match p.index {
            1 | 4 => k % 2 == 1,
            _ => false,
        };
        let pair = match &p.arg {
            ThetaArg::Real(v) => {
                // 2 Q^(m^2) cos(2 pi m v), or sin for index 1.
                let x = Float::with_val(prec, v * two_m);
                let trig = if p.index == 1 { sin_pi(&x) } else { cos_pi(&x) };
                LogRealValue::from_float(&trig).scale_log(&Float::with_val(prec, &gauss + &ln2))
            }
            ThetaArg::Imag(w) => {
                // Q^(m^2) (e^(2 pi m w) +/- e^(-2 pi m w)).
                let e = Float::with_val(prec, &pi * w) * &m * 2u32;
                let up = LogRealValue::from_log(Float::with_val(prec, &gauss + &e));
                let down = LogRealValue::from_log(Float::with_val(prec, &gauss - &e));
                if p.index == 1 {
                    log_add(&up, &-down)
                } else {
                    log_add(&up, &down)
                }
            }
        };
        sum.push(if alternating { -pair } else { pair });
    }
    let value = sum.finish().value;
    let axis = match (&p.arg, p.index) {
        (ThetaArg::Imag(_), 1) => 1,
        _ => 0,
    };
    Ok(LogComplexValue::on_axis(axis, value))
}

/// `prod_{m>=0} (1 - 2 s x_m cos(phi) + x_m^2)` with `x_m = rho Q2^m`, `phi = 2 pi v`,
/// i.e. `(a;Q2)_inf (conj(a);Q2)_inf` for `a = s rho e^(i phi)`.
fn conjugate_pair_product(
    log_rho: &Float,
    negate: bool,
    v: &Float,
    q2: &QParameter,
    tol: Tolerance,
) -> Result<LogRealValue> {
    let prec = q2.prec();
    // |(1+r)|^2 - 1 <= 3|r| for |r| <= 1/2.
    let n = certified_terms(log_rho.to_f64(), q2, tol.divided(3.0))?;
    let s2 = {
        let t = if negate { cos_pi(v) } else { sin_pi(v) };
        Float::with_val(prec, &t * &t)
    };
    let lq2 = q2.log_q();
    let mut acc = Float::new(prec);
    for m in 0..n {
        let lx = Float::with_val(prec, &lq2 * m) + log_rho;
        let x = lx.clone().exp();
        let one_minus_x = -Float::with_val(prec, lx.exp_m1_ref());
        // 1 -+ 2 x cos(2 pi v) + x^2 = (1 - x)^2 + 4 x sin^2(pi v)  (or cos^2)
        let f = Float::with_val(prec, &one_minus_x * &one_minus_x) + Float::with_val(prec, &x * &s2) * 4u32;
        acc += f.ln();
    }
    Ok(LogRealValue::from_log(acc))
}

/// Jacobi triple product.
pub fn theta_product(p: &ThetaPoint, tol: Tolerance) -> Result<LogComplexValue> {
    let prec = p.prec();
    let pi = pi(prec);
    let part = tol.divided(4.0);
    let q2 = QParameter::new(Float::with_val(prec, &p.tau_im * 2u32))?;
    let log_q = -Float::with_val(prec, &pi * &p.tau_im);
    let (euler, _) = qpoch_infinite(&q2.pow_int(1), &q2, part)?;
    // Pochhammer base is Q^2 for indices 1, 2 and Q for 3, 4; sign is + for 1, 4.
    let log_rho = if is_half(p.index) { Float::with_val(prec, &log_q * 2u32) } else { log_q.clone() };
    let negate = matches!(p.index, 2 | 3);
    let (pochs, axis) = match &p.arg {
        ThetaArg::Real(v) => (conjugate_pair_product(&log_rho, negate, v, &q2, part)?, 0),
        ThetaArg::Imag(w) => {
            // z = e^(2 pi i v) = e^(-2 pi w).
            let log_z = -Float::with_val(prec, &pi * w) * 2u32;
            let sign = if negate { Sign::Negative } else { Sign::Positive };
            let a1 = LogRealValue::from_parts(sign, Float::with_val(prec, &log_rho + &log_z));
            let a2 = LogRealValue::from_parts(sign, Float::with_val(prec, &log_rho - &log_z));
            let (f1, _) = qpoch_infinite(&a1, &q2, part)?;
            let (f2, _) = qpoch_infinite(&a2, &q2, part)?;
            (&f1 * &f2, if p.index == 1 { 1 } else { 0 })
        }
    };
    let mut value = &euler * &pochs;
    if is_half(p.index) {
        // 2 Q^(1/4) sin(pi v) or cos(pi v); sinh / cosh for v = i w.
        let trig = match &p.arg {
            ThetaArg::Real(v) => {
                LogRealValue::from_float(&if p.index == 1 { sin_pi(v) } else { cos_pi(v) })
            }
            ThetaArg::Imag(w) => {
                let x = Float::with_val(prec, &pi * w);
                LogRealValue::from_float(&if p.index == 1 { x.sinh() } else { x.cosh() })
            }
        };
        let pre = Float::with_val(prec, Float::with_val(prec, 2).ln() + Float::with_val(prec, &log_q / 4u32));
        value = &value * &trig.scale_log(&pre);
    }
    Ok(LogComplexValue::on_axis(axis, value))
}

/// Image of `p` under `tau -> -1/tau`, `v -> v/tau`, and the multiplier `M`
/// with `theta_image(image) = M * theta_index(p)`.
///
/// Index map: 1 -> 1, 2 -> 4, 3 -> 3, 4 -> 2. With `tau = i s`,
/// `M = sqrt(s) e^(pi v^2 / s)` for real `v` and `sqrt(s) e^(-pi w^2 / s)`
/// for `v = i w`; index 1 carries an extra factor `-i`.
pub fn theta_transform(p: &ThetaPoint) -> (ThetaPoint, LogComplexValue) {
    let prec = p.prec();
    let s = &p.tau_im;
    let pi = pi(prec);
    let (arg, sign_exp, v) = match &p.arg {
        ThetaArg::Real(v) => (ThetaArg::Imag(-Float::with_val(prec, v / s)), 1i32, v),
        ThetaArg::Imag(w) => (ThetaArg::Real(Float::with_val(prec, w / s)), -1i32, w),
    };
    let gauss = Float::with_val(prec, v * v) * &pi / s * sign_exp;
    let log_m = Float::with_val(prec, s.ln_ref()) / 2u32 + gauss;
    let index = match p.index {
        2 => 4,
        4 => 2,
        i => i,
    };
    let phase = if p.index == 1 { -1 } else { 0 };
    let image = ThetaPoint { index, arg, tau_im: Float::with_val(prec, s.recip_ref()) };
    (image, LogComplexValue::on_axis(phase, LogRealValue::from_log(log_m)))
}

/// Series when `Im(tau) >= 1`, otherwise the series at the transformed point.
pub fn theta_auto(p: &ThetaPoint, tol: Tolerance) -> Result<LogComplexValue> {
    if p.tau_im >= 1u32 {
        return theta_series(p, tol);
    }
    let (image, multiplier) = theta_transform(p);
    Ok(&theta_series(&image, tol)? / &multiplier)
}

/// `theta_index(x; q)` for real nonzero `x` of either sign.
///
/// Negative `x` shifts `v` by `1/2`, which swaps 3 with 4 and 1 with 2
/// (the latter up to sign, fixed here).
pub fn theta_nome_signed(index: u8, x: &LogRealValue, q: &QParameter, tol: Tolerance) -> Result<LogComplexValue> {
    match x.sign() {
        Sign::Zero => Err(Error::Domain("theta argument must be nonzero".into())),
        Sign::Positive => theta_auto(&NomeForm::new(x.clone(), q.clone())?.to_point(index)?, tol),
        Sign::Negative => {
            let mapped = match index {
                1 => 2,
                2 => 1,
                3 => 4,
                _ => 3,
            };
            let value = theta_auto(&NomeForm::new(x.abs(), q.clone())?.to_point(mapped)?, tol)?;
            // theta_1(v + 1/2) = theta_2(v), theta_2(v + 1/2) = -theta_1(v).
            Ok(if index == 2 { -&value } else { value })
        }
    }
}
