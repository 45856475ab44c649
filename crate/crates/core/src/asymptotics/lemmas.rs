//! Finite-`n` theta representations with explicit remainder bounds.
//!
//! Each function returns the theta main term and a certificate pairing the
//! bound with the observed normalized residual. The bounds only hold for `n`
//! large enough; [`certificate_threshold`] finds where they start to hold.

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{LogRealValue, Tolerance};
use crate::qpochhammer::{qpoch_infinite, QParameter};
use crate::qseries::{char_chi, g_eval, h_eval, rphis_eval, ConfluentParams, SeriesSpec};
use crate::theta::theta_nome_signed;

#[derive(Clone, Debug)]
pub struct RemainderCertificate {
    pub n: u64,
    pub bound: LogRealValue,
    pub observed: LogRealValue,
}

impl RemainderCertificate {
    pub fn holds(&self) -> bool {
        self.observed.cmp_abs(&self.bound).is_le()
    }
}

/// Smallest `n0` such that every certificate with `n >= n0` holds; `None`
/// if the last one fails.
pub fn certificate_threshold(certs: &[RemainderCertificate]) -> Option<u64> {
    let mut sorted: Vec<&RemainderCertificate> = certs.iter().collect();
    sorted.sort_by_key(|c| c.n);
    let mut threshold = None;
    for c in sorted.iter().rev() {
        if !c.holds() {
            break;
        }
        threshold = Some(c.n);
    }
    threshold
}

fn nonzero(z: &LogRealValue) -> Result<()> {
    if z.is_zero() {
        return Err(Error::Domain("theta representation needs z != 0".into()));
    }
    Ok(())
}

fn theta_real(index: u8, x: &LogRealValue, q: &QParameter, tol: Tolerance) -> Result<LogRealValue> {
    theta_nome_signed(index, x, q, tol)?
        .as_real()
        .ok_or_else(|| Error::PhaseModel("theta value left the real axis".into()))
}

fn log_poch(a: &LogRealValue, q: &QParameter, tol: Tolerance) -> Result<LogRealValue> {
    Ok(qpoch_infinite(a, q, tol)?.0)
}

/// `(a_1, ..., a_r; q)_inf`.
fn alpha_product(spec: &SeriesSpec, q: &QParameter, tol: Tolerance) -> Result<LogRealValue> {
    let mut acc = LogRealValue::one(q.prec());
    for a in spec.alphas() {
        acc = &acc * &log_poch(&q.pow(a), q, tol)?;
    }
    Ok(acc)
}

/// `|normalized - theta|`.
fn residual(normalized: &LogRealValue, theta: &LogRealValue) -> LogRealValue {
    normalized.sub(theta).abs()
}

fn pow2(k: usize, prec: u32) -> LogRealValue {
    LogRealValue::from_log(Float::with_val(prec, rug::float::Constant::Log2) * k as u64)
}

/// `q^(n+1) / (1 - q)`.
fn geometric_tail(q: &QParameter, n: u64) -> LogRealValue {
    LogRealValue::from_log(q.log_q() * (n + 1) - q.log_one_minus_q())
}

/// `q^(e) |z|^k` for signed integer `k`.
fn gauss_piece(q: &QParameter, e: &Float, z: &LogRealValue, k: i64) -> LogRealValue {
    let prec = q.prec();
    LogRealValue::from_log(Float::with_val(prec, q.log_q() * e) + Float::with_val(prec, z.logmag() * k))
}

/// `g(q^(-4 n l) z) = z^(2n) q^(-4 n^2 l) {theta_4(1/z; q^l) + r_g}`.
pub fn lemma_g_theta_rep(
    spec: &SeriesSpec,
    q: &QParameter,
    z: &LogRealValue,
    n: u64,
    tol: Tolerance,
) -> Result<(LogRealValue, RemainderCertificate)> {
    nonzero(z)?;
    let prec = q.prec();
    let ell = spec.ell();
    let q_ell = q.powered(ell)?;
    let lq = q.log_q();
    let arg = z.scale_log(&Float::with_val(prec, -(Float::with_val(prec, ell * &lq) * (4 * n))));
    let exact = g_eval(spec, q, &arg, tol)?;
    let prefactor = z.powi(2 * n as i64).scale_log(&-Float::with_val(prec, Float::with_val(prec, ell * &lq) * (4 * n * n)));
    let theta = theta_real(4, &z.recip(), &q_ell, tol)?;
    let observed = residual(&(&exact / &prefactor), &theta);

    let theta3 = theta_real(3, &z.abs().recip(), &q_ell, tol)?;
    let r = spec.alphas().len();
    let s = spec.betas().len();
    let e = Float::with_val(prec, ell * (n * n));
    let tail = geometric_tail(q, n).add(&gauss_piece(q, &e, z, -(n as i64)));
    let bound = &(&(&pow2(s + r + 3, prec) * &theta3) / &alpha_product(spec, q, tol)?) * &tail;
    Ok((&prefactor * &theta, RemainderCertificate { n, bound, observed }))
}

/// `r phi s(a; b | q, (-1)^(s-r) z q^(-4 n l))
///  = (a;q)_inf z^(2n) {theta_4(q^l / z; q^l) + r_phi} / ((q, b; q)_inf q^(2 l n (2n+1)))`.
pub fn lemma_phi_theta_rep(
    params: &ConfluentParams,
    q: &QParameter,
    z: &LogRealValue,
    n: u64,
    tol: Tolerance,
) -> Result<(LogRealValue, RemainderCertificate)> {
    nonzero(z)?;
    let prec = q.prec();
    let spec = params.spec();
    let ell = params.ell();
    let q_ell = q.powered(ell)?;
    let lq = q.log_q();
    let l_ell_q = Float::with_val(prec, ell * &lq);
    let sign_flip = (params.s() + params.r()) % 2 == 1;
    let mut arg = z.scale_log(&-Float::with_val(prec, &l_ell_q * (4 * n)));
    if sign_flip {
        arg = -arg;
    }
    let exact = rphis_eval(params, q, &arg, tol)?;

    let a_prod = alpha_product(spec, q, tol)?;
    let mut qb_prod = log_poch(&q.pow_int(1), q, tol)?;
    for b in spec.betas() {
        qb_prod = &qb_prod * &log_poch(&q.pow(b), q, tol)?;
    }
    // (a;q)_inf z^(2n) / ((q, b; q)_inf q^(2 l n (2n+1)))
    let prefactor = (&(&a_prod * &z.powi(2 * n as i64)) / &qb_prod)
        .scale_log(&-Float::with_val(prec, &l_ell_q * (2 * n * (2 * n + 1))));
    let shifted = z.recip().scale_log(&l_ell_q);
    let theta = theta_real(4, &shifted, &q_ell, tol)?;
    let observed = residual(&(&exact / &prefactor), &theta);

    let theta3 = theta_real(3, &shifted.abs(), &q_ell, tol)?;
    let e = Float::with_val(prec, ell * (n * n + n));
    let tail = geometric_tail(q, n).add(&gauss_piece(q, &e, z, -(n as i64)));
    let bound = &(&(&pow2(params.s() + params.r() + 3, prec) * &theta3) / &a_prod) * &tail;
    Ok((&prefactor * &theta, RemainderCertificate { n, bound, observed }))
}

/// Prefactor `(-z)^floor(n/2) q^(-l (n^2 - chi(n)) / 4)`.
fn h_prefactor(ell: &Float, q: &QParameter, z: &LogRealValue, n: u64) -> LogRealValue {
    let prec = q.prec();
    let e = Float::with_val(prec, ell * (n * n - char_chi(n))) / 4u32;
    (-z).powi((n / 2) as i64).scale_log(&-Float::with_val(prec, q.log_q() * e))
}

/// `h_n(z q^(-n l)) = (-z)^floor(n/2) q^(-l (n^2 - chi(n)) / 4)
///  {theta_4(q^(l chi(n)) / z; q^l) + r_h}`.
///
/// For odd `n` the theta argument carries the extra `q^l`; without it the
/// residual does not decay (see [`lemma_h_unshifted_residual`]).
pub fn lemma_h_theta_rep(
    spec: &SeriesSpec,
    q: &QParameter,
    z: &LogRealValue,
    n: u64,
    tol: Tolerance,
) -> Result<(LogRealValue, RemainderCertificate)> {
    nonzero(z)?;
    let prec = q.prec();
    let ell = spec.ell();
    let q_ell = q.powered(ell)?;
    let l_ell_q = Float::with_val(prec, ell * q.log_q());
    let exact = h_eval(spec, q, n, &z.scale_log(&-Float::with_val(prec, &l_ell_q * n)), tol)?;
    let prefactor = h_prefactor(ell, q, z, n);
    let shifted = z.recip().scale_log(&Float::with_val(prec, &l_ell_q * char_chi(n)));
    let theta = theta_real(4, &shifted, &q_ell, tol)?;
    let observed = residual(&(&exact / &prefactor), &theta);

    let m = n / 4;
    let theta3 = theta_real(3, &z.abs().recip(), &q_ell, tol)?;
    let e = Float::with_val(prec, ell * (m * m));
    let tail = geometric_tail(q, m)
        .add(&gauss_piece(q, &e, z, m as i64))
        .add(&gauss_piece(q, &e, z, -(m as i64)));
    let k = spec.alphas().len() + spec.betas().len() + 2 * spec.gammas().len() + 5;
    let bound = &(&(&pow2(k, prec) * &theta3) / &alpha_product(spec, q, tol)?) * &tail;
    Ok((&prefactor * &theta, RemainderCertificate { n, bound, observed }))
}

/// Residual of the `h` representation with `theta_4(1/z; q^l)` for every
/// `n`, i.e. without the odd-`n` shift.
pub fn lemma_h_unshifted_residual(
    spec: &SeriesSpec,
    q: &QParameter,
    z: &LogRealValue,
    n: u64,
    tol: Tolerance,
) -> Result<LogRealValue> {
    nonzero(z)?;
    let prec = q.prec();
    let ell = spec.ell();
    let q_ell = q.powered(ell)?;
    let l_ell_q = Float::with_val(prec, ell * q.log_q());
    let exact = h_eval(spec, q, n, &z.scale_log(&-Float::with_val(prec, &l_ell_q * n)), tol)?;
    let prefactor = h_prefactor(ell, q, z, n);
    let theta = theta_real(4, &z.recip(), &q_ell, tol)?;
    Ok(residual(&(&exact / &prefactor), &theta))
}
