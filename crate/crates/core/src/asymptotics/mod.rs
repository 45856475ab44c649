//! Main terms of the scaled `q -> 1` asymptotics, `z = e^(2 pi v)`,
//! `q = e^(-pi / lambda_n)`.
//!
//! Every function returns the main term only; error factors are left to the
//! caller to measure. Oscillating (plus) branches keep the cosine separate so
//! residuals stay meaningful at its zeros.

mod lemmas;
mod scale;

pub use lemmas::{
    certificate_threshold, lemma_g_theta_rep, lemma_h_unshifted_residual, lemma_h_theta_rep, lemma_phi_theta_rep,
    RemainderCertificate,
};
pub use scale::AdmissibleScale;

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{cos_pi, pi, LogComplexValue, LogRealValue};
use crate::qpochhammer::QParameter;
use crate::qseries::{char_chi, ConfluentParams, SeriesSpec};

/// Which of the two displayed formulas: argument `-z...` or `+z...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "minus" => Ok(Branch::Minus),
            "plus" => Ok(Branch::Plus),
            other => Err(Error::Config(format!("unknown branch {other:?}"))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        })
    }
}

/// `(n, v)` with its `lambda_n` and `q`; `log q = -pi / lambda_n` exactly.
#[derive(Clone, Debug)]
pub struct ScaledPoint {
    n: u64,
    v: Float,
    lambda: Float,
    q: QParameter,
}

impl ScaledPoint {
    pub fn new(n: u64, v: Float, lambda: Float) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("scaled points need n >= 1".into()));
        }
        let q = QParameter::from_lambda(&lambda)?;
        Ok(ScaledPoint { n, v, lambda, q })
    }

    pub fn from_scale(n: u64, v: &Float, scale: &AdmissibleScale, prec: u32) -> Result<Self> {
        ScaledPoint::new(n, Float::with_val(prec, v), scale.lambda(n, prec)?)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn v(&self) -> &Float {
        &self.v
    }

    pub fn lambda(&self) -> &Float {
        &self.lambda
    }

    pub fn q(&self) -> &QParameter {
        &self.q
    }

    pub fn prec(&self) -> u32 {
        self.q.prec()
    }

    /// `z = e^(2 pi v)`.
    pub fn z(&self) -> LogRealValue {
        LogRealValue::from_log(Float::with_val(self.prec(), &self.v * pi(self.prec())) * 2u32)
    }

    pub fn chi(&self) -> u64 {
        char_chi(self.n)
    }
}

/// `envelope * cos(pi * cos_arg)`, or just `envelope`.
#[derive(Clone, Debug)]
pub struct MainTerm {
    pub envelope: LogComplexValue,
    pub cos_arg: Option<Float>,
}

impl MainTerm {
    pub fn value(&self) -> LogComplexValue {
        match &self.cos_arg {
            None => self.envelope.clone(),
            Some(x) => self.envelope.scale(&LogRealValue::from_float(&cos_pi(x))),
        }
    }

    /// The factor the normalized exact value is compared with: the cosine,
    /// or `1`.
    pub fn bracket_target(&self, prec: u32) -> Float {
        match &self.cos_arg {
            None => Float::with_val(prec, 1),
            Some(x) => cos_pi(x),
        }
    }

    /// `|exact / envelope - target|`: the relative error for plain branches,
    /// the bracket residual for cosine branches.
    pub fn residual(&self, exact: &LogComplexValue) -> Float {
        let prec = exact.prec().max(self.envelope.prec());
        let target = self.bracket_target(prec);
        let ratio = exact / &self.envelope;
        if ratio.is_zero() {
            return target.abs();
        }
        let x = ratio.abs().to_float();
        match ratio.quarter_phase() {
            0 => (x - target).abs(),
            2 => (x + target).abs(),
            _ => (x.square() + target.square()).sqrt(),
        }
    }
}

/// Shorthand for building log-domain exponents at one precision.
struct Ctx {
    prec: u32,
    pi: Float,
    lambda: Float,
    v: Float,
}

impl Ctx {
    fn new(p: &ScaledPoint) -> Self {
        let prec = p.prec();
        Ctx { prec, pi: pi(prec), lambda: p.lambda.clone(), v: p.v.clone() }
    }

    fn f<T>(&self, x: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec, x)
    }

    /// `(pi lambda / ell)(v + shift)^2`.
    fn gaussian(&self, ell: &Float, shift: &Float) -> Float {
        let c = self.f(&self.v + shift);
        self.f(&self.pi * &self.lambda) / ell * c.square()
    }

    /// `pi lambda`.
    fn pl(&self) -> Float {
        self.f(&self.pi * &self.lambda)
    }

    /// `pi / lambda`.
    fn pil(&self) -> Float {
        self.f(&self.pi / &self.lambda)
    }

    fn real(&self, log: Float) -> LogComplexValue {
        LogComplexValue::from_real(LogRealValue::from_log(log))
    }
}

fn half_log(x: Float) -> Float {
    x.ln() / 2u32
}

pub fn g_asym_minus(spec: &SeriesSpec, p: &ScaledPoint) -> MainTerm {
    g_main(spec.ell(), p, Branch::Minus)
}

pub fn g_asym_plus(spec: &SeriesSpec, p: &ScaledPoint) -> MainTerm {
    g_main(spec.ell(), p, Branch::Plus)
}

/// Gaussian of the `g` theorem: `(pi lambda / ell)(v + 2 n ell / lambda)^2`.
fn g_gaussian(c: &Ctx, ell: &Float, n: u64) -> Float {
    let shift = c.f(ell * (2 * n)) / &c.lambda;
    c.gaussian(ell, &shift)
}

fn g_main(ell: &Float, p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let mut l = g_gaussian(&c, ell, p.n) + half_log(c.f(&c.lambda / ell));
    match branch {
        Branch::Minus => MainTerm { envelope: c.real(l), cos_arg: None },
        Branch::Plus => {
            l -= c.pl() / c.f(ell * 4u32);
            l += c.f(2).ln();
            MainTerm { envelope: c.real(l), cos_arg: Some(c.f(&c.lambda * &c.v) / ell) }
        }
    }
}

pub fn h_asym_minus(spec: &SeriesSpec, p: &ScaledPoint) -> MainTerm {
    h_main(spec.ell(), p, Branch::Minus)
}

pub fn h_asym_plus(spec: &SeriesSpec, p: &ScaledPoint) -> MainTerm {
    h_main(spec.ell(), p, Branch::Plus)
}

fn h_main(ell: &Float, p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let chi = p.chi();
    // v + ell (n - chi) / (2 lambda)
    let shift = c.f(ell * (p.n - chi)) / c.f(&c.lambda * 2u32);
    let mut l = c.gaussian(ell, &shift);
    l += c.f(ell * &c.pi) * ((p.n - 1) * chi) / c.f(&c.lambda * 2u32);
    l += half_log(c.f(&c.lambda / ell));
    match branch {
        Branch::Minus => MainTerm { envelope: c.real(l), cos_arg: None },
        Branch::Plus => {
            l -= c.pl() / c.f(ell * 4u32);
            l += c.f(2).ln();
            let arg = c.f(&c.lambda / ell) * c.f(&c.v + &shift);
            MainTerm { envelope: c.real(l), cos_arg: Some(arg) }
        }
    }
}

/// Ramanujan's entire function at `-/+ q^(-4n) z`.
pub fn cor_aq(p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let one = c.f(1);
    let mut l = g_gaussian(&c, &one, p.n) - c.pil() / 24u32;
    let half_ln2 = c.f(2).ln() / 2u32;
    match branch {
        Branch::Minus => {
            l += c.pl() / 6u32;
            l -= half_ln2;
            MainTerm { envelope: c.real(l), cos_arg: None }
        }
        Branch::Plus => {
            l -= c.pl() / 12u32;
            l += half_ln2;
            MainTerm { envelope: c.real(l), cos_arg: Some(c.f(&c.lambda * &c.v)) }
        }
    }
}

/// Jackson's second q-Bessel function at `2 i sqrt(z q^-nu) q^-2n` (minus)
/// or `2 sqrt(z q^-nu) q^-2n` (plus). The minus branch carries `i^nu`, so
/// `nu` must be an integer there.
pub fn cor_jackson(p: &ScaledPoint, nu: &Float, branch: Branch) -> Result<MainTerm> {
    if !(*nu > -1i32) {
        return Err(Error::Domain(format!("Jackson q-Bessel needs nu > -1, got {nu}")));
    }
    let c = Ctx::new(p);
    let shift = c.f(c.f(nu + 4 * p.n) / 2u32) / &c.lambda;
    let mut l = c.gaussian(&c.f(1), &shift);
    l -= c.pil() / 12u32;
    l += c.f(nu.square_ref()) * c.pil() / 4u32;
    l -= half_log(c.lambda.clone());
    match branch {
        Branch::Minus => {
            if !nu.is_integer() {
                return Err(Error::PhaseModel(format!("e^(nu pi i / 2) is off the axes for nu = {nu}")));
            }
            l += c.pl() / 3u32;
            l -= c.f(2).ln();
            let phase = nu.to_f64() as i64;
            Ok(MainTerm { envelope: LogComplexValue::on_axis(phase, LogRealValue::from_log(l)), cos_arg: None })
        }
        Branch::Plus => {
            l += c.pl() / 12u32;
            Ok(MainTerm { envelope: c.real(l), cos_arg: Some(c.f(&c.lambda * &c.v)) })
        }
    }
}

/// Confluent `r phi s` at `(-1)^(s+1-r) z q^(-l(4n-1))` (minus) or
/// `(-1)^(s-r) z q^(-l(4n-1))` (plus); relative error `O(1/lambda)`.
pub fn cor_confluent(params: &ConfluentParams, p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let ell = params.ell();
    let mut l = Float::new(c.prec);
    for b in params.spec().betas() {
        l += c.f(b.ln_gamma_ref());
    }
    for a in params.spec().alphas() {
        l -= c.f(a.ln_gamma_ref());
    }
    let rho = params.rho();
    let power = c.f(rho + ell) + 0.5f64;
    l += power * c.f(c.lambda.ln_ref());
    l -= half_log(ell.clone());
    l -= c.f(c.f(rho + c.f(ell * 2u32)) * c.f(c.pi.ln_ref()));
    l += g_gaussian(&c, ell, p.n);
    l += c.f(ell * c.pl()) / 3u32;
    let ln2 = c.f(2).ln();
    match branch {
        Branch::Minus => {
            l -= c.f(ell * &ln2);
            MainTerm { envelope: c.real(l), cos_arg: None }
        }
        Branch::Plus => {
            l -= c.f(c.f(ell - 1u32) * &ln2);
            l -= c.pl() / c.f(ell * 4u32);
            MainTerm { envelope: c.real(l), cos_arg: Some(c.f(&c.lambda * &c.v) / ell) }
        }
    }
}

/// Ismail-Masson `h_n` at `sinh pi (v + i/2)` (minus, `e^xi = i e^(pi v)`)
/// or `sinh pi v` (plus, `e^xi = e^(pi v)`). The Gaussian centre
/// `v - chi(n) / (2 lambda)` is used as displayed.
pub fn cor_ismail_masson(p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let n = p.n;
    let chi = p.chi();
    let shift = -(c.f(chi) / c.f(&c.lambda * 2u32));
    let mut l = c.gaussian(&c.f(1), &shift);
    l += c.f(n * n) * c.pil() / 4u32;
    l -= c.f(1 + 12 * chi) * c.pil() / 24u32;
    let half_ln2 = c.f(2).ln() / 2u32;
    match branch {
        Branch::Minus => {
            l += c.pl() / 6u32;
            l -= half_ln2;
            // 1 / (-i)^n = i^n
            let envelope = LogComplexValue::on_axis((n % 4) as i64, LogRealValue::from_log(l));
            MainTerm { envelope, cos_arg: None }
        }
        Branch::Plus => {
            l -= c.pl() / 12u32;
            l += half_ln2;
            let envelope = LogComplexValue::on_axis(2 * (n % 2) as i64, LogRealValue::from_log(l));
            let arg = c.f(&c.lambda * &c.v) + c.f(n - chi) / 2u32;
            MainTerm { envelope, cos_arg: Some(arg) }
        }
    }
}

/// Shared main term of the Stieltjes-Wigert and q-Laguerre displays.
fn sw_main(p: &ScaledPoint, branch: Branch) -> MainTerm {
    let c = Ctx::new(p);
    let n = p.n;
    let chi = p.chi();
    let shift = c.f(n - chi) / c.f(&c.lambda * 2u32);
    let mut l = c.gaussian(&c.f(1), &shift);
    l += c.f((n - 1) * chi) * c.pil() / 2u32;
    l -= c.pil() / 12u32;
    l -= half_log(c.lambda.clone());
    match branch {
        Branch::Minus => {
            l += c.pl() / 3u32;
            l -= c.f(2).ln();
            MainTerm { envelope: c.real(l), cos_arg: None }
        }
        Branch::Plus => {
            l += c.pl() / 12u32;
            let arg = c.f(&c.lambda * &c.v) + c.f(n - chi) / 2u32;
            MainTerm { envelope: c.real(l), cos_arg: Some(arg) }
        }
    }
}

/// `S_n(-/+ z q^-n)`.
pub fn cor_stieltjes_wigert(p: &ScaledPoint, branch: Branch) -> MainTerm {
    sw_main(p, branch)
}

/// `L_n^(alpha)(-/+ z q^(-alpha-n))`, with `z = e^(2 pi v)` like the other
/// families; the main term does not depend on `alpha`.
pub fn cor_q_laguerre(p: &ScaledPoint, alpha: &Float, branch: Branch) -> Result<MainTerm> {
    if !(*alpha > -1i32) {
        return Err(Error::Domain(format!("q-Laguerre needs alpha > -1, got {alpha}")));
    }
    Ok(sw_main(p, branch))
}
