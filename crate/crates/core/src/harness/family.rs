use rug::Float;

use super::config::{Function, SweepConfig};
use crate::asymptotics::{
    cor_aq, cor_confluent, cor_ismail_masson, cor_jackson, cor_q_laguerre, cor_stieltjes_wigert, g_asym_minus,
    g_asym_plus, h_asym_minus, h_asym_plus, Branch, MainTerm, ScaledPoint,
};
use crate::error::{Error, Result};
use crate::numkernel::{ln2, parse_float, pi, LogComplexValue, LogRealValue, Tolerance};
use crate::qseries::{
    g_eval_stats, h_eval_stats, ismail_masson_h_stats, jackson_j2_stats, q_laguerre_eval_stats, ramanujan_aq_stats,
    rphis_eval_stats, stieltjes_wigert_eval_stats, ConfluentParams, Evaluation, SeriesSpec,
};

/// Function parameters parsed at one working precision.
pub(crate) struct Resolved {
    pub function: Function,
    pub branch: Branch,
    pub spec: Option<SeriesSpec>,
    pub confluent: Option<ConfluentParams>,
    pub nu: Float,
    pub alpha: Float,
    /// `l` of the rate `e^(-pi lambda / l)`; `1` for the corollaries.
    pub ell: Float,
}

fn num(s: &str, prec: u32) -> Float {
    parse_float(s, prec).expect("validated at parse time")
}

fn nums(v: &[String], prec: u32) -> Vec<Float> {
    v.iter().map(|s| num(s, prec)).collect()
}

impl Resolved {
    pub fn new(cfg: &SweepConfig, prec: u32) -> Result<Self> {
        let one = Float::with_val(prec, 1);
        let mut r = Resolved {
            function: cfg.function,
            branch: cfg.branch,
            spec: None,
            confluent: None,
            nu: num(&cfg.nu, prec),
            alpha: num(&cfg.alpha, prec),
            ell: one,
        };
        let (a, b, c) = (nums(&cfg.alphas, prec), nums(&cfg.betas, prec), nums(&cfg.gammas, prec));
        match cfg.function {
            Function::G | Function::H => {
                let spec = SeriesSpec::new(a, b, c, num(&cfg.ell, prec)).map_err(config)?;
                r.ell = spec.ell().clone();
                r.spec = Some(spec);
            }
            Function::Confluent => {
                if !c.is_empty() {
                    return Err(Error::Config("confluent series take no gammas".into()));
                }
                let params = ConfluentParams::new(a, b, prec).map_err(config)?;
                r.ell = params.ell().clone();
                r.confluent = Some(params);
            }
            _ => {}
        }
        Ok(r)
    }

    pub fn main_term(&self, p: &ScaledPoint) -> Result<MainTerm> {
        let b = self.branch;
        Ok(match self.function {
            Function::G => match b {
                Branch::Minus => g_asym_minus(self.spec(), p),
                Branch::Plus => g_asym_plus(self.spec(), p),
            },
            Function::H => match b {
                Branch::Minus => h_asym_minus(self.spec(), p),
                Branch::Plus => h_asym_plus(self.spec(), p),
            },
            Function::Aq => cor_aq(p, b),
            Function::Jackson => cor_jackson(p, &self.nu, b)?,
            Function::Confluent => cor_confluent(self.confluent(), p, b),
            Function::IsmailMasson => cor_ismail_masson(p, b),
            Function::StieltjesWigert => cor_stieltjes_wigert(p, b),
            Function::QLaguerre => cor_q_laguerre(p, &self.alpha, b)?,
        })
    }

    /// The exact side at the displayed scaled argument, built from `log q`.
    pub fn exact(&self, p: &ScaledPoint, tol: Tolerance) -> Result<Evaluation> {
        let prec = p.prec();
        let q = p.q();
        let lq = q.log_q();
        let n = p.n();
        let z = p.z();
        let minus = self.branch == Branch::Minus;
        // +/- z q^(-e)
        let signed = |e: Float| {
            let w = z.scale_log(&-Float::with_val(prec, &lq * &e));
            if minus {
                -w
            } else {
                w
            }
        };
        match self.function {
            Function::G => {
                let e = Float::with_val(prec, &self.ell * (4 * n));
                g_eval_stats(self.spec(), q, &signed(e), tol)
            }
            Function::H => {
                let e = Float::with_val(prec, &self.ell * n);
                h_eval_stats(self.spec(), q, n, &signed(e), tol)
            }
            Function::Aq => ramanujan_aq_stats(&signed(Float::with_val(prec, 4 * n)), q, tol),
            Function::Jackson => {
                // 2 sqrt(z q^-nu) q^-2n, times i on the minus branch
                let two_pi_v = Float::with_val(prec, pi(prec) * p.v()) * 2u32;
                let half = Float::with_val(prec, two_pi_v - Float::with_val(prec, &self.nu * &lq)) / 2u32;
                let log = ln2(prec) + half - Float::with_val(prec, &lq * (2 * n));
                let arg = LogComplexValue::on_axis(i64::from(minus), LogRealValue::from_log(log));
                jackson_j2_stats(&arg, &self.nu, q, tol)
            }
            Function::Confluent => {
                let params = self.confluent();
                let e = Float::with_val(prec, &self.ell * (4 * n - 1));
                let w = z.scale_log(&-Float::with_val(prec, &lq * &e));
                // (-1)^(s+1-r) on the minus branch, (-1)^(s-r) on the plus branch
                let flips = params.s() + usize::from(minus) + params.r();
                let w = if flips % 2 == 1 { -w } else { w };
                rphis_eval_stats(params, q, &w, tol)
            }
            Function::IsmailMasson => {
                let log = Float::with_val(prec, pi(prec) * p.v());
                let exp_xi = LogComplexValue::on_axis(i64::from(minus), LogRealValue::from_log(log));
                ismail_masson_h_stats(n, &exp_xi, q)
            }
            Function::StieltjesWigert => stieltjes_wigert_eval_stats(n, &signed(Float::with_val(prec, n)), q),
            Function::QLaguerre => {
                let e = Float::with_val(prec, &self.alpha + n);
                q_laguerre_eval_stats(n, &self.alpha, &signed(e), q)
            }
        }
    }

    /// `e^(-pi lambda / l)`, `e^(-2 pi lambda / l)`, or `1 / lambda` for the
    /// confluent corollary.
    pub fn predicted_rate(&self, lambda: &Float) -> Float {
        let prec = lambda.prec();
        if self.function == Function::Confluent {
            return Float::with_val(prec, lambda.recip_ref());
        }
        let k = match self.branch {
            Branch::Minus => 1u32,
            Branch::Plus => 2u32,
        };
        let x = Float::with_val(prec, pi(prec) * lambda) * k / &self.ell;
        (-x).exp()
    }

    fn spec(&self) -> &SeriesSpec {
        self.spec.as_ref().expect("g and h carry a spec")
    }

    fn confluent(&self) -> &ConfluentParams {
        self.confluent.as_ref().expect("confluent carries parameters")
    }
}

fn config(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}
