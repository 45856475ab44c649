//! Non-gating checks for main terms that miss the exact values by a structured factor.

use rug::Float;

use super::config::{Function, SweepConfig, VPoint};
use super::sweep::{evaluate_point, run_sweep};
use crate::asymptotics::{AdmissibleScale, Branch};
use crate::error::{Error, Result};
use crate::numkernel::{pi, LogRealValue, Precision};

/// Corrected residuals count as explained below this multiple of `e^(-pi lambda)`.
pub const EXPLAINED_BOUND: u32 = 100;

/// Odd-`n` minus-branch comparison for an `h`-type family.
#[derive(Clone, Debug)]
pub struct ParityFinding {
    pub function: Function,
    pub n: u64,
    pub v: Float,
    pub lambda: Float,
    /// `ln |exact / main|`.
    pub log_ratio: Float,
    /// `pi v + pi / (4 lambda)`.
    pub shift: Float,
    /// `|exact / (main e^shift) - 1| e^(pi lambda)`.
    pub corrected_normalized: Float,
}

impl ParityFinding {
    /// The shift accounts for the whole gap at the predicted rate.
    pub fn explained(&self) -> bool {
        self.corrected_normalized <= EXPLAINED_BOUND
    }
}

const PARITY_FAMILIES: [Function; 4] =
    [Function::H, Function::StieltjesWigert, Function::QLaguerre, Function::IsmailMasson];

/// Measures the odd-`n` gap of the `h`-type minus branches against the
/// factor `e^(pi v + pi / (4 lambda))`.
pub fn odd_parity_audit(scale: &AdmissibleScale, n_list: &[u64], v_list: &[&str], digits: u32) -> Result<Vec<ParityFinding>> {
    let mut out = Vec::new();
    for function in PARITY_FAMILIES {
        let text = format!(
            "function = {function}\nbranch = minus\nscale = {scale}\nn_list =\nv_list = {}\nprecision = {digits}\n",
            v_list.join(",")
        );
        let cfg = SweepConfig::parse(&text)?;
        let prec = cfg.precision.bits();
        for &n in n_list {
            if n % 2 == 0 {
                return Err(Error::Config(format!("parity audit needs odd n, got {n}")));
            }
            let lambda = scale.lambda(n, prec)?;
            for v in &cfg.v_list {
                let p = evaluate_point(&cfg, n, v, &lambda)?;
                let v = v.resolve(&Float::with_val(prec, 1), &lambda, prec);
                let log_ratio = Float::with_val(prec, p.exact.abs().logmag() - p.main.abs().logmag());
                let pi = pi(prec);
                let shift = Float::with_val(prec, &pi * &v) + Float::with_val(prec, &pi / &lambda) / 4u32;
                let corrected = LogRealValue::from_log(Float::with_val(prec, &log_ratio - &shift)).to_float() - 1u32;
                let rate = Float::with_val(prec, &pi * &lambda).exp();
                out.push(ParityFinding {
                    function,
                    n,
                    v,
                    lambda: lambda.clone(),
                    log_ratio,
                    shift,
                    corrected_normalized: corrected.abs() * rate,
                });
            }
        }
    }
    Ok(out)
}

/// Growth of the Ismail-Masson plus-branch normalized error between the
/// first and last `n`, the signature of an `n`-dependent error in the
/// Gaussian centre.
#[derive(Clone, Debug)]
pub struct CentreFinding {
    pub first: Float,
    pub last: Float,
}

impl CentreFinding {
    /// Growth by more than [`EXPLAINED_BOUND`] over the grid.
    pub fn flagged(&self) -> bool {
        self.last > Float::with_val(self.first.prec(), &self.first * EXPLAINED_BOUND)
    }
}

pub fn ismail_masson_centre_audit(scale: &AdmissibleScale, n_list: &[u64], v: &str, digits: u32) -> Result<CentreFinding> {
    let cfg = SweepConfig {
        name: "ismail_masson_centre".into(),
        function: Function::IsmailMasson,
        branch: Branch::Plus,
        scale: scale.clone(),
        n_list: n_list.to_vec(),
        v_list: vec![v.parse::<VPoint>()?],
        precision: Precision::new(digits),
        eps: None,
        nu: "0".into(),
        alpha: "0".into(),
        alphas: vec![],
        betas: vec![],
        gammas: vec![],
        ell: "1".into(),
    };
    let records = run_sweep(&cfg)?;
    let (first, last) = match (records.first(), records.last()) {
        (Some(a), Some(b)) => (a.normalized_err.clone(), b.normalized_err.clone()),
        _ => return Err(Error::Config("centre audit needs at least one n".into())),
    };
    Ok(CentreFinding { first, last })
}
