use rayon::prelude::*;
use rug::Float;

use super::config::{SweepConfig, VPoint};
use super::family::Resolved;
use crate::asymptotics::ScaledPoint;
use crate::error::{Error, Result};
use crate::numkernel::{LogComplexValue, LogRealValue, Precision};

/// One `(n, v)` cell of a sweep.
///
/// `rel_err` is `|exact / asym - 1|` on plain branches and the bracket
/// residual `|exact / envelope - cos|` on cosine branches. It never drops
/// below the arithmetic noise floor of the exact evaluation.
#[derive(Clone, Debug)]
pub struct ComparisonRecord {
    /// Stable cell label `n=<n>,v=<token>` used for regression ceilings.
    pub cell: String,
    pub n: u64,
    pub lambda_n: Float,
    pub v: Float,
    pub exact: LogComplexValue,
    pub asym: LogComplexValue,
    pub rel_err: Float,
    pub predicted_rate: Float,
    pub normalized_err: Float,
}

pub fn cell_label(n: u64, v: &VPoint) -> String {
    format!("n={n},v={v}")
}

/// Evaluates every cell, n-major and v-minor. The scale is validated before
/// any evaluation. A cell whose noise floor reaches the predicted rate is
/// retried once at doubled digits, then reported as a precision error.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ComparisonRecord>> {
    cfg.check()?;
    cfg.scale.validate()?;
    let cells: Vec<(u64, &VPoint)> = cfg.n_list.iter().flat_map(|&n| cfg.v_list.iter().map(move |v| (n, v))).collect();
    cells.par_iter().map(|&(n, v)| run_cell(cfg, n, v)).collect()
}

fn run_cell(cfg: &SweepConfig, n: u64, v: &VPoint) -> Result<ComparisonRecord> {
    match evaluate_cell(cfg, cfg.precision, n, v)? {
        Ok(r) => Ok(r),
        Err(_) => match evaluate_cell(cfg, cfg.precision.doubled(), n, v)? {
            Ok(r) => Ok(r),
            Err(detail) => Err(Error::Precision { cell: format!("{} {}", cfg.name, cell_label(n, v)), detail }),
        },
    }
}

/// Outer error: evaluation failed. Inner error: noise floor too high.
fn evaluate_cell(
    cfg: &SweepConfig,
    precision: Precision,
    n: u64,
    v: &VPoint,
) -> Result<std::result::Result<ComparisonRecord, String>> {
    let prec = precision.bits();
    let tol = cfg.with_precision(precision).tolerance();
    let resolved = Resolved::new(cfg, prec)?;
    let lambda = cfg.scale.lambda(n, prec)?;
    let cell = cell_label(n, v);
    let v = v.resolve(&resolved.ell, &lambda, prec);
    let point = ScaledPoint::new(n, v.clone(), lambda.clone())?;
    let main = resolved.main_term(&point)?;
    let exact = resolved.exact(&point, tol)?;

    let measured = main.residual(&exact.value);
    let noise = noise_floor(&exact.abs_sum, main.envelope.abs(), precision, tol.ln());
    let rate = resolved.predicted_rate(&lambda);
    if noise >= rate {
        return Ok(Err(format!(
            "cancellation noise {:.3e} reaches the predicted rate {:.3e} at {} digits",
            noise.to_f64(),
            rate.to_f64(),
            precision.digits()
        )));
    }
    let rel_err = if measured > noise { measured } else { noise };
    let normalized_err = Float::with_val(prec, &rel_err / &rate);
    Ok(Ok(ComparisonRecord {
        cell,
        n,
        lambda_n: lambda,
        v,
        exact: exact.value,
        asym: main.value(),
        rel_err,
        predicted_rate: rate,
        normalized_err,
    }))
}

/// `(abs_sum / |envelope|) (10^-digits + eps)`: relative noise of the exact
/// side measured against the main term.
fn noise_floor(abs_sum: &LogRealValue, envelope: &LogRealValue, precision: Precision, ln_eps: f64) -> Float {
    let prec = abs_sum.prec();
    let unit = Float::with_val(prec, Float::i_pow_u(10, precision.digits())).recip() + Float::with_val(prec, ln_eps).exp();
    (abs_sum / envelope).to_float() * unit
}

/// Exact side and main term of one cell at an explicit `lambda`.
#[derive(Clone, Debug)]
pub struct PointEvaluation {
    pub exact: LogComplexValue,
    pub main: LogComplexValue,
    pub rel_err: Float,
}

/// Evaluates `cfg`'s function and branch at `(n, v, lambda)`, ignoring its
/// grid and scale.
pub fn evaluate_point(cfg: &SweepConfig, n: u64, v: &VPoint, lambda: &Float) -> Result<PointEvaluation> {
    let prec = cfg.precision.bits();
    let resolved = Resolved::new(cfg, prec)?;
    let lambda = Float::with_val(prec, lambda);
    let v = v.resolve(&resolved.ell, &lambda, prec);
    let point = ScaledPoint::new(n, v, lambda)?;
    let main = resolved.main_term(&point)?;
    let exact = resolved.exact(&point, cfg.tolerance())?;
    Ok(PointEvaluation { rel_err: main.residual(&exact.value), exact: exact.value, main: main.value() })
}
