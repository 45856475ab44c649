use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::Tolerance;
use crate::qpochhammer::{log_qpoch_power, QParameter, TRUNCATION_CAP};

/// Inclusive index range `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Window {
    pub lo: u64,
    pub hi: u64,
}

/// `log (q^beta; q)_inf` to a loose tolerance, lowered by `ln 2` so it is a
/// lower bound. Only used to size windows.
pub(crate) fn log_bound(beta: &Float, q: &QParameter) -> Result<f64> {
    let v = log_qpoch_power(beta, q, Tolerance::new(1e-8))?;
    Ok(v.to_f64() - std::f64::consts::LN_2)
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Window over which `exp(G(k))`, `G(k) = ell k^2 log q + k log w`, times a
/// weight within `exp(spread)` of its smallest value, carries everything but
/// a relative `eps` of the sum of absolute values.
///
/// `log_w = -inf` (w = 0) gives the single index 0.
pub(crate) fn gaussian_window(ell: f64, log_q: f64, log_w: f64, spread: f64, tol: Tolerance) -> Result<Window> {
    if log_w == f64::NEG_INFINITY {
        return Ok(Window { lo: 0, hi: 0 });
    }
    let a = ell * -log_q;
    let g = |k: f64| -a * k * k + k * log_w;
    let centre = (log_w / (2.0 * a)).max(0.0);
    let peak = g(centre.floor()).max(g(centre.ceil()));
    let depth = -tol.ln() + spread + 8f64.ln();
    let half = (depth / a).sqrt() + 2.0;
    if !half.is_finite() || centre + half > TRUNCATION_CAP as f64 * 1e3 {
        return Err(Error::Scale { needed: u64::MAX });
    }
    let mut lo = (centre - half).floor().max(0.0) as u64;
    let mut hi = (centre + half).ceil() as u64;
    let target = tol.ln() + peak - spread;
    loop {
        if hi - lo + 1 > TRUNCATION_CAP {
            return Err(Error::Scale { needed: hi - lo + 1 });
        }
        // Both tails decay at least geometrically past the window.
        let right = {
            let (g1, g2) = (g(hi as f64 + 1.0), g(hi as f64 + 2.0));
            let r = g2 - g1;
            if r < 0.0 { g1 - (-r.exp()).ln_1p() } else { f64::INFINITY }
        };
        let left = if lo == 0 {
            f64::NEG_INFINITY
        } else if lo == 1 {
            g(0.0)
        } else {
            let (g1, g2) = (g(lo as f64 - 1.0), g(lo as f64 - 2.0));
            let r = g2 - g1;
            if r < 0.0 { g1 - (-r.exp()).ln_1p() } else { f64::INFINITY }
        };
        if log_sum_exp(left, right) < target {
            return Ok(Window { lo, hi });
        }
        hi += 1;
        lo = lo.saturating_sub(1);
    }
}
