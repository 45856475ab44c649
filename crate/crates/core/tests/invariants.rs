use proptest::prelude::*;
use rug::{Float, Integer, Rational};

use qscale_core::asymptotics::AdmissibleScale;
use qscale_core::numkernel::{bernoulli_number, bernoulli_polynomial_rational, log_add, parse_float, Precision};
use qscale_core::qpochhammer::{mcintosh_log_qpoch, qgamma, qpoch_finite, qpoch_infinite, QParameter};
use qscale_core::qseries::{g_eval, h_eval_stats, SeriesSpec};
use qscale_core::theta::{theta_auto, theta_product, theta_series, ThetaArg, ThetaPoint};
use qscale_core::{LogComplexValue, LogRealValue, Sign, Tolerance};

const DIGITS: u32 = 50;

fn prec() -> u32 {
    Precision::new(DIGITS).bits()
}

fn ff(x: f64) -> Float {
    Float::with_val(prec(), x)
}

/// `10^-(digits - 12)`, the invariant-level agreement target.
fn agreement() -> f64 {
    10f64.powi(-(DIGITS as i32 - 12))
}

fn rel_complex(a: &LogComplexValue, b: &LogComplexValue) -> f64 {
    if a.is_zero() && b.is_zero() {
        return 0.0;
    }
    match a.sub(b) {
        Ok(d) => (d.abs() / b.abs()).to_f64().abs(),
        Err(_) => f64::INFINITY,
    }
}

fn signed_log(sign: bool, logmag: f64) -> LogRealValue {
    LogRealValue::from_parts(if sign { Sign::Positive } else { Sign::Negative }, ff(logmag))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn log_add_commutes_and_associates(
        sa in any::<bool>(), sb in any::<bool>(), sc in any::<bool>(),
        la in -1e6f64..1e6, lb in -1e6f64..1e6, lc in -1e6f64..1e6,
    ) {
        let (a, b, c) = (signed_log(sa, la), signed_log(sb, lb), signed_log(sc, lc));
        prop_assert_eq!(log_add(&a, &b), log_add(&b, &a));
        let left = log_add(&log_add(&a, &b), &c);
        let right = log_add(&a, &log_add(&b, &c));
        // Cancellation relative to the largest input is the only loss.
        let scale = la.max(lb).max(lc);
        let diff = left.sub(&right);
        if !diff.is_zero() {
            let lost = diff.logmag().to_f64() - scale;
            prop_assert!(lost < -((DIGITS - 12) as f64) * std::f64::consts::LN_10, "lost {lost}");
        }
    }

    #[test]
    fn splitting_identity(a in -2.0f64..2.0, qi in 0usize..3, n in 0u64..=10) {
        let q = QParameter::from_nome(&ff([0.1, 0.5, 0.9][qi])).unwrap();
        let eps = Tolerance::from_digits(40);
        let a = LogRealValue::from_f64(a, prec());
        let head = qpoch_finite(&a, &q, n);
        let shifted = a.scale_log(&Float::with_val(prec(), q.log_q() * n));
        let (tail, _) = qpoch_infinite(&shifted, &q, eps).unwrap();
        let (whole, _) = qpoch_infinite(&a, &q, eps).unwrap();
        let product = &head * &tail;
        if whole.is_zero() {
            prop_assert!(product.is_zero());
        } else {
            prop_assert!(product.rel_diff(&whole).to_f64() <= 10.0 * 1e-40);
        }
    }

    #[test]
    fn tail_bound_dominates_doubling(a in -2.0f64..2.0, qi in 0usize..3, digits in 10u32..40) {
        let q = QParameter::from_nome(&ff([0.1, 0.5, 0.9][qi])).unwrap();
        let a = LogRealValue::from_f64(a, prec());
        let (value, bound) = qpoch_infinite(&a, &q, Tolerance::from_digits(digits)).unwrap();
        let doubled = qpoch_finite(&a, &q, 2 * bound.n_terms.max(1));
        if !value.is_zero() {
            let change = doubled.rel_diff(&value);
            prop_assert!(change <= bound.value.to_float(), "{change} > {}", bound.value.to_float());
        }
    }

    #[test]
    fn theta_series_matches_product(index in 1u8..=4, real in any::<bool>(), x in -1.2f64..1.2, tau in 0.2f64..5.0) {
        let arg = if real { ThetaArg::Real(ff(x)) } else { ThetaArg::Imag(ff(x)) };
        let p = ThetaPoint::new(index, arg, ff(tau)).unwrap();
        let tol = Precision::new(DIGITS).default_tolerance();
        let r = rel_complex(&theta_series(&p, tol).unwrap(), &theta_product(&p, tol).unwrap());
        prop_assert!(r <= agreement(), "{r}");
    }

    #[test]
    fn theta3_integer_shift(x in -1.0f64..1.0, shift in -3i32..=3, tau in 0.3f64..4.0) {
        let tol = Precision::new(DIGITS).default_tolerance();
        let base = ThetaPoint::new(3, ThetaArg::Real(ff(x)), ff(tau)).unwrap();
        let moved = base.with_arg(ThetaArg::Real(ff(x) + shift));
        let r = rel_complex(&theta_series(&moved, tol).unwrap(), &theta_series(&base, tol).unwrap());
        prop_assert!(r <= agreement(), "{r}");
    }

    #[test]
    fn theta_auto_is_series_above_one(index in 1u8..=4, x in -1.0f64..1.0, tau in 1.0f64..6.0) {
        let tol = Precision::new(DIGITS).default_tolerance();
        let p = ThetaPoint::new(index, ThetaArg::Imag(ff(x)), ff(tau)).unwrap();
        prop_assert_eq!(theta_auto(&p, tol).unwrap(), theta_series(&p, tol).unwrap());
    }

    #[test]
    fn h_eval_uses_n_plus_one_terms(n in 0u64..40, z in -5.0f64..5.0) {
        prop_assume!(z != 0.0);
        let q = QParameter::from_nome(&ff(0.7)).unwrap();
        let spec = SeriesSpec::empty(ff(1.0)).unwrap();
        let eval = h_eval_stats(&spec, &q, n, &LogRealValue::from_f64(z, prec()), Precision::new(DIGITS).default_tolerance()).unwrap();
        prop_assert_eq!(eval.terms as u64, n + 1);
    }
}

#[test]
fn odd_bernoulli_numbers_vanish() {
    for k in 1..=31 {
        assert_eq!(bernoulli_number(2 * k + 1).unwrap(), 0, "B_{}", 2 * k + 1);
    }
}

#[test]
fn bernoulli_polynomial_at_zero() {
    for k in 0..=64 {
        assert_eq!(bernoulli_polynomial_rational(k, &Rational::new()).unwrap(), bernoulli_number(k).unwrap());
    }
}

#[test]
fn bernoulli_recurrence_is_exact() {
    for k in 1..=63u32 {
        let mut sum = Rational::new();
        for j in 0..=k {
            let c = Integer::from(Integer::binomial_u(k + 1, j));
            sum += Rational::from(c) * bernoulli_number(j).unwrap();
        }
        assert_eq!(sum, 0, "k = {k}");
    }
}

#[test]
fn mcintosh_error_ratio_per_halving() {
    let pi = Float::with_val(prec(), rug::float::Constant::Pi);
    let exact_tol = Tolerance::from_digits(DIGITS + 20);
    let noise = 10f64.powi(-(DIGITS as i32));
    for x in ["0.5", "1", "1.7"] {
        let x = parse_float(x, prec()).unwrap();
        for p in [1u32, 3, 5] {
            let errs: Vec<f64> = [0.02, 0.01]
                .iter()
                .map(|&t| {
                    let q = QParameter::new(Float::with_val(prec(), Float::with_val(prec(), t) / &pi)).unwrap();
                    let exact = qpoch_infinite(&q.pow(&x), &q, exact_tol).unwrap().0;
                    Float::with_val(prec(), mcintosh_log_qpoch(&x, &q, p).unwrap() - exact.logmag()).abs().to_f64()
                })
                .collect();
            // B_{k+1}(x) vanishes for even k at x = 1/2 and x = 1, so the
            // truncation error there sits at the noise floor.
            if x == 0.5 || x == 1 {
                assert!(errs.iter().all(|e| *e < noise), "x={x} p={p}: {errs:?}");
                continue;
            }
            let ratio = errs[0] / errs[1];
            let nominal = 2f64.powi(p as i32 + 1);
            assert!(ratio >= nominal / 4.0 && ratio <= 4.0 * nominal, "x={x} p={p}: ratio {ratio}");
        }
    }
}

#[test]
fn qgamma_recursion() {
    for qv in [0.3, 0.8] {
        let q = QParameter::from_nome(&ff(qv)).unwrap();
        for z in [0.5, 1.0, 2.25] {
            let z = ff(z);
            let lhs = qgamma(&Float::with_val(prec(), &z + 1u32), &q).unwrap();
            let qz = q.pow(&z);
            let one = LogRealValue::one(prec());
            let factor = &one.sub(&qz) / &one.sub(&q.pow_int(1));
            let rhs = &factor * &qgamma(&z, &q).unwrap();
            assert!(lhs.rel_diff(&rhs).to_f64() < agreement(), "q={qv} z={z}");
        }
    }
}

#[test]
fn g_stays_finite_at_scaled_arguments() {
    let scale = AdmissibleScale::power("0.4", "0").unwrap();
    let spec = SeriesSpec::empty(ff(1.0)).unwrap();
    for n in [16u64, 256, 4096, 10_000] {
        let lambda = scale.lambda(n, prec()).unwrap();
        let q = QParameter::from_lambda(&lambda).unwrap();
        let z = LogRealValue::one(prec()).scale_log(&Float::with_val(prec(), -(q.log_q() * (4 * n))));
        let v = g_eval(&spec, &q, &z, Precision::new(DIGITS).default_tolerance()).unwrap();
        assert!(v.logmag().is_finite(), "n = {n}");
    }
}

#[test]
fn scale_validator() {
    assert!("power:0.3:1".parse::<AdmissibleScale>().unwrap().validate().is_ok());
    assert!("power:0.6".parse::<AdmissibleScale>().unwrap().validate().is_err());
    assert!("log:1".parse::<AdmissibleScale>().unwrap().validate().is_err());
    assert!("log:2".parse::<AdmissibleScale>().unwrap().validate().is_ok());
}
