use rug::{Float, Rational};

use super::*;
use crate::numkernel::{parse_float, Precision};

fn prec() -> u32 {
    Precision::new(50).bits()
}

fn tol() -> Tolerance {
    Tolerance::from_digits(60)
}

fn f(s: &str) -> Float {
    parse_float(s, prec()).unwrap()
}

fn lr(s: &str) -> LogRealValue {
    LogRealValue::from_float(&f(s))
}

fn half() -> QParameter {
    QParameter::from_nome(&f("0.5")).unwrap()
}

fn assert_close(got: &LogRealValue, want: &LogRealValue, rel: f64) {
    let d = got.rel_diff(want).to_f64();
    assert!(d <= rel, "got {got}, want {want}, rel diff {d:e}");
}

fn rat(r: &Rational) -> LogRealValue {
    LogRealValue::from_float(&Float::with_val(prec(), r))
}

/// `(a;q)_n` in exact arithmetic.
fn poch_exact(a: &Rational, q: &Rational, n: u64) -> Rational {
    let mut acc = Rational::from(1);
    let mut x = a.clone();
    for _ in 0..n {
        acc *= Rational::from(1 - &x);
        x *= q;
    }
    acc
}

fn qpow_exact(q: &Rational, k: i64) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..k.unsigned_abs() {
        r *= q;
    }
    if k < 0 {
        r.recip()
    } else {
        r
    }
}

/// `(1/2; 1/2)_inf`.
const QQ_HALF: &str = "0.288788095086602421278899721929230780088911904840685784114741";

#[test]
fn chi_is_parity() {
    assert_eq!(char_chi(4), 0);
    assert_eq!(char_chi(7), 1);
    for n in 0..50u64 {
        // chi(n) = n - 2 floor(n/2)
        assert_eq!(char_chi(n), n - 2 * (n / 2));
    }
}

#[test]
fn spec_rejects_nonpositive_exponents() {
    assert!(SeriesSpec::new(vec![f("0")], vec![], vec![], f("1")).is_err());
    assert!(SeriesSpec::new(vec![], vec![], vec![], f("-1")).is_err());
    assert!(matches!(
        ConfluentParams::new(vec![f("0.5"), f("0.5")], vec![], prec()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn g_at_zero_is_product_ratio() {
    let q = half();
    let spec = SeriesSpec::new(vec![f("0.3")], vec![f("1.7")], vec![], f("1")).unwrap();
    let got = g_eval(&spec, &q, &LogRealValue::zero(prec()), tol()).unwrap();
    let t = tol();
    let want = &(&qpoch_infinite(&q.pow_int(1), &q, t).unwrap().0 * &qpoch_infinite(&q.pow(&f("1.7")), &q, t).unwrap().0)
        / &qpoch_infinite(&q.pow(&f("0.3")), &q, t).unwrap().0;
    assert_close(&got, &want, 1e-50);
}

#[test]
fn g_frozen_values() {
    let q = half();
    let empty = SeriesSpec::empty(f("1")).unwrap();
    let got = g_eval(&empty, &q, &lr("5"), tol()).unwrap();
    assert_close(&got, &lr("-0.157877769791544029471353398249595017422217413032225013690096"), 1e-48);

    let spec = SeriesSpec::new(vec![f("0.3")], vec![f("1.7"), f("2.5")], vec![], f("1.5")).unwrap();
    let got = g_eval(&spec, &q, &lr("-40"), tol()).unwrap();
    assert_close(&got, &lr("42.9299189905064355996993642493583561570539351125160434748375"), 1e-48);
}

#[test]
fn aq_values() {
    let q = half();
    let one = ramanujan_aq(&LogRealValue::zero(prec()), &q, tol()).unwrap();
    assert_eq!(one, LogRealValue::one(prec()));
    let got = ramanujan_aq(&LogRealValue::from_float(&q.value()), &q, tol()).unwrap();
    assert_close(&got, &lr("0.540925716121606784760373521271928013815438361315429488452715"), 1e-48);
    let got = ramanujan_aq(&lr("-3.7"), &q, tol()).unwrap();
    assert_close(&got, &lr("7.29253852830892796623450855904436252025107336784058892324046"), 1e-48);
}

#[test]
fn aq_partial_sums_bracket_limit() {
    // q^(k^2) q^k / (q;q)_k alternates with decreasing size at z = q = 1/2.
    let q = Rational::from((1, 2));
    let limit = f("0.540925716121606784760373521271928013815438361315429488452715");
    let mut partial = Rational::new();
    for k in 0..12i64 {
        let term = qpow_exact(&q, k * k + k) / poch_exact(&q, &q, k as u64);
        if k % 2 == 0 {
            partial += term;
        } else {
            partial -= term;
        }
        let p = Float::with_val(prec(), &partial);
        if k % 2 == 0 {
            assert!(p > limit);
        } else {
            assert!(p < limit);
        }
    }
}

#[test]
fn g_empty_matches_aq_times_product() {
    let q = QParameter::new(f("0.37")).unwrap();
    let qq = qpoch_infinite(&q.pow_int(1), &q, tol()).unwrap().0;
    for z in ["0.1", "-2.5", "17", "300", "-4000"] {
        let g = g_eval(&SeriesSpec::empty(f("1")).unwrap(), &q, &lr(z), tol()).unwrap();
        let a = ramanujan_aq(&lr(z), &q, tol()).unwrap();
        assert_close(&g, &(&qq * &a), 1e-45);
    }
}

#[test]
fn jackson_frozen_values() {
    let q = half();
    let z = LogComplexValue::from_real(lr("0.8"));
    let got = jackson_j2(&z, &f("0.5"), &q, tol()).unwrap();
    assert_close(&got.as_real().unwrap(), &lr("0.805168313006191477410535480266813262470142252965593550723266"), 1e-48);

    let z = LogComplexValue::on_axis(1, lr("2.5"));
    let got = jackson_j2(&z, &f("1"), &q, tol()).unwrap();
    assert_eq!(got.quarter_phase(), 1);
    assert_close(got.abs(), &lr("5.50330257848489443264762390830319717722019665456862104606474"), 1e-48);
}

#[test]
fn jackson_matches_g_relation() {
    let q = half();
    let nu = f("0.5");
    let z = lr("0.8");
    let spec = SeriesSpec::new(vec![], vec![Float::with_val(prec(), &nu + 1u32)], vec![], f("1")).unwrap();
    let w = &(&z * &z) * &(&q.pow(&nu) / &lr("4"));
    let g = g_eval(&spec, &q, &w, tol()).unwrap();
    let qq = qpoch_infinite(&q.pow_int(1), &q, tol()).unwrap().0;
    let scale = (&lr("0.4")).abs_pow(&nu);
    let want = &(&g / &(&qq * &qq)) * &scale;
    let got = jackson_j2(&LogComplexValue::from_real(z), &nu, &q, tol()).unwrap();
    assert_close(&got.as_real().unwrap(), &want, 1e-48);
}

#[test]
fn jackson_edge_cases() {
    let q = half();
    let zero = LogComplexValue::zero(prec());
    assert!(jackson_j2(&zero, &f("0.5"), &q, tol()).unwrap().is_zero());
    assert_eq!(jackson_j2(&zero, &f("0"), &q, tol()).unwrap(), LogComplexValue::one(prec()));
    let z = LogComplexValue::from_real(lr("1"));
    assert!(matches!(jackson_j2(&z, &f("-1"), &q, tol()), Err(Error::Domain(_))));
    let zi = LogComplexValue::on_axis(1, lr("1"));
    assert!(matches!(jackson_j2(&zi, &f("0.5"), &q, tol()), Err(Error::PhaseModel(_))));
}

/// Exact `h_n(sinh xi | q)` with `e^xi = x`.
fn ismail_masson_exact(n: u64, x: &Rational, q: &Rational) -> Rational {
    let mut acc = Rational::new();
    for k in 0..=n {
        let mut t = poch_exact(q, q, n) / (poch_exact(q, q, k) * poch_exact(q, q, n - k));
        t *= qpow_exact(q, k as i64 * (k as i64 - n as i64));
        t *= qpow_exact(x, n as i64 - 2 * k as i64);
        if k % 2 == 1 {
            t = -t;
        }
        acc += t;
    }
    acc
}

#[test]
fn ismail_masson_values() {
    let q = half();
    let x = LogComplexValue::from_real(lr("2"));
    assert_eq!(ismail_masson_h(0, &x, &q).unwrap(), LogComplexValue::one(prec()));
    // n = 1: e^xi - e^-xi
    let got = ismail_masson_h(1, &x, &q).unwrap().as_real().unwrap();
    assert_close(&got, &lr("1.5"), 1e-55);
    let qr = Rational::from((1, 2));
    for n in [3u64, 6, 9] {
        let want = ismail_masson_exact(n, &Rational::from(2), &qr);
        let got = ismail_masson_h(n, &x, &q).unwrap().as_real().unwrap();
        assert_close(&got, &rat(&want), 1e-50);
    }
}

#[test]
fn ismail_masson_imaginary_axis() {
    // e^xi = i r: h_n = i^n sum (-1)^(k(1+1)) ... stays on the axis of i^n.
    let q = half();
    let r = Rational::from((3, 2));
    let x = LogComplexValue::on_axis(1, rat(&r));
    for n in 0..6u64 {
        let got = ismail_masson_h(n, &x, &q).unwrap();
        // Exact: substitute e^xi = i r, so e^((n-2k) xi) = i^(n-2k) r^(n-2k).
        let qr = Rational::from((1, 2));
        let mut acc = Rational::new();
        for k in 0..=n {
            let mut t = poch_exact(&qr, &qr, n) / (poch_exact(&qr, &qr, k) * poch_exact(&qr, &qr, n - k));
            t *= qpow_exact(&qr, k as i64 * (k as i64 - n as i64));
            t *= qpow_exact(&r, n as i64 - 2 * k as i64);
            // (-1)^k i^(-2k) = 1
            acc += t;
        }
        let want = LogComplexValue::on_axis(n as i64, rat(&acc));
        assert_eq!(got.quarter_phase(), want.quarter_phase(), "n = {n}");
        assert_close(got.abs(), want.abs(), 1e-50);
    }
}

fn sw_exact(n: u64, x: &Rational, q: &Rational) -> Rational {
    let mut acc = Rational::new();
    for k in 0..=n {
        let mut t = qpow_exact(q, (k * k) as i64) * qpow_exact(&Rational::from(-x), k as i64);
        t /= poch_exact(q, q, k) * poch_exact(q, q, n - k);
        acc += t;
    }
    acc
}

#[test]
fn stieltjes_wigert_values() {
    let q = half();
    let x = lr("3");
    let s0 = stieltjes_wigert_eval(0, &x, &q).unwrap();
    assert_close(&s0, &LogRealValue::one(prec()), 1e-55);
    // S_1 = (1 - q x) / (1 - q) = -1
    assert_close(&stieltjes_wigert_eval(1, &x, &q).unwrap(), &lr("-1"), 1e-55);
    let want = sw_exact(4, &Rational::from(3), &Rational::from((1, 2)));
    assert_close(&stieltjes_wigert_eval(4, &x, &q).unwrap(), &rat(&want), 1e-50);
    assert_eq!(stieltjes_wigert_eval(5, &LogRealValue::zero(prec()), &q).unwrap().sign(), Sign::Positive);
}

#[test]
fn stieltjes_wigert_matches_h() {
    let q = QParameter::new(f("0.21")).unwrap();
    let qq = qpoch_infinite(&q.pow_int(1), &q, tol()).unwrap().0;
    let empty = SeriesSpec::empty(f("1")).unwrap();
    for (n, x) in [(3u64, "2.5"), (10, "-7"), (25, "400")] {
        let h = h_eval(&empty, &q, n, &lr(x), tol()).unwrap();
        let qn = crate::qpochhammer::qpoch_finite(&q.pow_int(1), &q, n);
        let s = stieltjes_wigert_eval(n, &lr(x), &q).unwrap();
        assert_close(&h, &(&(&qn * &qq) * &s), 1e-45);
    }
}

#[test]
fn laguerre_values() {
    let q = half();
    let a0 = f("0");
    assert_close(&q_laguerre_eval(0, &a0, &lr("1"), &q).unwrap(), &LogRealValue::one(prec()), 1e-55);
    // L_1^(0)(x; 1/2) = 1 / (1 - q) - q x
    assert_close(&q_laguerre_eval(1, &a0, &lr("1"), &q).unwrap(), &lr("1.5"), 1e-55);
    assert_close(&q_laguerre_eval(1, &a0, &lr("3"), &q).unwrap(), &lr("0.5"), 1e-55);
    assert!(q_laguerre_eval(1, &a0, &lr("4"), &q).unwrap().to_f64().abs() < 1e-50);
    let qr = Rational::from((1, 2));
    for (n, x) in [(4u64, Rational::from(3)), (7, Rational::from((-5, 3)))] {
        let mut want = Rational::new();
        for k in 0..=n {
            let mut t = qpow_exact(&qr, (k * k) as i64) * qpow_exact(&Rational::from(-&x), k as i64);
            t *= poch_exact(&qr, &qr, n);
            t /= poch_exact(&qr, &qr, k) * poch_exact(&qr, &qr, n - k) * poch_exact(&qr, &qr, n - k);
            want += t;
        }
        let xv = rat(&x);
        assert_close(&q_laguerre_eval(n, &a0, &xv, &q).unwrap(), &rat(&want), 1e-50);
    }
    assert!(matches!(q_laguerre_eval(2, &f("-1"), &lr("1"), &q), Err(Error::Domain(_))));
}

#[test]
fn laguerre_matches_h() {
    let q = QParameter::new(f("0.3")).unwrap();
    let qq = qpoch_infinite(&q.pow_int(1), &q, tol()).unwrap().0;
    let alpha = f("0.5");
    let c = Float::with_val(prec(), &alpha + 1u32);
    let spec = SeriesSpec::new(vec![], vec![], vec![c], f("1")).unwrap();
    for (n, x) in [(5u64, "1.5"), (12, "-30")] {
        let arg = &lr(x) * &q.pow(&alpha);
        let h = h_eval(&spec, &q, n, &arg, tol()).unwrap();
        let qn = crate::qpochhammer::qpoch_finite(&q.pow_int(1), &q, n);
        let l = q_laguerre_eval(n, &alpha, &lr(x), &q).unwrap();
        assert_close(&h, &(&(&qn * &qq) * &l), 1e-45);
    }
}

#[test]
fn h_small_cases() {
    let q = half();
    let qq = lr(QQ_HALF);
    let spec = SeriesSpec::new(vec![f("2")], vec![f("1")], vec![f("3")], f("0.5")).unwrap();
    let h0 = h_eval(&spec, &q, 0, &lr("9"), tol()).unwrap();
    let g0 = g_eval(&spec, &q, &LogRealValue::zero(prec()), tol()).unwrap();
    assert_close(&h0, &g0, 1e-50);

    // Empty spec, n = 1, z = 2: (q;q)_inf (1 - 2 q (1 - q) / (1 - q)) = (q;q)_inf (1 - 2q) = 0.
    let empty = SeriesSpec::empty(f("1")).unwrap();
    let h1 = h_eval(&empty, &q, 1, &lr("2"), tol()).unwrap();
    assert!(h1.to_f64().abs() < 1e-50);
    // z = 3: (q;q)_inf (1 - 3/2)
    let h1 = h_eval(&empty, &q, 1, &lr("3"), tol()).unwrap();
    assert_close(&h1, &(&qq * &lr("-0.5")), 1e-55);
}

#[test]
fn rphis_values() {
    let q = half();
    let params = ConfluentParams::new(vec![f("0.7")], vec![f("0.4"), f("1.3")], prec()).unwrap();
    assert_eq!(params.ell().to_f64(), 1.0);
    assert_eq!(rphis_eval(&params, &q, &LogRealValue::zero(prec()), tol()).unwrap(), LogRealValue::one(prec()));
    let got = rphis_eval(&params, &q, &lr("0.6"), tol()).unwrap();
    assert_close(&got, &lr("5.15044485126816740512815181137028465178699835529161191435181"), 1e-48);
}

#[test]
fn rphis_matches_g() {
    let q = QParameter::new(f("0.45")).unwrap();
    for (alphas, betas, z) in [
        (vec!["0.7"], vec!["0.4", "1.3"], "0.6"),
        (vec![], vec!["1.5"], "-12"),
        (vec!["0.2", "0.9"], vec!["0.6", "2.2", "1.1"], "35"),
    ] {
        let alphas: Vec<Float> = alphas.into_iter().map(f).collect();
        let betas: Vec<Float> = betas.into_iter().map(f).collect();
        let params = ConfluentParams::new(alphas.clone(), betas.clone(), prec()).unwrap();
        let parity = (params.s() - params.r()) % 2;
        let zz = lr(z);
        let arg = if parity == 1 { -&zz } else { zz.clone() };
        let lhs = rphis_eval(&params, &q, &arg, tol()).unwrap();
        let w = zz.scale_log(&Float::with_val(prec(), -(params.ell() * q.log_q())));
        let g = g_eval(params.spec(), &q, &w, tol()).unwrap();
        let t = tol();
        let mut factor = qpoch_infinite(&q.pow_int(1), &q, t).unwrap().0.recip();
        for a in &alphas {
            factor = &factor * &qpoch_infinite(&q.pow(a), &q, t).unwrap().0;
        }
        for b in &betas {
            factor = &factor / &qpoch_infinite(&q.pow(b), &q, t).unwrap().0;
        }
        assert_close(&lhs, &(&factor * &g), 1e-45);
    }
}
