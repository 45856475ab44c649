use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Probe indices `2^6 ..= 2^40` used by [`AdmissibleScale::validate`]; only
/// the upper half is checked, since both ratios may dip before increasing.
const PROBE_EXPONENTS: std::ops::RangeInclusive<u32> = 6..=40;

/// Minimum relative growth between probes, so flat ratios are rejected
/// despite rounding.
const GROWTH_MARGIN: f64 = 1e-30;

/// A sequence `lambda_n` coupling `q = exp(-pi / lambda_n)` to the index `n`.
///
/// Admissibility requires `lambda_n / log n -> inf` and `n / lambda_n^2 -> inf`;
/// [`validate`](Self::validate) checks both ratios increase on a probe range.
#[derive(Clone, Debug, PartialEq)]
pub enum AdmissibleScale {
    /// `n^beta log^gamma n`.
    Power { beta: Rational, gamma: Rational },
    /// `log^gamma n`.
    Log { gamma: Rational },
    /// Explicit values, sorted by `n`.
    Table(Vec<(u64, Rational)>),
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad_number(s))?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad_number(s));
    }
    let all = format!("{int}{frac}");
    let mut r = Rational::from(all.parse::<rug::Integer>().map_err(|_| bad_number(s))?);
    let shift = exp - frac.len() as i32;
    let ten = Rational::from(10);
    for _ in 0..shift.unsigned_abs() {
        if shift > 0 {
            r *= &ten;
        } else {
            r /= &ten;
        }
    }
    Ok(if neg { -r } else { r })
}

fn bad_number(s: &str) -> Error {
    Error::Config(format!("not a decimal number: {s:?}"))
}

impl FromStr for AdmissibleScale {
    type Err = Error;

    /// `power:BETA[:GAMMA]`, `log:GAMMA` or `table:N=LAMBDA/N=LAMBDA/...`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| Error::Config(format!("bad scale {s:?}")))?;
        match kind {
            "power" => {
                let mut parts = rest.split(':');
                let beta = parse_rational(parts.next().unwrap_or(""))?;
                let gamma = parts.next().map(parse_rational).transpose()?.unwrap_or_default();
                if parts.next().is_some() {
                    return Err(Error::Config(format!("bad scale {s:?}")));
                }
                Ok(AdmissibleScale::Power { beta, gamma })
            }
            "log" => Ok(AdmissibleScale::Log { gamma: parse_rational(rest)? }),
            "table" => {
                let mut rows = Vec::new();
                for entry in rest.split('/').filter(|e| !e.trim().is_empty()) {
                    let (n, l) = entry.split_once('=').ok_or_else(|| Error::Config(format!("bad table entry {entry:?}")))?;
                    let n = n.trim().parse::<u64>().map_err(|_| Error::Config(format!("bad table index {n:?}")))?;
                    rows.push((n, parse_rational(l)?));
                }
                rows.sort_by_key(|r| r.0);
                if rows.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::Config("duplicate table index".into()));
                }
                Ok(AdmissibleScale::Table(rows))
            }
            _ => Err(Error::Config(format!("unknown scale family {kind:?}"))),
        }
    }
}

impl fmt::Display for AdmissibleScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dec = |r: &Rational| Float::with_val(64, r).to_string_radix(10, Some(12)).trim_end_matches('0').to_string();
        match self {
            AdmissibleScale::Power { beta, gamma } if *gamma == 0 => write!(f, "power:{}", dec(beta)),
            AdmissibleScale::Power { beta, gamma } => write!(f, "power:{}:{}", dec(beta), dec(gamma)),
            AdmissibleScale::Log { gamma } => write!(f, "log:{}", dec(gamma)),
            AdmissibleScale::Table(rows) => {
                write!(f, "table:")?;
                for (i, (n, l)) in rows.iter().enumerate() {
                    write!(f, "{}{n}={}", if i > 0 { "/" } else { "" }, dec(l))?;
                }
                Ok(())
            }
        }
    }
}

impl AdmissibleScale {
    pub fn power(beta: &str, gamma: &str) -> Result<Self> {
        Ok(AdmissibleScale::Power { beta: parse_rational(beta)?, gamma: parse_rational(gamma)? })
    }

    /// `lambda_n` at `prec` bits; must be positive.
    pub fn lambda(&self, n: u64, prec: u32) -> Result<Float> {
        let ln_n = || Float::with_val(prec, n).ln();
        let value = match self {
            AdmissibleScale::Power { beta, gamma } => {
                let mut v = (Float::with_val(prec, n).ln() * Float::with_val(prec, beta)).exp();
                if *gamma != 0 {
                    v *= ln_n().pow_log_safe(gamma, prec);
                }
                v
            }
            AdmissibleScale::Log { gamma } => ln_n().pow_log_safe(gamma, prec),
            AdmissibleScale::Table(rows) => match rows.binary_search_by_key(&n, |r| r.0) {
                Ok(i) => Float::with_val(prec, &rows[i].1),
                Err(_) => return Err(Error::Config(format!("scale table has no entry for n = {n}"))),
            },
        };
        if !(value > 0u32) || !value.is_finite() {
            return Err(Error::Domain(format!("lambda_{n} = {value} is not positive")));
        }
        Ok(value)
    }

    /// Probe indices: powers of two for the closed forms, table rows otherwise.
    fn probe_indices(&self) -> Vec<u64> {
        match self {
            AdmissibleScale::Table(rows) => rows.iter().map(|r| r.0).filter(|&n| n >= 2).collect(),
            _ => PROBE_EXPONENTS.map(|e| 1u64 << e).collect(),
        }
    }

    /// Checks that `lambda_n / log n` and `n / lambda_n^2` strictly increase
    /// over the upper half of the probe indices.
    pub fn validate(&self) -> Result<()> {
        let prec = 128;
        let mut probes = self.probe_indices();
        probes.drain(..probes.len() / 2);
        if probes.len() < 2 {
            return Err(Error::Config(format!("scale {self} has too few entries to validate")));
        }
        let mut prev: Option<(Float, Float)> = None;
        for n in probes {
            let l = self.lambda(n, prec).map_err(|e| Error::Config(format!("scale {self}: {e}")))?;
            let growth = Float::with_val(prec, &l / Float::with_val(prec, n).ln());
            let room = Float::with_val(prec, n) / Float::with_val(prec, l.square_ref());
            if let Some((g0, r0)) = &prev {
                let margin = Float::with_val(prec, GROWTH_MARGIN) + 1u32;
                if growth <= Float::with_val(prec, g0 * &margin) {
                    return Err(Error::Config(format!("scale {self}: lambda_n / log n does not grow at n = {n}")));
                }
                if room <= Float::with_val(prec, r0 * &margin) {
                    return Err(Error::Config(format!("scale {self}: n / lambda_n^2 does not grow at n = {n}")));
                }
            }
            prev = Some((growth, room));
        }
        Ok(())
    }
}

trait PowLog {
    fn pow_log_safe(self, e: &Rational, prec: u32) -> Float;
}

impl PowLog for Float {
    /// `self^e` for `self > 0` through `exp(e ln self)`; `0^e = 0` for `e > 0`.
    fn pow_log_safe(self, e: &Rational, prec: u32) -> Float {
        if self.is_zero() {
            return Float::new(prec);
        }
        (self.ln() * Float::with_val(prec, e)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        assert_eq!(
            "power:0.4".parse::<AdmissibleScale>().unwrap(),
            AdmissibleScale::Power { beta: Rational::from((2, 5)), gamma: Rational::new() }
        );
        assert_eq!(
            "log:2".parse::<AdmissibleScale>().unwrap(),
            AdmissibleScale::Log { gamma: Rational::from(2) }
        );
        let t: AdmissibleScale = "table:4=1.5/2=1.25".parse().unwrap();
        assert_eq!(t, AdmissibleScale::Table(vec![(2, Rational::from((5, 4))), (4, Rational::from((3, 2)))]));
        assert!("cubic:1".parse::<AdmissibleScale>().is_err());
        assert!("power:x".parse::<AdmissibleScale>().is_err());
    }

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(parse_rational("0.3").unwrap(), Rational::from((3, 10)));
        assert_eq!(parse_rational("-1.25e1").unwrap(), Rational::from((-25, 2)));
        assert_eq!(parse_rational("7").unwrap(), Rational::from(7));
    }

    #[test]
    fn validator_examples() {
        assert!(AdmissibleScale::power("0.3", "1").unwrap().validate().is_ok());
        assert!(AdmissibleScale::power("0.4", "0").unwrap().validate().is_ok());
        assert!("log:2".parse::<AdmissibleScale>().unwrap().validate().is_ok());
        assert!(AdmissibleScale::power("0.6", "0").unwrap().validate().is_err());
        assert!("log:1".parse::<AdmissibleScale>().unwrap().validate().is_err());
        assert!("log:1.01".parse::<AdmissibleScale>().unwrap().validate().is_ok());
        assert!(AdmissibleScale::power("0.5", "0").unwrap().validate().is_err());
        let t: AdmissibleScale = "table:64=5.3/128=7/256=9.2/512=12.1".parse().unwrap();
        assert!(t.validate().is_ok());
    }

    #[test]
    fn lambda_values() {
        let s = AdmissibleScale::power("0.5", "0").unwrap();
        assert_eq!(s.lambda(1024, 128).unwrap().to_f64(), 32.0);
        assert!("log:2".parse::<AdmissibleScale>().unwrap().lambda(1, 64).is_err());
    }
}
