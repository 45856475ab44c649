use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::asymptotics::{AdmissibleScale, Branch};
use crate::error::{Error, Result};
use crate::numkernel::{parse_float, Precision, Tolerance};

/// Digits required once any `n` reaches [`LARGE_N`].
pub const MIN_DIGITS_LARGE_N: u32 = 30;
pub const LARGE_N: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Function {
    G,
    H,
    Aq,
    Jackson,
    Confluent,
    IsmailMasson,
    StieltjesWigert,
    QLaguerre,
}

impl Function {
    pub const ALL: [Function; 8] = [
        Function::G,
        Function::H,
        Function::Aq,
        Function::Jackson,
        Function::Confluent,
        Function::IsmailMasson,
        Function::StieltjesWigert,
        Function::QLaguerre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::G => "g",
            Function::H => "h",
            Function::Aq => "aq",
            Function::Jackson => "jackson",
            Function::Confluent => "confluent",
            Function::IsmailMasson => "ismail_masson",
            Function::StieltjesWigert => "stieltjes_wigert",
            Function::QLaguerre => "q_laguerre",
        }
    }
}

impl FromStr for Function {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Function::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown function {s:?}")))
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A grid value of `v`: a number, or `zero:m`, the `m`-th zero
/// `v = l (m + 1/2) / lambda_n` of the plus-branch cosine.
#[derive(Clone, Debug, PartialEq)]
pub enum VPoint {
    Value(String),
    CosineZero(i64),
}

impl VPoint {
    pub fn resolve(&self, ell: &Float, lambda: &Float, prec: u32) -> Float {
        match self {
            VPoint::Value(s) => parse_float(s, prec).expect("validated at parse time"),
            VPoint::CosineZero(m) => {
                let half = Float::with_val(prec, *m) + 0.5f64;
                Float::with_val(prec, ell * half) / lambda
            }
        }
    }
}

impl fmt::Display for VPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VPoint::Value(s) => f.write_str(s),
            VPoint::CosineZero(m) => write!(f, "zero:{m}"),
        }
    }
}

impl FromStr for VPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(m) = s.strip_prefix("zero:") {
            let m = m.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad cosine zero index {m:?}")))?;
            return Ok(VPoint::CosineZero(m));
        }
        decimal(s)?;
        Ok(VPoint::Value(s.to_string()))
    }
}

fn decimal(s: &str) -> Result<String> {
    let s = s.trim();
    match parse_float(s, 64) {
        Some(x) if x.is_finite() => Ok(s.to_string()),
        _ => Err(Error::Config(format!("not a number: {s:?}"))),
    }
}

/// One sweep over an `(n, v)` grid. Numeric parameters are kept as decimal
/// strings and parsed at the working precision of each run.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub name: String,
    pub function: Function,
    pub branch: Branch,
    pub scale: AdmissibleScale,
    pub n_list: Vec<u64>,
    pub v_list: Vec<VPoint>,
    pub precision: Precision,
    /// `None` means the precision's default.
    pub eps: Option<String>,
    pub nu: String,
    pub alpha: String,
    pub alphas: Vec<String>,
    pub betas: Vec<String>,
    pub gammas: Vec<String>,
    pub ell: String,
}

const KEYS: [&str; 15] = [
    "name", "function", "branch", "scale", "n_list", "v_list", "precision", "eps", "nu", "alpha", "alphas", "betas",
    "gammas", "ell", "description",
];

fn list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

impl SweepConfig {
    /// Parses flat `key = value` lines; `#` starts a comment. Unknown keys
    /// and repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = std::collections::BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::Config(format!("line {}: unknown key {k:?}", i + 1)));
            }
            if seen.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: repeated key {k:?}", i + 1)));
            }
        }
        let get = |k: &str| seen.get(k).map(String::as_str);
        let need = |k: &str| get(k).ok_or_else(|| Error::Config(format!("missing key {k:?}")));

        let function: Function = need("function")?.parse()?;
        let branch: Branch = need("branch")?.parse()?;
        let scale: AdmissibleScale = need("scale")?.parse()?;
        let n_list = list(need("n_list")?)
            .map(|x| x.parse::<u64>().map_err(|_| Error::Config(format!("bad n {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let v_list = list(need("v_list")?).map(str::parse).collect::<Result<Vec<VPoint>>>()?;
        let precision = match get("precision") {
            Some(d) => Precision::new(d.parse::<u32>().map_err(|_| Error::Config(format!("bad precision {d:?}")))?),
            None => Precision::from_env(),
        };
        let nums = |k: &str| get(k).map(|s| list(s).map(decimal).collect::<Result<Vec<_>>>()).transpose();
        let cfg = SweepConfig {
            name: get("name").unwrap_or("sweep").to_string(),
            function,
            branch,
            scale,
            n_list,
            v_list,
            precision,
            eps: get("eps").map(decimal).transpose()?,
            nu: get("nu").map(decimal).transpose()?.unwrap_or_else(|| "0".into()),
            alpha: get("alpha").map(decimal).transpose()?.unwrap_or_else(|| "0".into()),
            alphas: nums("alphas")?.unwrap_or_default(),
            betas: nums("betas")?.unwrap_or_default(),
            gammas: nums("gammas")?.unwrap_or_default(),
            ell: get("ell").map(decimal).transpose()?.unwrap_or_else(|| "1".into()),
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Grid invariants; the scale itself is validated by the sweep.
    pub fn check(&self) -> Result<()> {
        if self.n_list.iter().any(|&n| n == 0) {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_list must be strictly increasing".into()));
        }
        if self.n_list.iter().any(|&n| n >= LARGE_N) && self.precision.digits() < MIN_DIGITS_LARGE_N {
            return Err(Error::Config(format!(
                "precision {} is below {MIN_DIGITS_LARGE_N} digits with n >= {LARGE_N}",
                self.precision.digits()
            )));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        match &self.eps {
            None => self.precision.default_tolerance(),
            Some(s) => {
                let x = parse_float(s, 128).expect("validated at parse time");
                Tolerance::from_ln(x.ln().to_f64())
            }
        }
    }

    /// Same sweep at a different precision, keeping an explicit eps.
    pub fn with_precision(&self, precision: Precision) -> Self {
        SweepConfig { precision, ..self.clone() }
    }
}
