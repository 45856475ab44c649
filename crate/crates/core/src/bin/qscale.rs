use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rug::Float;
use serde_json::{Map, Number, Value};

use qscale_core::harness::{
    evaluate_point, format_real, preset, preset_names, regression_check, render, run_sweep, Ceilings, Format,
    SweepConfig, VPoint, DEFAULT_CEILINGS,
};
use qscale_core::numkernel::{parse_float, Precision};
use qscale_core::{Error, LogComplexValue};

/// Exit codes.
const FAIL: u8 = 1;
const CONFIG: u8 = 2;
const PRECISION: u8 = 3;

/// `decimal_value` is printed only below this `|log10|`.
const DECIMAL_LOG10_LIMIT: u32 = 300;

#[derive(Parser)]
#[command(name = "qscale", version, about = "Scaled q -> 1 asymptotics of q-series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at its scaled argument.
    Eval(EvalArgs),
    /// Run a sweep from a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Check bundled presets against stored ceilings.
    Verify {
        #[arg(long, conflicts_with = "all")]
        preset: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        ceilings: Option<PathBuf>,
        /// Overwrite the ceilings file with the measured values.
        #[arg(long, requires = "ceilings")]
        bootstrap: bool,
    },
}

#[derive(Args)]
struct EvalArgs {
    function: String,
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    v: String,
    #[arg(long, default_value = "minus")]
    branch: String,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    betas: Option<String>,
    #[arg(long)]
    gammas: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    /// `q = exp(-pi T)`.
    #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
    q_log_t: Option<String>,
    /// `q = exp(-pi / L)`.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    eps: Option<String>,
    /// Print the asymptotic main term instead of the exact value.
    #[arg(long)]
    main_term: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Sweep { config, out, format } => sweep(config, out, &format),
        Command::Verify { preset, all, ceilings, bootstrap } => return verify(preset, all, ceilings, bootstrap),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qscale: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision { .. } => PRECISION,
        Error::Config(_) | Error::Io(_) | Error::Json(_) => CONFIG,
        _ => FAIL,
    }
}

fn eval(a: EvalArgs) -> Result<(), Error> {
    let precision = a.precision.map(Precision::new).unwrap_or_else(Precision::from_env);
    let mut text = format!(
        "function = {}\nbranch = {}\nscale = power:0.4\nn_list =\nv_list = {}\nprecision = {}\n",
        a.function,
        a.branch,
        a.v,
        precision.digits()
    );
    for (key, value) in [
        ("nu", &a.nu),
        ("alpha", &a.alpha),
        ("alphas", &a.alphas),
        ("betas", &a.betas),
        ("gammas", &a.gammas),
        ("ell", &a.ell),
        ("eps", &a.eps),
    ] {
        if let Some(v) = value {
            text.push_str(&format!("{key} = {v}\n"));
        }
    }
    let cfg = SweepConfig::parse(&text)?;
    let prec = precision.bits();
    let number = |s: &str| parse_float(s, prec).ok_or_else(|| Error::Config(format!("not a number: {s:?}")));
    let lambda = match (&a.lambda, &a.q_log_t) {
        (Some(l), _) => number(l)?,
        (None, Some(t)) => number(t)?.recip(),
        (None, None) => unreachable!("clap requires one of them"),
    };
    if !(lambda > 0u32) {
        return Err(Error::Config("lambda must be positive".into()));
    }
    let v: VPoint = a.v.parse()?;
    let p = evaluate_point(&cfg, a.n, &v, &lambda)?;
    let value = if a.main_term { p.main } else { p.exact };
    println!("{}", value_json(&value));
    Ok(())
}

fn value_json(x: &LogComplexValue) -> String {
    let log10 = x.log10_abs();
    let mut obj = Map::new();
    obj.insert("log10_magnitude".into(), json_real(&log10));
    obj.insert("quarter_phase".into(), Value::from(x.quarter_phase()));
    if x.is_zero() || log10.clone().abs() < DECIMAL_LOG10_LIMIT {
        obj.insert("decimal_value".into(), json_real(&x.abs().to_float()));
    }
    Value::Object(obj).to_string()
}

fn json_real(x: &Float) -> Value {
    match format_real(x) {
        Some(s) => Value::Number(s.parse::<Number>().expect("formatted number parses")),
        None => Value::Null,
    }
}

fn sweep(config: PathBuf, out: Option<PathBuf>, format: &str) -> Result<(), Error> {
    let format: Format = format.parse()?;
    let cfg = SweepConfig::parse(&std::fs::read_to_string(&config)?)?;
    let records = run_sweep(&cfg)?;
    let text = render(&records, format);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(name: Option<String>, all: bool, path: Option<PathBuf>, bootstrap: bool) -> ExitCode {
    let names: Vec<String> = match (name, all) {
        (Some(n), _) => vec![n],
        (None, true) => preset_names().map(String::from).collect(),
        (None, false) => {
            eprintln!("qscale: verify needs --preset NAME or --all");
            return ExitCode::from(CONFIG);
        }
    };
    let loaded = match &path {
        Some(p) if bootstrap && !p.exists() => Ok(Ceilings::default()),
        Some(p) => Ceilings::load(p),
        None => Ceilings::parse(DEFAULT_CEILINGS),
    };
    let mut ceilings = match loaded {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qscale: {e}");
            return ExitCode::from(CONFIG);
        }
    };

    let mut code = 0u8;
    let mut raise = |c: u8| {
        // Config errors outrank precision errors, which outrank failures.
        let rank = |c: u8| match c {
            CONFIG => 3,
            PRECISION => 2,
            FAIL => 1,
            _ => 0,
        };
        if rank(c) > rank(code) {
            code = c;
        }
    };
    for name in &names {
        let records = preset(name).and_then(|cfg| run_sweep(&cfg));
        match records {
            Ok(records) => {
                if bootstrap {
                    ceilings.bootstrap(name, &records);
                }
                let report = regression_check(name, &records, &ceilings);
                print!("{}", report.render());
                if !report.passed() {
                    raise(FAIL);
                }
            }
            Err(e) => {
                println!("preset {name}: ERROR {e}");
                raise(exit_code(&e));
            }
        }
    }
    if bootstrap {
        if let Err(e) = ceilings.save(path.as_deref().expect("clap requires --ceilings")) {
            eprintln!("qscale: {e}");
            raise(CONFIG);
        }
    }
    println!("{}", if code == 0 { "verify: PASS" } else { "verify: FAIL" });
    ExitCode::from(code)
}
