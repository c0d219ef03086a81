//! Argument grammar and command dispatch for `pentadgf`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use pentagonal_dgf::dgf::{self, MethodChoice};
use pentagonal_dgf::{perron, qfunc, specialnum, zeros};
use pentagonal_dgf::{Complex64, Error, EvalResult, Method};
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Parses `RE,IM` or `RE` (imaginary part 0). Surrounding blanks are allowed.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parts.next().unwrap_or_default();
    let im = parts.next();
    if parts.next().is_some() {
        return Err(format!("expected RE,IM, got {text:?}"));
    }
    let number = |t: &str| -> Result<f64, String> {
        let v: f64 = t.trim().parse().map_err(|_| format!("not a number: {t:?}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("not a finite number: {t:?}"))
        }
    };
    Ok(Complex64::new(number(re)?, im.map(number).transpose()?.unwrap_or(0.0)))
}

fn parse_finite(text: &str) -> Result<f64, String> {
    parse_complex(text).and_then(|z| {
        if z.im == 0.0 && !text.contains(',') {
            Ok(z.re)
        } else {
            Err(format!("expected a real number, got {text:?}"))
        }
    })
}

fn parse_tol(text: &str) -> Result<f64, String> {
    let t = parse_finite(text)?;
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err("tolerance must lie in (0, 1)".into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "pentadgf", version, about = "Dirichlet generating function of the pentagonal-number coefficients")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Integral,
    Series,
    Mellin,
    Explicit,
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhiMethod {
    Series,
    Hankel,
    Product,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EtaMethod {
    Series,
    Hankel,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    A,
    Bernoulli,
    Gstar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// D*(s) by the chosen route
    Eval {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_enum, default_value_t = EvalMethod::Auto)]
        method: EvalMethod,
        #[arg(long, value_parser = parse_tol, default_value = "1e-12")]
        tol: f64,
    },
    /// Exact D(k) at a positive integer
    Dk {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=400))]
        k: u32,
        /// include the coefficients of the powers of π
        #[arg(long)]
        exact: bool,
    },
    /// Zeros in 0 < Re s < 1, 0 < Im s <= T
    Zeros {
        #[arg(long = "imag-max", value_parser = parse_finite, allow_hyphen_values = true)]
        imag_max: f64,
        #[arg(long, value_parser = parse_tol, default_value = "1e-12")]
        tol: f64,
    },
    /// Partial sum S(x) of the coefficients below x
    PartialSum {
        #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
        x: f64,
    },
    /// Euler function φ(q)
    Phi {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
        #[arg(long, value_enum, default_value_t = PhiMethod::Series)]
        method: PhiMethod,
        #[arg(long, value_parser = parse_tol, default_value = "1e-12")]
        tol: f64,
    },
    /// Dedekind eta function η(τ)
    Eta {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_enum, default_value_t = EtaMethod::Series)]
        method: EtaMethod,
        #[arg(long, value_parser = parse_tol, default_value = "1e-12")]
        tol: f64,
    },
    /// Sequence tables, one row per index
    Table {
        #[arg(long, value_enum)]
        what: TableKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=100_000))]
        n: u32,
    },
    /// Leading-order forms of D*(s) for real s < 0
    Asymptotic {
        #[arg(long, value_parser = parse_finite, allow_hyphen_values = true)]
        s: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// One line of output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub value: ComplexOut,
    pub err_estimate: f64,
    pub method: String,
    pub elapsed_ms: f64,
    pub flagged: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
}

impl OutputRecord {
    fn new(command: &str, inputs: &[(&str, String)], value: Complex64, err_estimate: f64, method: &str) -> Self {
        Self {
            command: command.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value: value.into(),
            err_estimate,
            method: method.into(),
            elapsed_ms: 0.0,
            flagged: false,
            extra: BTreeMap::new(),
        }
    }

    fn from_eval(command: &str, inputs: &[(&str, String)], r: &EvalResult) -> Self {
        let mut rec = Self::new(command, inputs, r.value, r.err_estimate, r.method.name());
        rec.flagged = r.ill_conditioned;
        rec
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    pub const CSV_HEADER: &'static str = "command,input,value_re,value_im,err,method";

    pub fn csv_row(&self) -> String {
        let input = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},\"{}\",{},{},{},{}",
            self.command, input, self.value.re, self.value.im, self.err_estimate, self.method
        )
    }
}

fn show_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

/// Records for a command plus whether the run hit a numerical failure.
struct Outcome {
    records: Vec<OutputRecord>,
    numeric_failure: bool,
}

impl Outcome {
    fn one(rec: OutputRecord) -> Self {
        let numeric_failure = rec.flagged;
        Self {
            records: vec![rec],
            numeric_failure,
        }
    }
}

/// Turns a convergence failure into a flagged record carrying the best value.
fn recover(command: &str, inputs: &[(&str, String)], method: &str, e: Error) -> Result<Outcome, Error> {
    match e {
        Error::Convergence { best, err_estimate, ref context } => {
            let mut rec = OutputRecord::new(command, inputs, best, err_estimate, method);
            rec.flagged = true;
            rec.extra.insert("error".into(), Value::from(format!("no convergence ({context})")));
            Ok(Outcome::one(rec))
        }
        other => Err(other),
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match *cmd {
        Command::Eval { s, method, tol } => {
            let inputs = [("s", show_complex(s)), ("tol", format!("{tol:e}"))];
            let choice = match method {
                EvalMethod::Auto => MethodChoice::Auto,
                EvalMethod::Integral => MethodChoice::Fixed(Method::Integral),
                EvalMethod::Series => MethodChoice::Fixed(Method::Series),
                EvalMethod::Mellin => MethodChoice::Fixed(Method::Mellin),
                EvalMethod::Explicit => MethodChoice::Fixed(Method::Explicit),
            };
            let name = match choice {
                MethodChoice::Auto => dgf::auto_method(s).name(),
                MethodChoice::Fixed(m) => m.name(),
            };
            match dgf::evaluate(s, choice, tol) {
                Ok(r) => Ok(Outcome::one(OutputRecord::from_eval("eval", &inputs, &r))),
                Err(e) => recover("eval", &inputs, name, e),
            }
        }
        Command::Dk { k, exact } => {
            let inputs = [("k", k.to_string()), ("exact", exact.to_string())];
            let d = dgf::d_explicit(k);
            let mut rec = OutputRecord::from_eval("dk", &inputs, &d.to_eval_result());
            if exact {
                let coeffs: Vec<Value> = d
                    .pi_coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, a)| {
                        serde_json::json!({
                            "pi_power": j,
                            "rational": a.rat.to_string(),
                            "sqrt3": a.root3.to_string(),
                        })
                    })
                    .collect();
                rec = rec.with("pi_coeffs", coeffs);
            }
            Ok(Outcome::one(rec))
        }
        Command::Zeros { imag_max, tol } => {
            let inputs = [("imag_max", imag_max.to_string()), ("tol", format!("{tol:e}"))];
            let found = zeros::find_zeros(imag_max, tol)?;
            let numeric_failure = found.iter().any(|z| !z.converged);
            let records = found
                .iter()
                .map(|z| {
                    let mut rec = OutputRecord::new("zeros", &inputs, z.location, z.residual, z.method.name())
                        .with("residual", z.residual)
                        .with("winding_verified", z.winding_verified)
                        .with("converged", z.converged);
                    rec.flagged = !z.converged;
                    rec
                })
                .collect();
            Ok(Outcome {
                records,
                numeric_failure,
            })
        }
        Command::PartialSum { x } => {
            let inputs = [("x", x.to_string())];
            let r = perron::partial_sum(x)?;
            let rec = OutputRecord::new("partial-sum", &inputs, Complex64::new(r.value as f64, 0.0), 0.0, "residue_count")
                .with("k_min", r.k_min)
                .with("z_minus", r.z_minus);
            Ok(Outcome::one(rec))
        }
        Command::Phi { q, method, tol } => {
            let inputs = [("q", show_complex(q)), ("tol", format!("{tol:e}"))];
            let r = match method {
                PhiMethod::Series => qfunc::phi_series(q, tol),
                PhiMethod::Hankel => qfunc::phi_hankel(q, tol),
                PhiMethod::Product => {
                    let n = qfunc::product_terms_for(q);
                    qfunc::phi_product_oracle(q, n).map(|v| EvalResult {
                        value: v,
                        err_estimate: 4.0 * f64::EPSILON * n as f64 * v.norm().max(1.0),
                        method: Method::Product,
                        evaluations: n,
                        ill_conditioned: false,
                    })
                }
            };
            let name = match method {
                PhiMethod::Series => "series",
                PhiMethod::Hankel => "hankel",
                PhiMethod::Product => "product",
            };
            match r {
                Ok(r) => Ok(Outcome::one(OutputRecord::from_eval("phi", &inputs, &r))),
                Err(e) => recover("phi", &inputs, name, e),
            }
        }
        Command::Eta { tau, method, tol } => {
            let inputs = [("tau", show_complex(tau)), ("tol", format!("{tol:e}"))];
            let (r, name) = match method {
                EtaMethod::Series => (qfunc::eta_series(tau, tol), "series"),
                EtaMethod::Hankel => (qfunc::eta_hankel(tau, tol), "hankel"),
            };
            match r {
                Ok(r) => Ok(Outcome::one(OutputRecord::from_eval("eta", &inputs, &r))),
                Err(e) => recover("eta", &inputs, name, e),
            }
        }
        Command::Table { what, n } => Ok(Outcome {
            records: table(what, n as usize)?,
            numeric_failure: false,
        }),
        Command::Asymptotic { s } => {
            let inputs = [("s", s.to_string())];
            let a = dgf::asymptotic_approx(s)?;
            let rec = OutputRecord::new("asymptotic", &inputs, Complex64::new(a.zeta_form, 0.0), 0.0, "asymptotic")
                .with("gamma_form", a.gamma_form);
            Ok(Outcome::one(rec))
        }
    }
}

fn table(what: TableKind, n: usize) -> Result<Vec<OutputRecord>, Error> {
    let row = |name: &str, index: usize, exact: String, approx: f64| {
        OutputRecord::new("table", &[("what", name.to_string()), ("n", index.to_string())], Complex64::new(approx, 0.0), 0.0, "exact")
            .with("exact", exact)
    };
    let rows = match what {
        TableKind::A => {
            let t = specialnum::coeff_table(n.max(1));
            (0..=n)
                .map(|i| {
                    let a = t.get(i).unwrap_or_default();
                    row("a", i, a.to_string(), f64::from(a))
                })
                .collect()
        }
        TableKind::Bernoulli => {
            if n > 2000 {
                return Err(Error::Domain("bernoulli table supports n <= 2000".into()));
            }
            specialnum::bernoulli_table(n)
                .iter()
                .enumerate()
                .map(|(i, b)| row("bernoulli", i, b.to_string(), ratio_f64(b)))
                .collect()
        }
        TableKind::Gstar => {
            if n > 2000 {
                return Err(Error::Domain("gstar table supports n <= 2000".into()));
            }
            specialnum::glaisher_gstar_table(n)
                .iter()
                .enumerate()
                .map(|(i, g)| row("gstar", i, g.to_string(), ratio_f64(g)))
                .collect()
        }
    };
    Ok(rows)
}

fn ratio_f64(r: &specialnum::Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `argv` without executing anything.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Runs the tool on `argv` (including the program name), writing records to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_input_error() { EXIT_INPUT } else { EXIT_NUMERIC };
        }
    };
    if cli.format == Format::Csv {
        let _ = writeln!(out, "{}", OutputRecord::CSV_HEADER);
    }
    for mut rec in outcome.records {
        rec.elapsed_ms = elapsed_ms;
        let line = match cli.format {
            Format::Json => serde_json::to_string(&rec).expect("records serialize"),
            Format::Csv => rec.csv_row(),
        };
        if writeln!(out, "{line}").is_err() {
            return EXIT_NUMERIC;
        }
    }
    if outcome.numeric_failure {
        let _ = writeln!(err, "warning: result flagged (convergence or conditioning)");
        EXIT_NUMERIC
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("2,0").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-1.5, 3e-2").unwrap(), Complex64::new(-1.5, 0.03));
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("nan,0").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn real_parsing() {
        assert_eq!(parse_finite("-4.5").unwrap(), -4.5);
        assert!(parse_finite("1,0").is_err());
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("1e-10").is_ok());
    }
}
