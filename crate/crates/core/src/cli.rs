//! `torkernel` command line.
//!
//! Exit codes: 0 success, 1 malformed input or arguments, 2 validation
//! failure, 3 degenerate fan (`d = n`), 4 numeric verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use crate::error::Error;
use crate::fan::{parse_fan, validate_fan};
use crate::kernel::{build_kernel, KernelReport, NuMode};
use crate::numeric::{verify_representation, MonteCarloConfig, Representation, DEFAULT_WORKERS};
use crate::report::{render, Format, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

pub const MAX_D_VAR: &str = "TORKERNEL_MAX_D";
pub const DEFAULT_MAX_D: usize = 24;

#[derive(Parser, Debug)]
#[command(name = "torkernel", version, about = "Integral representation kernels for toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the quotient presentation, Kähler cone and kernel of a fan.
    Report(ReportArgs),
    /// Check the integral representation numerically by Monte Carlo.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Fan description in JSON; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Normalized)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Omit the theorem block.
    #[arg(long)]
    no_theorem: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// One positive value per linear relation, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    rho: String,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_WORKERS)]
    workers: usize,
    /// Evaluation point as comma-separated complex numbers `a+bi`; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    /// Exponents of the monomial test function, comma-separated; defaults to f = 1.
    #[arg(long = "f")]
    f: Option<String>,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = 0.05)]
    tolerance: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strict,
    Normalized,
}

impl From<ModeArg> for NuMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => NuMode::Strict,
            ModeArg::Normalized => NuMode::Normalized,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Structured,
        }
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Argument(_) | Error::Linalg(_) => EXIT_MALFORMED,
        Error::Validation(_) | Error::KahlerNoCone { .. } | Error::Domain(_) | Error::Cycle(_) => EXIT_INVALID,
        Error::Degenerate(_) => EXIT_DEGENERATE,
        Error::Sampling(_) | Error::Internal(_) => EXIT_VERIFY_FAILED,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Validation(errs) => {
                let mut s = String::from("invalid fan:");
                for x in errs {
                    let _ = write!(s, "\n  {x}");
                }
                s
            }
            other => other.to_string(),
        };
        Failure::new(exit_code(&e), message)
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    let max_d = match max_d_from_env() {
        Ok(v) => v,
        Err(f) => {
            use std::io::Write;
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    execute(cli.command, max_d, &mut stdout, &mut stderr)
}

fn execute(cmd: Command, max_d: usize, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32 {
    let result = match cmd {
        Command::Report(a) => cmd_report(&a, max_d),
        Command::Verify(a) => cmd_verify(&a, max_d),
    };
    match result {
        Ok(Outcome { stdout, stderr, code }) => {
            let _ = out.write_all(stdout.as_bytes());
            let _ = err.write_all(stderr.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

struct Outcome {
    stdout: String,
    stderr: String,
    code: i32,
}

fn max_d_from_env() -> Result<usize, Failure> {
    match std::env::var(MAX_D_VAR) {
        Err(_) => Ok(DEFAULT_MAX_D),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::new(EXIT_MALFORMED, format!("{MAX_D_VAR} must be a nonnegative integer, got {s:?}"))),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(EXIT_MALFORMED, format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_MALFORMED, format!("{}: {e}", path.display())))
}

fn load(common: &Common, max_d: usize) -> Result<(KernelReport, Vec<String>), Failure> {
    let fan = parse_fan(&read_input(&common.input)?)?;
    if fan.d() > max_d {
        return Err(Failure::new(
            EXIT_INVALID,
            format!("fan has {} generators, more than {MAX_D_VAR} = {max_d}", fan.d()),
        ));
    }
    let validation = validate_fan(&fan);
    if !validation.is_ok() {
        return Err(Error::Validation(validation.errors).into());
    }
    let report = build_kernel(&fan, common.mode.into())?;
    let warnings = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Ok((report, warnings))
}

fn cmd_report(a: &ReportArgs, max_d: usize) -> Result<Outcome, Failure> {
    let (report, warnings) = load(&a.common, max_d)?;
    let opts = RenderOptions {
        format: a.format.into(),
        include_theorem: !a.no_theorem,
        ..Default::default()
    };
    Ok(Outcome {
        stdout: render(&report, &opts),
        stderr: warnings.concat(),
        code: EXIT_OK,
    })
}

fn parse_reals(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::new(EXIT_MALFORMED, format!("--{what}: cannot read {p:?} as a real number")))
        })
        .collect()
}

fn parse_exponents(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Failure::new(EXIT_MALFORMED, format!("--f: cannot read {p:?} as an exponent")))
        })
        .collect()
}

/// Read `a`, `bi`, `a+bi`, `a-bi`, `i` or `-i`.
pub fn parse_complex(s: &str) -> Option<Complex<f64>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().filter(|x| x.is_finite()).map(|re| Complex::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = re.parse::<f64>().ok()?;
    let im = im.parse::<f64>().ok()?;
    (re.is_finite() && im.is_finite()).then(|| Complex::new(re, im))
}

fn parse_zeta(s: &str) -> Result<Vec<Complex<f64>>, Failure> {
    s.split(',')
        .map(|p| {
            parse_complex(p)
                .ok_or_else(|| Failure::new(EXIT_MALFORMED, format!("--zeta: cannot read {p:?} as a complex number a+bi")))
        })
        .collect()
}

fn fmt_complex(z: Complex<f64>) -> String {
    if z.im < 0.0 {
        format!("{:.6e}-{:.6e}i", z.re, -z.im)
    } else {
        format!("{:.6e}+{:.6e}i", z.re, z.im)
    }
}

fn summary(rep: &Representation<f64>, a: &VerifyArgs, pass: bool) -> String {
    let mut s = String::new();
    let c = &rep.normalizer;
    let _ = writeln!(s, "samples         {}", c.count);
    let _ = writeln!(s, "seed            {}", c.seed);
    let _ = writeln!(s, "workers         {}", c.workers);
    let _ = writeln!(s, "accepted        {}", c.accepted);
    let _ = writeln!(s, "rejected        outside {}, boundary {}, g {}", c.rejected_outside, c.rejected_boundary, c.rejected_g);
    let _ = writeln!(s, "oversampling    {:.4}", c.oversampling);
    let _ = writeln!(s, "C               {}  (std error {:.3e})", fmt_complex(c.estimate), c.std_error);
    let _ = writeln!(
        s,
        "integral        {}  (std error {:.3e})",
        fmt_complex(rep.integral.estimate),
        rep.integral.std_error
    );
    let _ = writeln!(s, "value           {}  (std error {:.3e})", fmt_complex(rep.value), rep.value_std_error);
    let _ = writeln!(s, "expected        {}", fmt_complex(rep.expected));
    let _ = writeln!(s, "relative error  {:.6e}", rep.relative_error);
    let _ = writeln!(s, "tolerance       {}", a.tolerance);
    let _ = writeln!(s, "result          {}", if pass { "PASS" } else { "FAIL" });
    s
}

fn cmd_verify(a: &VerifyArgs, max_d: usize) -> Result<Outcome, Failure> {
    if !(a.tolerance.is_finite() && a.tolerance > 0.0) {
        return Err(Failure::new(EXIT_MALFORMED, "--tolerance must be a positive number"));
    }
    if a.workers == 0 {
        return Err(Failure::new(EXIT_MALFORMED, "--workers must be at least 1"));
    }
    let (report, mut warnings) = load(&a.common, max_d)?;
    let d = report.d();
    let rho = parse_reals(&a.rho, "rho")?;
    if rho.len() != report.rank() {
        return Err(Failure::new(
            EXIT_MALFORMED,
            format!("--rho: expected {} values, got {}", report.rank(), rho.len()),
        ));
    }
    let zeta = match &a.zeta {
        Some(s) => parse_zeta(s)?,
        None => vec![Complex::new(0.0, 0.0); d],
    };
    if zeta.len() != d {
        return Err(Failure::new(EXIT_MALFORMED, format!("--zeta: expected {d} values, got {}", zeta.len())));
    }
    let alpha = match &a.f {
        Some(s) => parse_exponents(s)?,
        None => vec![0; d],
    };
    if alpha.len() != d {
        return Err(Failure::new(EXIT_MALFORMED, format!("--f: expected {d} exponents, got {}", alpha.len())));
    }
    let cfg = MonteCarloConfig::new(a.samples, a.seed).with_workers(a.workers);
    let rep = verify_representation(&report, &rho, &alpha, &zeta, &cfg)?;
    warnings.extend(rep.warnings.iter().map(|w| format!("warning: {w}\n")));
    let pass = rep.relative_error.is_finite() && rep.relative_error <= a.tolerance;
    Ok(Outcome {
        stdout: summary(&rep, a, pass),
        stderr: warnings.concat(),
        code: if pass { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
