#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use symdisc::exactfield::{Fault, VerificationReport, VerifyOptions, DEFAULT_SIGN_BITS};
use symdisc::kernel::{kernel_gn, kernel_gn_confluent};
use symdisc::symcore::PolyPoint;
use symdisc::verify::verify_paper;
use symdisc::zerofind::{
    construct_zero_dim3_with, lift_zero_logged, sample_nonvanishing, LiftConfig, SampleMode,
    Tolerances, ZeroCertificate, ZeroError, DEFAULT_MU1_MODULUS, DEFAULT_RHO,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// Starting precision (bits) of the exact sign checks.
const PRECISION_ENV: &str = "SYMDISC_PRECISION";

#[derive(Parser)]
#[command(name = "symdisc", version, about = "Bergman kernel of the symmetrized polydisc")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel steps (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    PCoeff,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    Z,
    Lambda1,
}

#[derive(Subcommand)]
enum Command {
    /// Run every exact and numeric check.
    VerifyPaper {
        #[arg(long, value_enum)]
        fault_inject: Option<FaultArg>,
    },
    /// Construct a certified zero in dimension N >= 3.
    FindZero {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_RHO)]
        rho: f64,
        #[arg(long, default_value_t = DEFAULT_MU1_MODULUS)]
        mu1: f64,
        #[command(flatten)]
        lift: LiftArgs,
    },
    /// Evaluate the kernel at a pair of preimage points.
    Eval {
        #[arg(long)]
        n: usize,
        /// Coordinates as re,im pairs; write `--lambda=-0.5,0.1` (repeating the
        /// flag) for a coordinate with a leading minus sign.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, required = true)]
        lambda: Vec<String>,
        /// Conjugated argument, same syntax as `--lambda`.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, required = true)]
        mu: Vec<String>,
    },
    /// Lift a certificate by one dimension.
    Lift {
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        lift: LiftArgs,
    },
    /// Report the smallest scaled determinant over random pairs.
    Sample {
        #[arg(value_parser = parse_mode)]
        mode: SampleMode,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
    },
    /// CSV of |K| and arg K on a square grid through a certificate.
    Grid {
        #[arg(long)]
        around: PathBuf,
        #[arg(long, value_enum, default_value_t = Axis::Z)]
        axis: Axis,
        #[arg(long, default_value_t = 100)]
        res: usize,
        /// Side length of the square.
        #[arg(long, default_value_t = 1e-2)]
        span: f64,
    },
}

#[derive(clap::Args)]
struct LiftArgs {
    /// Certification tolerance on |Delta| / scale.
    #[arg(long, default_value_t = Tolerances::default().certify)]
    tol: f64,
    #[arg(long, default_value_t = LiftConfig::default().disc_radius)]
    disc_radius: f64,
    #[arg(long, default_value_t = LiftConfig::default().append_modulus_step)]
    step: f64,
    #[arg(long, default_value_t = LiftConfig::default().max_retries)]
    max_retries: usize,
}

impl LiftArgs {
    fn config(&self, threads: usize) -> LiftConfig {
        LiftConfig {
            disc_radius: self.disc_radius,
            append_modulus_step: self.step,
            max_retries: self.max_retries,
            parallelism: threads,
            ..LiftConfig::default()
        }
    }

    fn tolerances(&self) -> Result<Tolerances, Failure> {
        if !(self.tol > 0.0) {
            return Err(Failure::usage(format!("--tol must be positive, got {}", self.tol)));
        }
        Ok(Tolerances {
            certify: self.tol,
            ..Tolerances::default()
        })
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            message,
        }
    }
}

impl From<ZeroError> for Failure {
    fn from(e: ZeroError) -> Self {
        let code = match e {
            ZeroError::InvalidScaling { .. } | ZeroError::InvalidConfig(_) => EXIT_USAGE,
            ZeroError::InvalidCertificate(_) | ZeroError::Json(_) => EXIT_VERIFY,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_mode(s: &str) -> Result<SampleMode, String> {
    s.parse()
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse {s:?} as re,im"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("cannot parse {s:?} as re,im")),
    }
}

fn parse_point(args: &[String], n: usize, name: &str) -> Result<PolyPoint, Failure> {
    if args.len() != n {
        return Err(Failure::usage(format!("--{name} needs {n} coordinates, got {}", args.len())));
    }
    let coords = args
        .iter()
        .map(|a| parse_complex(a))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    PolyPoint::in_domain(coords).map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_cert(path: &Path) -> Result<ZeroCertificate, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(ZeroCertificate::from_json(&text)?)
}

fn c_str(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn report_csv(r: &VerificationReport) -> String {
    let mut out = String::from("name,passed,detail\n");
    for c in &r.checks {
        let detail = c.detail.clone().unwrap_or_default().replace('"', "'");
        let _ = writeln!(out, "{},{},\"{}\"", c.name, c.passed, detail);
    }
    out
}

fn sign_bits() -> Result<u32, Failure> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .parse::<u32>()
            .ok()
            .filter(|b| *b > 0)
            .ok_or_else(|| Failure::usage(format!("{PRECISION_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_SIGN_BITS),
    }
}

fn cert_summary(cert: &ZeroCertificate) -> String {
    let mut s = String::new();
    for c in cert.lineage() {
        let _ = writeln!(
            s,
            "n={} residual_rel={:e} kernel_abs={:e} witness |f|={:e}",
            c.n, c.residual_rel, c.kernel_abs, c.fn_witness.value_abs
        );
    }
    s
}

/// Writes the certificate (to `--output` or stdout) and the residual
/// summary (to stdout, or stderr when stdout carries the JSON).
fn emit_cert(cli: &Cli, cert: &ZeroCertificate) -> Result<(), Failure> {
    let json = cert.to_json() + "\n";
    match &cli.output {
        Some(p) => {
            emit(Some(p), &json)?;
            print!("{}", cert_summary(cert));
        }
        None => {
            eprint!("{}", cert_summary(cert));
            print!("{json}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::VerifyPaper { fault_inject } => {
            let options = VerifyOptions {
                fault: fault_inject.map(|f| match f {
                    FaultArg::PCoeff => Fault::PCoeff,
                }),
                sign_start_bits: sign_bits()?,
            };
            let report = verify_paper(&options);
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
                Format::Csv => report_csv(&report),
            };
            emit(out, &text)?;
            Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
        }
        Command::FindZero { n, rho, mu1, lift } => {
            if *n < 3 {
                return Err(Failure::usage(format!(
                    "find-zero needs n >= 3 (got {n}); no zero is constructed below dimension 3"
                )));
            }
            let tolerances = lift.tolerances()?;
            let config = lift.config(cli.threads);
            let mut cert = construct_zero_dim3_with(*rho, *mu1, &tolerances, cli.seed, config.disc_radius)?;
            while cert.n < *n {
                cert = lift_zero_logged(&cert, &config)?.0;
            }
            emit_cert(cli, &cert)?;
            Ok(0)
        }
        Command::Lift { cert, lift } => {
            let parent = read_cert(cert)?;
            parent.validate()?;
            let (child, _) = lift_zero_logged(&parent, &lift.config(cli.threads))?;
            emit_cert(cli, &child)?;
            Ok(0)
        }
        Command::Eval { n, lambda, mu } => {
            let l = parse_point(lambda, *n, "lambda")?;
            let m = parse_point(mu, *n, "mu")?;
            let confluent = !l.has_distinct_coords() || !m.has_distinct_coords();
            let eval = if confluent {
                kernel_gn_confluent(&l, &m)
            } else {
                kernel_gn(&l, &m)
            }
            .map_err(|e| Failure {
                code: EXIT_NUMERIC,
                message: e.to_string(),
            })?;
            let text = match cli.format {
                Format::Json => {
                    let v = json!({
                        "n": n,
                        "kernel": [eval.value.re, eval.value.im],
                        "delta": [eval.numerator.re, eval.numerator.im],
                        "denominator": [eval.denominator.re, eval.denominator.im],
                        "scale": eval.scale,
                        "residual_rel": eval.residual_rel(),
                        "confluent": confluent,
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                _ => format!(
                    "K = {}\nDelta = {}\nscale = {}\n|Delta|/scale = {:e}\nconfluent = {confluent}\n",
                    c_str(eval.value),
                    c_str(eval.numerator),
                    eval.scale,
                    eval.residual_rel()
                ),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Sample { mode, count } => {
            if *count == 0 {
                return Err(Failure::usage("--count must be at least 1".into()));
            }
            let r = sample_nonvanishing(*mode, *count, cli.seed, cli.threads)?;
            let text = match cli.format {
                Format::Json => {
                    let v = json!({
                        "mode": r.mode.to_string(),
                        "samples": r.samples,
                        "seed": r.seed,
                        "min_scaled_delta": r.min_scaled_delta,
                        "argmin_lambda": r.argmin_lambda,
                        "argmin_mu": r.argmin_mu,
                        "min_kernel_abs": r.min_kernel_abs,
                        "certified_zeros": r.certified_zeros,
                        "nonpositive_diagonal": r.nonpositive_diagonal,
                        "skipped": r.skipped,
                    });
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
                Format::Csv => format!(
                    "mode,samples,seed,min_scaled_delta,min_kernel_abs,certified_zeros\n{},{},{},{:e},{:e},{}\n",
                    r.mode, r.samples, r.seed, r.min_scaled_delta, r.min_kernel_abs, r.certified_zeros
                ),
                Format::Text => {
                    let mut s = format!(
                        "mode {} samples {} seed {}\nmin |Delta|/scale = {:e}\nmin |K| = {:e}\ncertified zeros = {}\n",
                        r.mode, r.samples, r.seed, r.min_scaled_delta, r.min_kernel_abs, r.certified_zeros
                    );
                    if r.mode == SampleMode::Diagonal {
                        let _ = writeln!(s, "non-positive diagonal values = {}", r.nonpositive_diagonal);
                    }
                    s
                }
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Grid {
            around,
            axis,
            res,
            span,
        } => {
            if *res == 0 || !(*span > 0.0) {
                return Err(Failure::usage("--res and --span must be positive".into()));
            }
            let cert = read_cert(around)?;
            emit(out, &grid_csv(&cert, *axis, *res, *span))?;
            Ok(0)
        }
    }
}

/// Cells are `center + (i - res/2, j - res/2) * span / res`, so index
/// `(res/2, res/2)` is the certificate point itself.
fn grid_csv(cert: &ZeroCertificate, axis: Axis, res: usize, span: f64) -> String {
    let lambda = cert.lambda.coords();
    let mu = cert.mu.coords();
    let mu1 = mu[0];
    let center = match axis {
        Axis::Z => mu[1].conj() / mu1.conj(),
        Axis::Lambda1 => lambda[0],
    };
    let h = span / res as f64;
    let half = (res / 2) as f64;
    let mut out = String::from("re,im,abs_k,arg_k\n");
    for j in 0..res {
        for i in 0..res {
            let d = Complex64::new((i as f64 - half) * h, (j as f64 - half) * h);
            let (mut l, mut m) = (lambda.to_vec(), mu.to_vec());
            match axis {
                Axis::Z => m[1] += d.conj() * mu1,
                Axis::Lambda1 => l[0] += d,
            }
            let value = PolyPoint::in_domain(l)
                .ok()
                .zip(PolyPoint::in_domain(m).ok())
                .and_then(|(l, m)| kernel_gn(&l, &m).ok())
                .map(|e| e.value);
            let p = center + d;
            match value {
                Some(k) => {
                    let _ = writeln!(out, "{},{},{:e},{}", p.re, p.im, k.norm(), k.arg());
                }
                None => {
                    let _ = writeln!(out, "{},{},NaN,NaN", p.re, p.im);
                }
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
