//! The `kappa-sweep` command line.
//!
//! Exit status: 0 on success, 1 when the input is valid but has no answer
//! (prime input, exhausted intervals, failed verification), 2 on usage errors.

pub mod bench;
pub mod emit;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kappa_sweep::appendix::{load_appendix, verify_rsa640, AppendixRecord};
use kappa_sweep::sweep::{dual_sweep_traced, f_on_line, sample_lines, Line, LinePoint, DEFAULT_PRECISION};
use kappa_sweep::{dual_sweep, is_prime, isqrt, BigNat, FactorResult, FixedDec, SweepConfig, SweepError};

pub use bench::{bench, BenchOptions, BenchRecord};
pub use emit::{emit_csv, emit_svg, parse_csv, Marker, XAxis};

#[derive(Debug, Parser)]
#[command(name = "kappa-sweep", version, about = "Semiprime factorization along the common-factor lines")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Fraction digits carried by every f value.
    #[arg(long, global = true, env = "KAPPA_SWEEP_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, global = true, default_value = "0.01")]
    a_lo: FixedDec,
    #[arg(long, global = true, default_value = "1")]
    a_hi: FixedDec,
    #[arg(long, global = true, default_value = "1.01")]
    b_lo: FixedDec,
    #[arg(long, global = true, default_value = "2")]
    b_hi: FixedDec,
    /// Widen the intervals until a factor is found.
    #[arg(long, global = true)]
    extend: bool,
    #[arg(long, global = true)]
    max_candidates: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

impl Global {
    fn sweep_config(&self) -> Result<SweepConfig, CliError> {
        let cfg = SweepConfig {
            precision: self.precision,
            a_lo: self.a_lo.clone(),
            a_hi: self.a_hi.clone(),
            b_lo: self.b_lo.clone(),
            b_hi: self.b_hi.clone(),
            max_candidates: self.max_candidates,
            extend_intervals: self.extend,
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor N and print the pair with both f values.
    Factor { n: BigNat },
    /// Integer square root of N.
    Kappa { n: BigNat },
    /// f at coordinate X on one line of N.
    F {
        n: BigNat,
        x: BigNat,
        #[arg(long, default_value = "p")]
        line: Line,
    },
    /// Both f-lines of N as CSV or SVG.
    Plot {
        n: BigNat,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, value_enum, default_value_t = XAxis::Step)]
        x_axis: XAxis,
        /// Points kept per line.
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the sweep against trial division, Fermat and rho.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "32,48,64")]
        sizes: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        /// Largest q/p of the generated semiprimes.
        #[arg(long, default_value_t = 2.0)]
        balance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the bundled (or given) RSA-640 digit record.
    VerifyAppendix {
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Runs with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `argv` (program name first) and dispatches, writing results to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return e.exit_code();
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Factor { n } => factor(&n, &g.sweep_config()?, out),
        Command::Kappa { n } => {
            let r = isqrt(&n);
            writeln!(out, "kappa={}\nremainder={}\nexact={}", r.kappa, r.remainder, r.exact)?;
            Ok(0)
        }
        Command::F { n, x, line } => {
            let kappa = isqrt(&n).kappa;
            let divisor = match line {
                Line::P => &x,
                Line::Q => &kappa,
            };
            if divisor.is_zero() {
                return Err(CliError::Usage(format!("f is undefined at x={x} on line {line}")));
            }
            writeln!(out, "f={}", f_on_line(line, &x, &kappa, g.precision))?;
            Ok(0)
        }
        Command::Plot { n, format, x_axis, points, out: path } => {
            let cfg = g.sweep_config()?;
            with_sink(path, out, |sink| plot(&n, &cfg, format, x_axis, points, sink))
        }
        Command::Bench { sizes, trials, balance, out: path } => {
            let opts = BenchOptions {
                sizes,
                trials,
                seed: g.seed,
                balance,
                sweep: g.sweep_config()?,
            };
            with_sink(path, out, |sink| match bench(&opts, sink) {
                Ok(_) => Ok(0),
                Err(bench::BenchError::NoTrials | bench::BenchError::NoSizes) => {
                    Err(CliError::Usage("bench needs --trials ≥ 1 and at least one size".into()))
                }
                Err(bench::BenchError::Generation(kappa_sweep::primes::PrimeError::InvalidArgument(m))) => {
                    Err(CliError::Usage(m))
                }
                Err(e) => Err(CliError::Domain(e.to_string())),
            })
        }
        Command::VerifyAppendix { data } => {
            let rec = match data {
                Some(path) => load_appendix(&path).map_err(|e| CliError::Domain(e.to_string()))?,
                None => AppendixRecord::bundled(),
            };
            let report = verify_rsa640(&rec, g.precision);
            write!(out, "{report}")?;
            let ok = report.all_required_passed();
            writeln!(out, "{}", if ok { "verified" } else { "NOT verified" })?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn with_sink(
    path: Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<i32, CliError>,
) -> Result<i32, CliError> {
    match path {
        Some(p) => {
            let file = File::create(&p).map_err(|e| CliError::Domain(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            let code = body(&mut w)?;
            w.flush()?;
            Ok(code)
        }
        None => body(out),
    }
}

/// Leading characters shared by the two renderings.
fn shared_prefix<'a>(a: &'a str, b: &str) -> &'a str {
    let len = a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count();
    a[..len].trim_end_matches('.')
}

fn factor(n: &BigNat, cfg: &SweepConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    if is_prime(n) {
        return Err(CliError::Domain(format!("{n} is prime")));
    }
    let r: FactorResult = dual_sweep(n, cfg)?;
    if &r.p * &r.q != *n {
        return Err(CliError::Domain(format!("self-check failed: {} * {} != {n}", r.p, r.q)));
    }
    let (f1, f2) = (r.f1.to_string(), r.f2.to_string());
    writeln!(out, "p={} q={} f={}…", r.p, r.q, shared_prefix(&f1, &f2))?;
    writeln!(out, "kappa={}", r.kappa)?;
    writeln!(out, "f1={f1}")?;
    writeln!(out, "f2={f2}")?;
    writeln!(out, "agreement={}", r.agreement)?;
    writeln!(
        out,
        "candidates={} steps={} extensions={}",
        r.candidates_tested, r.sweep_steps, r.extensions
    )?;
    Ok(0)
}

/// At most `m` points, evenly spread, keeping both ends.
fn thin(points: Vec<LinePoint>, m: usize) -> Vec<LinePoint> {
    if points.len() <= m {
        return points;
    }
    let last = points.len() - 1;
    let keep: Vec<usize> = (0..m).map(|i| i * last / (m - 1)).collect();
    points
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep.binary_search(i).is_ok())
        .map(|(_, p)| p)
        .collect()
}

fn plot(
    n: &BigNat,
    cfg: &SweepConfig,
    format: Format,
    axis: XAxis,
    m: usize,
    sink: &mut dyn Write,
) -> Result<i32, CliError> {
    if m < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {m}")));
    }
    if is_prime(n) {
        return Err(CliError::Domain(format!("{n} is prime")));
    }
    let label = |r: &FactorResult| format!("p={} q={}", r.p, r.q);
    let (points, marker) = match axis {
        XAxis::Step => {
            let trace = dual_sweep_traced(n, cfg)?;
            let r = &trace.result;
            let hit = trace
                .points
                .iter()
                .find(|p| (p.line == Line::P && p.x == r.p) || (p.line == Line::Q && p.x == r.q))
                .cloned();
            let (p_pts, q_pts): (Vec<LinePoint>, Vec<LinePoint>) =
                trace.points.iter().cloned().partition(|p| p.line == Line::P);
            let mut points = thin(p_pts, m);
            points.extend(thin(q_pts, m));
            let marker = match hit {
                Some(h) => {
                    if !points.contains(&h) {
                        points.push(h.clone());
                    }
                    Marker { x: BigNat::from(h.step.unwrap_or(0)), f: h.f, label: label(r) }
                }
                None => {
                    let last = trace.points.iter().filter_map(|p| p.step).max().unwrap_or(0);
                    Marker { x: BigNat::from(last), f: r.f1.clone(), label: label(r) }
                }
            };
            (points, marker)
        }
        XAxis::Prime => {
            let r = dual_sweep(n, cfg)?;
            let mut points = sample_lines(n, cfg, m)?;
            for (line, x, f) in [(Line::P, &r.p, &r.f1), (Line::Q, &r.q, &r.f2)] {
                if !points.iter().any(|p| p.line == line && p.x == *x) {
                    points.push(LinePoint { line, x: x.clone(), f: f.clone(), step: None });
                }
            }
            let marker = Marker { x: r.p.clone(), f: r.f1.clone(), label: label(&r) };
            (points, marker)
        }
    };
    let result = match format {
        Format::Csv => emit_csv(&points, sink),
        Format::Svg => emit_svg(&points, std::slice::from_ref(&marker), axis, sink),
    };
    result.map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(0)
}
