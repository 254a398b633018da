//! Command-line driver. The binary only forwards `std::env::args` to [`main_with_args`].

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::arith::{is_prime, primes_in_range};
use crate::equidist::{SampleKind, TargetLaw};
use crate::error::{Error, Result};
use crate::spectral::{DftMode, VERIFY_BOTH_MAX_PRIME};

pub use commands::{cmd_equidist, cmd_lvalues, cmd_moments, cmd_scan, cmd_verify, Outcome};
pub use output::{histogram_svg, EquidistRow, LValueRow, MomentRow, ScanRow, VerifyReport};

/// Environment variable that overrides `--threads`.
pub const THREADS_ENV: &str = "KM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "charsum", version, about = "Multiplicative character sums modulo a prime")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check the exact identities for each prime and the special-function identities
    Verify(RunArgs),
    /// Moments of K(χ) against their main terms
    Moments(RunArgs),
    /// KS statistics and sector discrepancies of the K(χ) family
    Equidist(RunArgs),
    /// Moments twisted by L(1, χ) and L(1/2, χ)
    Lvalues(RunArgs),
    /// One summary row per prime: Weil bound, route agreement, a moment and a KS distance
    Scan(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Comma-separated primes
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// All odd primes in [LO, HI]
    #[arg(long, value_name = "LO:HI")]
    pub prime_range: Option<String>,
    /// Drop non-primes from --primes instead of rejecting them
    #[arg(long)]
    pub primes_only: bool,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Vec<f64>,
    /// Mixed-moment exponents as k:l pairs
    #[arg(long, value_delimiter = ',')]
    pub kl: Vec<String>,
    /// Twist residues; negative values are taken mod p
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub n: Vec<i64>,
    /// Exponents of the normalized real moment
    #[arg(long, value_delimiter = ',')]
    pub star: Vec<u32>,
    /// Points s for lvalues: 1 and/or 1/2
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub law: Vec<String>,
    /// Override the sample each law is tested on
    #[arg(long)]
    pub sample: Option<String>,
    /// Angular x radial cells of the planar discrepancy
    #[arg(long, value_name = "AxR", default_value = "8x8")]
    pub grid: String,
    /// Histogram bins written next to equidist rows
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Any of csv, json, svg
    #[arg(long, value_delimiter = ',')]
    pub format: Vec<String>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value = "fast")]
    pub fft: String,
    /// Relative tolerance for verify
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// Largest k of the moment identities in verify
    #[arg(long, default_value_t = 4)]
    pub kmax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Moments,
    Equidist,
    Lvalues,
    Scan,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Moments => "moments",
            Command::Equidist => "equidist",
            Command::Lvalues => "lvalues",
            Command::Scan => "scan",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

/// A validated run. Lists are sorted and deduplicated so row order is fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub primes: Vec<u64>,
    pub kappas: Vec<f64>,
    pub kls: Vec<(u32, u32)>,
    pub ns: Vec<i64>,
    pub stars: Vec<u32>,
    pub s_values: Vec<f64>,
    pub laws: Vec<TargetLaw>,
    pub sample: Option<SampleKind>,
    pub grid: (usize, usize),
    pub bins: usize,
    pub out: Option<PathBuf>,
    pub formats: Formats,
    pub threads: Option<usize>,
    pub fft: DftMode,
    pub tol: f64,
    pub kmax: u32,
}

impl RunConfig {
    /// Defaults for `command` over `primes`, without validation.
    pub fn new(command: Command, primes: Vec<u64>) -> Self {
        Self {
            command,
            primes,
            kappas: vec![1.0],
            kls: Vec::new(),
            ns: vec![1],
            stars: Vec::new(),
            s_values: vec![0.5, 1.0],
            laws: vec![TargetLaw::ArcsineAbs],
            sample: None,
            grid: (8, 8),
            bins: 20,
            out: None,
            formats: if command == Command::Verify {
                Formats { json: true, ..Default::default() }
            } else {
                Formats { csv: true, ..Default::default() }
            },
            threads: None,
            fft: DftMode::Fast,
            tol: 1e-7,
            kmax: 4,
        }
    }

    pub fn from_args(command: Command, a: RunArgs) -> Result<Self> {
        let mut cfg = RunConfig::new(command, Vec::new());
        let mut primes = a.primes.clone();
        if a.primes_only {
            primes.retain(|&p| p > 2 && is_prime(p));
        }
        if let Some(r) = &a.prime_range {
            let (lo, hi) = r
                .split_once(':')
                .and_then(|(lo, hi)| Some((lo.trim().parse::<u64>().ok()?, hi.trim().parse::<u64>().ok()?)))
                .ok_or_else(|| Error::InvalidParameter(format!("--prime-range expects LO:HI, got '{r}'")))?;
            if lo > hi {
                return Err(Error::InvalidParameter(format!("empty prime range {lo}:{hi}")));
            }
            primes.extend(primes_in_range(lo, hi));
        }
        cfg.primes = primes;
        if !a.kappa.is_empty() {
            cfg.kappas = a.kappa;
        }
        cfg.kls = a.kl.iter().map(|s| parse_kl(s)).collect::<Result<_>>()?;
        if !a.n.is_empty() {
            cfg.ns = a.n;
        }
        cfg.stars = a.star;
        if !a.s.is_empty() {
            cfg.s_values = a.s.iter().map(|s| parse_s(s)).collect::<Result<_>>()?;
        }
        if !a.law.is_empty() {
            cfg.laws = a.law.iter().map(|l| l.parse()).collect::<Result<_>>()?;
        }
        cfg.sample = a.sample.as_deref().map(str::parse).transpose()?;
        cfg.grid = parse_grid(&a.grid)?;
        cfg.bins = a.bins;
        cfg.out = a.out;
        if !a.format.is_empty() {
            let mut f = Formats::default();
            for name in &a.format {
                match name.trim() {
                    "csv" => f.csv = true,
                    "json" => f.json = true,
                    "svg" => f.svg = true,
                    other => return Err(Error::InvalidParameter(format!("unknown format '{other}'"))),
                }
            }
            cfg.formats = f;
        }
        cfg.threads = a.threads;
        cfg.fft = a.fft.parse()?;
        cfg.tol = a.tol;
        cfg.kmax = a.kmax;
        cfg.normalize();
        cfg.validate()?;
        Ok(cfg)
    }

    fn normalize(&mut self) {
        self.primes.sort_unstable();
        self.primes.dedup();
        self.kappas.sort_by(f64::total_cmp);
        self.kappas.dedup();
        self.kls.sort_unstable();
        self.kls.dedup();
        self.ns.sort_unstable();
        self.ns.dedup();
        self.stars.sort_unstable();
        self.stars.dedup();
        self.s_values.sort_by(f64::total_cmp);
        self.s_values.dedup();
        self.laws.dedup();
    }

    /// Rejects anything that would make a run meaningless before computing.
    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::InvalidParameter("no primes given; use --primes or --prime-range".into()));
        }
        for &p in &self.primes {
            if p == 2 || !is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            if self.fft == DftMode::VerifyBoth && p > VERIFY_BOTH_MAX_PRIME {
                return Err(Error::InvalidParameter(format!(
                    "--fft verify-both is limited to p <= {VERIFY_BOTH_MAX_PRIME}, got {p}"
                )));
            }
        }
        if let Some(&k) = self.kappas.iter().find(|k| !(**k > 0.0) || !k.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa must be > 0, got {k}")));
        }
        if self.kls.contains(&(0, 0)) {
            return Err(Error::InvalidParameter("k:l = 0:0 has no moment".into()));
        }
        if self.stars.contains(&0) {
            return Err(Error::InvalidParameter("star exponents must be >= 1".into()));
        }
        if self.grid.0 < 2 || self.grid.1 < 2 {
            return Err(Error::InvalidParameter(format!("grid sizes must be >= 2, got {}x{}", self.grid.0, self.grid.1)));
        }
        if self.bins == 0 {
            return Err(Error::InvalidParameter("--bins must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {}", self.tol)));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidParameter("thread count must be >= 1".into()));
        }
        if self.formats.svg && self.out.is_none() {
            return Err(Error::InvalidParameter("svg output needs --out".into()));
        }
        if self.command == Command::Lvalues {
            if let Some(&p) = self.primes.iter().find(|&&p| p > crate::lvalues::LVALUE_MAX_PRIME) {
                return Err(Error::InvalidParameter(format!(
                    "L-values are limited to p <= {}, got {p}",
                    crate::lvalues::LVALUE_MAX_PRIME
                )));
            }
        }
        Ok(())
    }

    /// `KM_THREADS` wins over the configured count; the default is all cores.
    pub fn effective_threads(&self) -> Result<usize> {
        if let Ok(v) = std::env::var(THREADS_ENV) {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
            if n == 0 {
                return Err(Error::InvalidParameter(format!("{THREADS_ENV} must be >= 1")));
            }
            return Ok(n);
        }
        Ok(self.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
    }
}

fn parse_kl(s: &str) -> Result<(u32, u32)> {
    s.split_once(':')
        .and_then(|(k, l)| Some((k.trim().parse().ok()?, l.trim().parse().ok()?)))
        .ok_or_else(|| Error::InvalidParameter(format!("--kl expects k:l pairs, got '{s}'")))
}

fn parse_s(s: &str) -> Result<f64> {
    match s.trim() {
        "1" | "1.0" => Ok(1.0),
        "1/2" | "0.5" => Ok(0.5),
        other => Err(Error::InvalidParameter(format!("--s supports 1 and 1/2 only, got '{other}'"))),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    s.split_once(['x', 'X'])
        .and_then(|(a, r)| Some((a.trim().parse().ok()?, r.trim().parse().ok()?)))
        .ok_or_else(|| Error::InvalidParameter(format!("--grid expects AxR, got '{s}'")))
}

/// Runs a validated config, writing stdout output to `out`.
pub fn run_config(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    match cfg.command {
        Command::Verify => cmd_verify(cfg, out),
        Command::Moments => cmd_moments(cfg, out),
        Command::Equidist => cmd_equidist(cfg, out),
        Command::Lvalues => cmd_lvalues(cfg, out),
        Command::Scan => cmd_scan(cfg, out),
    }
}

/// Exit code for an error: `2` for bad input, `1` for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotOddPrime(_) | Error::ZeroResidue(..) | Error::InvalidParameter(_) | Error::OutOfDomain { .. } => 2,
        Error::CrossCheck(_) | Error::Io(_) => 1,
    }
}

/// Parses `args` (program name first) and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let (command, a) = match cli.command {
        CliCommand::Verify(a) => (Command::Verify, a),
        CliCommand::Moments(a) => (Command::Moments, a),
        CliCommand::Equidist(a) => (Command::Equidist, a),
        CliCommand::Lvalues(a) => (Command::Lvalues, a),
        CliCommand::Scan(a) => (Command::Scan, a),
    };
    let result = RunConfig::from_args(command, a).and_then(|cfg| run_config(&cfg, stdout));
    match result {
        Ok(o) => {
            if let Some(f) = &o.first_failure {
                let _ = writeln!(stderr, "first failure: {f}");
            }
            i32::from(!o.pass)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
