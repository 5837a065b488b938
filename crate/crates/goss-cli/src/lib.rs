//! The `goss` command line: per-k reports, batch scans and oracle checks.

pub mod json;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use goss_core::algebra::{verify, Fq};
use goss_core::sheats::sheats;
use goss_core::spectrum::{predict_spectrum, predict_spectrum_a};
use goss_core::{BigRational, BigUint, Config, KProfile, WeightSystem};
use rayon::prelude::*;
use serde::Serialize;

use report::{MuReport, ProfileReport, ScanReport, SheatsReport, SpectrumReport, VerifyOut};

/// Largest field order accepted on the command line.
pub const MAX_Q: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "goss", version, about = "Zero spectra of Goss polynomials over F_q[T]")]
pub struct Cli {
    /// Field order, a prime power.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Characteristic; use together with --f instead of --q.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree of F_q over F_p.
    #[arg(long, global = true)]
    pub f: Option<u32>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Case data, approximation numbers and vanishing order of one k.
    Profile { k: BigUint },
    /// Sheats composition of n.
    Sheats { n: BigUint },
    /// Approximation numbers μ_0, μ_1, … of k.
    Mu {
        k: BigUint,
        #[arg(long)]
        max_i: Option<usize>,
    },
    /// Predicted zeros and Newton polygon of G_k.
    Spectrum {
        k: BigUint,
        /// Weight system r_0,r_1,… as integers or fractions a/b.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        weights: Option<Vec<BigRational>>,
    },
    /// Compare the prediction with G_k of the lattice F_q + F_q T + … + F_q T^t.
    Verify {
        k: u64,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Profile every k in a range.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        skip_p_multiples: bool,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("'{s}' is not an integer or a fraction a/b");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = num_bigint::BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = num_bigint::BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d == 0.into() {
        return Err(format!("'{s}' has zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 2,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments; the message names the offending flag.
    Usage(String),
    /// Help or version output requested.
    Info(String),
    Library(goss_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Info(m) => f.write_str(m.trim_end()),
            CliError::Library(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Info(_) => 0,
            _ => 1,
        }
    }
}

impl From<goss_core::Error> for CliError {
    fn from(e: goss_core::Error) -> Self {
        match e {
            goss_core::Error::InvalidArgument(m) => CliError::Usage(format!("error: {m}")),
            e => CliError::Library(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("error: {}", msg.into()))
}

fn config(cli: &Cli) -> Result<Config, CliError> {
    let cfg = match (cli.q, cli.p, cli.f) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(usage("--q cannot be combined with --p/--f"));
        }
        (Some(q), None, None) => Config::from_q(q).map_err(|e| usage(format!("--q: {e}")))?,
        (None, Some(p), Some(f)) => Config::new(p, f).map_err(|e| usage(format!("--p/--f: {e}")))?,
        (None, Some(_), None) => return Err(usage("--p needs --f")),
        (None, None, Some(_)) => return Err(usage("--f needs --p")),
        (None, None, None) => return Err(usage("the field must be given with --q or --p/--f")),
    };
    if cfg.q() > MAX_Q {
        return Err(usage(format!("--q: q = {} exceeds {MAX_Q}", cfg.q())));
    }
    Ok(cfg)
}

fn positive(k: &BigUint, flag: &str) -> Result<(), CliError> {
    if *k == BigUint::from(0u32) {
        return Err(usage(format!("{flag} must be positive")));
    }
    Ok(())
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Text => write!(out, "{}", text())?,
        Format::Csv => return Err(usage("--format csv is only available for scan")),
    }
    Ok(())
}

/// Scan records for `from..=to`, ordered by `k`.
pub fn scan_records(
    cfg: &Config,
    from: u64,
    to: u64,
    skip_p_multiples: bool,
    workers: Option<usize>,
) -> Result<Vec<report::ScanRecord>, CliError> {
    let p = cfg.p() as u64;
    let ks: Vec<u64> = (from..=to).filter(|k| !skip_p_multiples || k % p != 0).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| usage(format!("--workers: {e}")))?;
    let records = pool.install(|| ks.par_iter().map(|&k| report::scan_record(k, cfg)).collect::<Result<Vec<_>, _>>())?;
    Ok(records)
}

fn write_csv(out: &mut dyn Write, records: &[report::ScanRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "regular", "case", "H", "gamma_k", "irregular_rhos", "timing_us"])?;
    for r in records {
        let rhos: Vec<String> = r.irregular_rhos.iter().map(|x| x.to_string()).collect();
        w.write_record([
            r.k.to_string(),
            r.regular.to_string(),
            r.case.to_string(),
            r.h.to_string(),
            r.gamma_k.to_string(),
            rhos.join(";"),
            r.timing_us.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses `args` (including the program name) and writes the report to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<Status, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let msg = e.render().to_string();
        match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(msg),
            _ => CliError::Usage(msg),
        }
    })?;
    let cfg = config(&cli)?;
    let format = cli.format;
    match &cli.command {
        Command::Profile { k } => {
            positive(k, "k")?;
            let r = ProfileReport::new(&KProfile::new(k, &cfg)?)?;
            emit(out, format, &r, || r.text())?;
        }
        Command::Sheats { n } => {
            let r = SheatsReport::new(&sheats(n, &cfg)?)?;
            emit(out, format, &r, || r.text())?;
        }
        Command::Mu { k, max_i } => {
            positive(k, "k")?;
            let p = KProfile::with_max_i(k, max_i.unwrap_or(0), &cfg)?;
            let r = MuReport::new(&p, *max_i)?;
            emit(out, format, &r, || r.text())?;
        }
        Command::Spectrum { k, weights } => {
            positive(k, "k")?;
            let p = KProfile::new(k, &cfg)?;
            let s = match weights {
                Some(w) => {
                    let ws = WeightSystem::new(w.clone()).map_err(|e| usage(format!("--weights: {e}")))?;
                    predict_spectrum(&p, &ws)?
                }
                None => predict_spectrum_a(&p)?,
            };
            let r = SpectrumReport::new(&p, &s);
            emit(out, format, &r, || r.text())?;
        }
        Command::Verify { k, t } => {
            if *k == 0 {
                return Err(usage("k must be positive"));
            }
            let fq = Fq::new(cfg)?;
            let rep = verify(*k, *t, &fq)?;
            let r = VerifyOut::new(&cfg, &rep);
            emit(out, format, &r, || r.text())?;
            if !r.passed {
                return Ok(Status::Mismatch);
            }
        }
        Command::Scan { from, to, skip_p_multiples, workers } => {
            if *from == 0 || from > to {
                return Err(usage("--from must be positive and at most --to"));
            }
            if *workers == Some(0) {
                return Err(usage("--workers must be positive"));
            }
            let records = scan_records(&cfg, *from, *to, *skip_p_multiples, *workers)?;
            let r = ScanReport::new(&cfg, *from, *to, *skip_p_multiples, records);
            match format {
                Format::Csv => write_csv(out, &r.records)?,
                _ => emit(out, format, &r, || r.text())?,
            }
        }
    }
    Ok(Status::Ok)
}
