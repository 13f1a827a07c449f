//! Command-line driver. Exit codes: 0 when nothing fails, 1 when any check
//! fails, 2 on usage errors.

use std::io::{self, BufWriter, Write};

use clap::Parser;

use crate::congruences::{CongruenceId, MAX_PRIME};
use crate::error::Error;
use crate::primes::PrimeRange;
use crate::report::{summary_line, Format, ReportWriter};
use crate::sweep::{sweep, SweepConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "catcong",
    version,
    about = "Verify Catalan-type congruences over a range of primes"
)]
struct Args {
    /// Smallest prime to check (inclusive).
    #[arg(long, default_value_t = 2)]
    min_prime: u64,

    /// Largest prime to check (inclusive).
    #[arg(long)]
    max_prime: u64,

    /// Comma-separated ids, `T31` for all four instances, `T31:d,δ` for one,
    /// or `all`.
    #[arg(long, default_value = "all")]
    ids: String,

    /// text, json (JSON lines) or csv.
    #[arg(long, default_value = "text")]
    format: String,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,

    /// Also emit one row per j for BPJ.
    #[arg(long)]
    verbose_bpj: bool,

    /// Corrupt the results of one id (testing the failure path).
    #[arg(long, hide = true, value_name = "ID")]
    inject_fault: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub min_prime: u64,
    pub max_prime: u64,
    pub ids: Vec<CongruenceId>,
    pub format: Format,
    pub jobs: usize,
    pub verbose_bpj: bool,
    pub inject_fault: Option<CongruenceId>,
}

impl RunConfig {
    pub fn new(min_prime: u64, max_prime: u64) -> Self {
        Self {
            min_prime,
            max_prime,
            ids: crate::congruences::ALL_IDS.to_vec(),
            format: Format::Text,
            jobs: 1,
            verbose_bpj: false,
            inject_fault: None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.min_prime < 2 || self.max_prime < self.min_prime {
            return Err(Error::InvalidRange {
                lo: self.min_prime,
                hi: self.max_prime,
            }
            .to_string());
        }
        if self.max_prime > MAX_PRIME {
            return Err(format!("--max-prime must be at most {MAX_PRIME}"));
        }
        if self.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        if self.ids.is_empty() {
            return Err("no ids selected".into());
        }
        Ok(())
    }
}

fn config_from_args(a: Args) -> Result<RunConfig, String> {
    let ids = CongruenceId::parse_list(&a.ids).map_err(|e| e.to_string())?;
    let format = a.format.parse::<Format>()?;
    let inject_fault = a
        .inject_fault
        .map(|s| s.parse::<CongruenceId>())
        .transpose()
        .map_err(|e| e.to_string())?;
    let jobs = a
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = RunConfig {
        min_prime: a.min_prime,
        max_prime: a.max_prime,
        ids,
        format,
        jobs,
        verbose_bpj: a.verbose_bpj,
        inject_fault,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `argv` (including the program name). `Err` carries the exit code
/// to use after the message has been printed to `err`.
pub fn parse_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> Result<RunConfig, i32>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return Err(code);
        }
    };
    config_from_args(args).map_err(|msg| {
        let _ = writeln!(err, "error: {msg}");
        EXIT_USAGE
    })
}

/// Runs a validated configuration, writing records to `out` and
/// diagnostics to `err`.
pub fn run_with(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(msg) = config.validate() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let range = PrimeRange::new(config.min_prime, config.max_prime).expect("validated range");
    let mut sweep_cfg = SweepConfig::new(range, config.ids.clone());
    sweep_cfg.jobs = config.jobs;
    sweep_cfg.verbose_bpj = config.verbose_bpj;
    sweep_cfg.inject_fault = config.inject_fault;

    let mut writer = ReportWriter::new(config.format, BufWriter::new(out));
    let io_err = |e: io::Error| Error::Inconsistent(format!("write failed: {e}"));
    let outcome = writer
        .header()
        .map_err(io_err)
        .and_then(|_| sweep(&sweep_cfg, |r| writer.prime(r).map_err(io_err)));
    let summary = match outcome {
        Ok(s) => s,
        Err(e) => {
            let _ = writer.flush();
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let line = summary_line(&summary);
    let flushed = if config.format == Format::Text {
        writer.line(&line).and_then(|_| writer.flush())
    } else {
        writer.flush().and_then(|_| writeln!(err, "{line}"))
    };
    if let Err(e) = flushed {
        let _ = writeln!(err, "error: write failed: {e}");
        return EXIT_FAIL;
    }
    if summary.failed == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs against the process's stdout and stderr.
pub fn run(config: &RunConfig) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(config, &mut stdout.lock(), &mut stderr.lock())
}

/// Entry point shared by the binary: parse, run, return the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    match parse_args(argv, &mut out, &mut err) {
        Ok(cfg) => run_with(&cfg, &mut out, &mut err),
        Err(code) => code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("catcong").chain(args.iter().copied());
        let code = match parse_args(argv, &mut out, &mut err) {
            Ok(cfg) => run_with(&cfg, &mut out, &mut err),
            Err(code) => code,
        };
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn all_pass_small_range() {
        let (code, out, err) = invoke(&["--max-prime", "100", "--format", "json", "--jobs", "1"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.lines().count(), 25 * 19);
        assert!(err.contains("failed: 0"));
    }

    #[test]
    fn t31_csv_at_seven() {
        let (code, out, _) = invoke(&[
            "--min-prime",
            "7",
            "--max-prime",
            "7",
            "--ids",
            "T31",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "T31,0,0,7,7,4,4,pass");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(invoke(&["--min-prime", "10", "--max-prime", "5"]).0, 2);
        assert_eq!(invoke(&["--max-prime", "50", "--ids", "NOPE"]).0, 2);
        assert_eq!(invoke(&["--max-prime", "50", "--format", "xml"]).0, 2);
        assert_eq!(invoke(&["--max-prime", "50", "--jobs", "0"]).0, 2);
        assert_eq!(invoke(&["--max-prime", "50", "--bogus"]).0, 2);
        assert_eq!(invoke(&["--min-prime", "1", "--max-prime", "5"]).0, 2);
        assert_eq!(invoke(&[]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = invoke(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("--max-prime"));
        assert!(!out.contains("inject-fault"));
    }

    #[test]
    fn injected_fault_exits_one() {
        let (code, _, _) = invoke(&["--max-prime", "30", "--inject-fault", "T13"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn text_summary_on_stdout() {
        let (code, out, err) = invoke(&["--max-prime", "3", "--ids", "T13"]);
        assert_eq!(code, 0);
        assert!(err.is_empty());
        assert_eq!(
            out.lines().last().unwrap(),
            "primes: 2, checked: 2, passed: 2, skipped: 0, failed: 0"
        );
    }
}
