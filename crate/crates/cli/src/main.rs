use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use secfilter::scheme::Instance;
use secfilter_cli::error::{exit, CliError, CliResult};
use secfilter_cli::output::{emit_rows, write_text, Format};
use secfilter_cli::primestats::PrimeStatsConfig;
use secfilter_cli::{
    cmd_attack, cmd_estimate, cmd_generate, cmd_lemma1, cmd_primestats, AttackChoice,
    AttackOptions, EstimateTarget, Lemma1Mode, PrimeSpec,
};

#[derive(Parser)]
#[command(name = "secfilter", version, about = "Secure-filter key broadcast and its cryptanalysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; CSV and text output are appended.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackArg {
    Brute,
    Collision,
    Tmto,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file with planted key and user keys.
    Generate {
        #[arg(long, conflicts_with = "bits", required_unless_present = "bits")]
        p: Option<u128>,
        #[arg(long)]
        bits: Option<u32>,
        /// Require a divisor of p - 1 in [p^alpha, p^beta], given as "alpha,beta".
        #[arg(long, requires = "bits", value_parser = parse_range)]
        divisor_range: Option<(f64, f64)>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run an attack against an instance file.
    Attack {
        instance: PathBuf,
        #[arg(long, value_enum)]
        attack: AttackArg,
        #[arg(long)]
        d1: Option<u128>,
        #[arg(long)]
        memory_bits: Option<u128>,
        #[arg(long)]
        max_trials: Option<u64>,
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check the expected count of completely splitting shifts.
    Lemma1 {
        #[arg(long)]
        p: u128,
        #[arg(long)]
        n: usize,
        /// Sample this many polynomials instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Fraction of random primes whose p - 1 has a divisor in [p^alpha, p^beta].
    Primestats {
        #[arg(long)]
        bits_lo: u32,
        #[arg(long)]
        bits_hi: Option<u32>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        min_fraction: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Thresholds and predicted attack costs for a prime or bit size.
    Estimate {
        #[arg(long, conflicts_with = "bits", required_unless_present = "bits")]
        p: Option<u128>,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        memory_bits: Option<u128>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected \"alpha,beta\"")?;
    let a = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(Instance::from_json(&text)?)
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Generate { p, bits, divisor_range, n, common } => {
            let spec = match (p, bits, divisor_range) {
                (Some(p), _, _) => PrimeSpec::Explicit(p),
                (None, Some(bits), Some((alpha, beta))) => PrimeSpec::BitsWithDivisor { bits, alpha, beta },
                (None, Some(bits), None) => PrimeSpec::Bits(bits),
                (None, None, _) => unreachable!("clap requires --p or --bits"),
            };
            let json = cmd_generate(&spec, n, common.seed)?.to_json();
            match &common.out {
                Some(path) => std::fs::write(path, json + "\n").map_err(|e| CliError::io(path, e))?,
                None => println!("{json}"),
            }
            Ok(exit::SUCCESS)
        }
        Command::Attack { instance, attack, d1, memory_bits, max_trials, exhaustive, common } => {
            let inst = read_instance(&instance)?;
            let opts = AttackOptions {
                attack: match attack {
                    AttackArg::Brute => AttackChoice::Brute,
                    AttackArg::Collision => AttackChoice::Collision,
                    AttackArg::Tmto => AttackChoice::Tmto,
                },
                seed: common.seed,
                d1,
                memory_bits,
                max_trials,
                exhaustive,
                ..AttackOptions::default()
            };
            let outcome = cmd_attack(&inst, &opts)?;
            match common.format.into() {
                Format::Text => write_text(&outcome.to_string(), common.out.as_deref())?,
                Format::Csv => emit_rows(&[outcome.row()], Format::Csv, common.out.as_deref())?,
            }
            Ok(outcome.exit_code())
        }
        Command::Lemma1 { p, n, samples, common } => {
            let mode = match samples {
                Some(samples) => Lemma1Mode::MonteCarlo { samples, seed: common.seed },
                None => Lemma1Mode::Exhaustive,
            };
            let row = cmd_lemma1(p, n, mode)?;
            emit_rows(std::slice::from_ref(&row), common.format.into(), common.out.as_deref())?;
            Ok(if row.pass { exit::SUCCESS } else { exit::FAILURE })
        }
        Command::Primestats { bits_lo, bits_hi, samples, alpha, beta, min_fraction, common } => {
            let cfg = PrimeStatsConfig {
                bits_lo,
                bits_hi: bits_hi.unwrap_or(bits_lo),
                samples,
                alpha,
                beta,
                seed: common.seed,
                min_fraction,
            };
            let rows = cmd_primestats(&cfg)?;
            emit_rows(&rows, common.format.into(), common.out.as_deref())?;
            Ok(if rows.iter().all(|r| r.pass) { exit::SUCCESS } else { exit::FAILURE })
        }
        Command::Estimate { p, bits, n, memory_bits, common } => {
            let target = match (p, bits) {
                (Some(p), _) => EstimateTarget::Prime(p),
                (None, Some(bits)) => EstimateTarget::Bits(bits),
                (None, None) => unreachable!("clap requires --p or --bits"),
            };
            let report = cmd_estimate(target, n, memory_bits)?;
            match common.format.into() {
                Format::Text => write_text(report.to_string().trim_end(), common.out.as_deref())?,
                Format::Csv => {
                    emit_rows(&report.rows(common.seed), Format::Csv, common.out.as_deref())?;
                    if let Some(w) = &report.warning {
                        eprintln!("warning: {w}");
                    }
                }
            }
            Ok(exit::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { exit::PARSE } else { exit::SUCCESS };
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
