//! Command-line front end: analyze corpora, generate synthetic token
//! streams, and score standalone count files against the leading-digit law.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 data error, 3 analysis
//! error (see `zipford::Error::exit_code`).

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use zipford::benford::{self, DigitHistogram};
use zipford::corpus::{self, CorpusSpec, Encoding};
use zipford::report::{self, AnalysisConfig, OutputFormat, RunReport};
use zipford::tokenize::{Fold, Mode};
use zipford::zipf;
use zipford::{Error, RankWindow};

#[derive(Parser)]
#[command(
    name = "zipford",
    version,
    about = "Rank-frequency and leading-digit statistics for text and source-code corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze corpora and print the run report
    Analyze(AnalyzeArgs),
    /// Write a synthetic token stream following a Zipf curve
    Synth(SynthArgs),
    /// Score a file of positive integers against the leading-digit law
    Digits(DigitsArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Manifest file: label<TAB>mode<TAB>[encoding<TAB>]path per line
    #[arg(long, conflicts_with_all = ["input", "mode", "encoding", "label"])]
    manifest: Option<PathBuf>,

    /// Analyze a single file instead of a manifest
    #[arg(long, requires = "mode")]
    input: Option<PathBuf>,

    /// Tokenization mode for --input: natural, java, or cpp
    #[arg(long)]
    mode: Option<String>,

    /// Byte encoding for --input: utf8, windows1251, or koi8r
    #[arg(long)]
    encoding: Option<String>,

    /// Corpus label for --input (default: the file stem)
    #[arg(long)]
    label: Option<String>,

    /// Number of top ranks to eliminate before the dropped-window fit
    #[arg(long = "drop-top", default_value_t = 10)]
    drop_top: usize,

    /// Rank window for the full-table correlation
    #[arg(long = "full-window", value_name = "LO:HI", default_value = "1:100")]
    full_window: String,

    /// Rank window for the dropped correlation and the log-log fit
    #[arg(long = "dropped-window", value_name = "LO:HI", default_value = "11:110")]
    dropped_window: String,

    /// Exponent of the reference curve
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,

    /// Ascending breakpoint ranks for piecewise log-log fits, e.g. 12,33,200
    #[arg(long, value_name = "A,B,...")]
    breakpoints: Option<String>,

    /// Case folding: upper, lower, or none
    #[arg(long, default_value = "upper")]
    fold: String,

    /// Report format: json, csv, or tsv
    #[arg(long, default_value = "json")]
    format: String,

    /// Directory for per-corpus artifacts and run.summary.<fmt>
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of distinct EUs
    #[arg(long)]
    n: usize,

    /// Target total token count
    #[arg(long)]
    total: u64,

    /// Curve exponent
    #[arg(long)]
    alpha: f64,

    /// Sampling seed (reserved; the default sampler is noiseless)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output file, one token per line
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct DigitsArgs {
    /// File with one positive integer per line
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
}

enum Failure {
    Core(Error),
    Usage(String),
    Data(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) => e.exit_code(),
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) | Failure::Data(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_window(s: &str, flag: &str) -> Result<RankWindow, Failure> {
    let usage = || Failure::Usage(format!("--{flag} expects LO:HI with integer ranks, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(usage)?;
    let lo: usize = lo.trim().parse().map_err(|_| usage())?;
    let hi: usize = hi.trim().parse().map_err(|_| usage())?;
    Ok(RankWindow::new(lo, hi)?)
}

fn parse_breakpoints(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|part| {
            part.trim().parse().map_err(|_| {
                Failure::Usage(format!(
                    "--breakpoints expects comma-separated ranks, got {part:?}"
                ))
            })
        })
        .collect()
}

fn parse_mode(s: &str) -> Result<Mode, Failure> {
    match s {
        "natural" => Ok(Mode::Natural),
        "java" => Ok(Mode::Java),
        "cpp" | "c++" => Ok(Mode::Cpp),
        _ => Err(Failure::Usage(format!(
            "--mode must be natural, java, or cpp, got {s:?}"
        ))),
    }
}

fn parse_fold(s: &str) -> Result<Fold, Failure> {
    match s {
        "upper" => Ok(Fold::Upper),
        "lower" => Ok(Fold::Lower),
        "none" => Ok(Fold::None),
        _ => Err(Failure::Usage(format!(
            "--fold must be upper, lower, or none, got {s:?}"
        ))),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let config = AnalysisConfig {
        drop_k: args.drop_top,
        full_window: parse_window(&args.full_window, "full-window")?,
        dropped_window: parse_window(&args.dropped_window, "dropped-window")?,
        alpha: args.alpha,
        breakpoints: args.breakpoints.as_deref().map(parse_breakpoints).transpose()?,
        fold: parse_fold(&args.fold)?,
        format: OutputFormat::parse(&args.format).ok_or_else(|| {
            Failure::Usage(format!(
                "--format must be json, csv, or tsv, got {:?}",
                args.format
            ))
        })?,
    };
    config.validate()?;

    let specs: Vec<CorpusSpec> = if let Some(manifest) = &args.manifest {
        corpus::parse_manifest(manifest)?
    } else if let Some(input) = args.input {
        let mode = parse_mode(args.mode.as_deref().expect("clap enforces --mode"))?;
        let encoding = match args.encoding.as_deref() {
            None => Encoding::default(),
            Some(s) => Encoding::parse(s).ok_or_else(|| {
                Failure::Usage(format!(
                    "--encoding must be utf8, windows1251, or koi8r, got {s:?}"
                ))
            })?,
        };
        let label = match args.label {
            Some(l) => l,
            None => input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .filter(|s| !s.is_empty())
                .ok_or_else(|| {
                    Failure::Usage(format!("cannot derive a label from {:?}", input))
                })?,
        };
        vec![CorpusSpec {
            label,
            path: input,
            mode,
            encoding,
        }]
    } else {
        return Err(Failure::Usage(
            "one of --manifest or --input is required".into(),
        ));
    };

    let mut analyses = Vec::new();
    for spec in &specs {
        let analysis = report::analyze(spec, &config)?;
        eprintln!(
            "{}: {} tokens, {} EUs",
            analysis.summary.label, analysis.summary.total_tokens, analysis.summary.unique_count
        );
        if let Some(dir) = &args.out {
            report::write_artifacts(&analysis, dir, config.format)?;
        }
        analyses.push(analysis);
    }
    let run = if analyses.is_empty() {
        RunReport::default() // an empty manifest is a valid (empty) run
    } else {
        report::summarize_run(&analyses)?
    };
    print!("{}", report::emit_run(&run, config.format));
    if let Some(dir) = &args.out {
        report::write_run_report(&run, dir, config.format)?;
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), Failure> {
    let table = zipf::sample_table(args.n, args.total, args.alpha, args.seed)?;
    let mut text = String::new();
    for (_, eu, count) in table.iter() {
        for _ in 0..count {
            text.push_str(eu);
            text.push('\n');
        }
    }
    fs::write(&args.out, text).map_err(|source| Error::Io {
        path: args.out.clone(),
        source,
    })?;
    eprintln!(
        "wrote {} tokens over {} EUs to {}",
        table.total_tokens(),
        table.unique_count(),
        args.out.display()
    );
    Ok(())
}

/// Fixed six-decimal rendering, matching the report emitters.
fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

fn json_vector(v: &[f64; 9]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fmt6(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_digits(args: DigitsArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.input).map_err(|source| Error::Io {
        path: args.input.clone(),
        source,
    })?;
    let mut hist = DigitHistogram::default();
    for (idx, line) in text.lines().enumerate() {
        let item = line.trim();
        if item.is_empty() {
            continue;
        }
        let value: u64 = item.parse().map_err(|_| {
            Failure::Data(format!(
                "{}:{}: {item:?} is not a positive integer",
                args.input.display(),
                idx + 1
            ))
        })?;
        hist.record(value)?;
    }
    let result = benford::correlation(&hist)?;
    print!(
        "{{\n  \"n_items\": {},\n  \"r_benford\": {},\n  \"pct_leading_1\": {},\n  \"empirical\": {},\n  \"benford\": {}\n}}\n",
        hist.n_items(),
        fmt6(result.r),
        fmt6(result.pct_leading_1),
        json_vector(&result.empirical),
        json_vector(&result.theoretical),
    );
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 by default; this tool reserves 2 for data errors,
            // so usage problems map to 1 and help/version stay 0.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Cmd::Analyze(args) => cmd_analyze(args),
        Cmd::Synth(args) => cmd_synth(args),
        Cmd::Digits(args) => cmd_digits(args),
    };
    match outcome {
        Ok(()) => {}
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            std::process::exit(failure.exit_code());
        }
    }
}
