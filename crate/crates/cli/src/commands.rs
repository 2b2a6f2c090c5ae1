//! Subcommand implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use seasonlen_core::synthgen::{generate_all, generate_family};
use seasonlen_core::{detect_season_length, validate_series, Case, DetectionConfig, Family};
use serde::Serialize;

use crate::eval::{evaluate, Summary};
use crate::input::{read_series, write_series, Column};
use crate::manifest::{read_manifest, to_jsonl, ManifestEntry, ReferenceValue};

#[derive(Debug, Parser)]
#[command(
    name = "seasonlen",
    version,
    about = "Season length detection for time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect the season length of one series and print it as JSON.
    Detect(DetectArgs),
    /// Score both detectors on every case of a manifest.
    Eval(EvalArgs),
    /// Write a synthetic benchmark suite with a manifest.
    Gen(GenArgs),
}

/// Overrides for the detection constants.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Upsampling ratio of the linear interpolation.
    #[arg(long)]
    pub interp_factor: Option<usize>,
    /// Butterworth filter order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Filter cutoff in rad/sample of the interpolated signal.
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Log cost-difference threshold for a quadratic trend.
    #[arg(long)]
    pub trend_threshold: Option<f64>,
    /// Zero band half-width relative to the autocorrelation range.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Quotient jump that separates distance intervals.
    #[arg(long)]
    pub quotient_threshold: Option<f64>,
}

impl ConfigArgs {
    pub fn config(&self) -> Result<DetectionConfig> {
        let d = DetectionConfig::default();
        let config = DetectionConfig {
            interp_factor: self.interp_factor.unwrap_or(d.interp_factor),
            filter_order: self.order.unwrap_or(d.filter_order),
            filter_cutoff: self.cutoff.unwrap_or(d.filter_cutoff),
            trend_log_threshold: self.trend_threshold.unwrap_or(d.trend_log_threshold),
            zero_tolerance_rel: self.epsilon.unwrap_or(d.zero_tolerance_rel),
            quotient_threshold: self.quotient_threshold.unwrap_or(d.quotient_threshold),
            min_zero_count: d.min_zero_count,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// CSV file holding the series.
    #[arg(long)]
    pub input: PathBuf,
    /// Column name or 0-based index (default: first column).
    #[arg(long)]
    pub column: Option<String>,
    #[arg(long, default_value = ",")]
    pub delimiter: char,
    /// Sampling interval used to scale the reported season length.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// JSON-lines manifest of cases.
    #[arg(long)]
    pub input: PathBuf,
    /// Accepted relative error.
    #[arg(long, default_value_t = 0.2)]
    pub margin: f64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write per-case records as JSON lines here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Family name or `all`.
    pub family: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

/// JSON printed by `detect`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectOutput {
    pub season_length: Option<f64>,
    pub unscaled_length: Option<f64>,
    pub trend_degree: usize,
    pub zeros: usize,
    pub interval_size: usize,
}

fn delimiter_byte(c: char) -> Result<u8> {
    if c.is_ascii() {
        Ok(c as u8)
    } else {
        bail!("delimiter must be a single ASCII character")
    }
}

pub fn run_detect(args: &DetectArgs) -> Result<DetectOutput> {
    let config = args.config.config()?;
    let column = args.column.as_deref().map(Column::parse);
    let values = read_series(
        &args.input,
        column.as_ref(),
        delimiter_byte(args.delimiter)?,
    )?;
    let series = validate_series(&values, args.delta)?;
    let r = detect_season_length(&series, &config)?;
    Ok(DetectOutput {
        season_length: r.season_length(),
        unscaled_length: r.unscaled_length(),
        trend_degree: r.trend_degree,
        zeros: r.diagnostics.zero_count,
        interval_size: r.diagnostics.interval_size,
    })
}

pub fn cmd_detect(args: &DetectArgs, out: &mut impl Write) -> Result<()> {
    let output = run_detect(args)?;
    writeln!(out, "{}", serde_json::to_string(&output)?)?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, out: &mut impl Write) -> Result<Summary> {
    let config = args.config.config()?;
    let entries = read_manifest(&args.input)?;
    let base = args.input.parent().unwrap_or(Path::new("."));
    let records = evaluate(&entries, base, &config, args.margin, args.jobs)?;
    if let Some(path) = &args.out {
        let mut text = String::new();
        for r in &records {
            text.push_str(&serde_json::to_string(r)?);
            text.push('\n');
        }
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let summary = Summary::from_records(&records);
    write!(out, "{}", summary.table())?;
    Ok(summary)
}

/// Writes one CSV per case and `manifest.jsonl` into `dir`.
pub fn write_suite(family: &str, seed: u64, dir: &Path) -> Result<Vec<ManifestEntry>> {
    let suites: Vec<(Family, Vec<Case>)> = if family.eq_ignore_ascii_case("all") {
        generate_all(seed)?
    } else {
        let f: Family = family.parse()?;
        vec![(f, generate_family(f, seed)?)]
    };
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut entries = Vec::new();
    for (f, cases) in suites {
        for case in cases {
            let file = format!("{}.csv", case.label);
            write_series(&dir.join(&file), case.series.values())?;
            entries.push(ManifestEntry {
                path: file,
                reference: ReferenceValue::from_reference(&case.reference),
                family: f.name().to_string(),
                case: case.label,
            });
        }
    }
    let manifest = dir.join("manifest.jsonl");
    std::fs::write(&manifest, to_jsonl(&entries))
        .with_context(|| format!("cannot write {}", manifest.display()))?;
    Ok(entries)
}

pub fn cmd_gen(args: &GenArgs, out: &mut impl Write) -> Result<()> {
    let entries = write_suite(&args.family, args.seed, &args.out)?;
    writeln!(
        out,
        "wrote {} cases and manifest.jsonl to {}",
        entries.len(),
        args.out.display()
    )?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    match &cli.command {
        Command::Detect(a) => cmd_detect(a, out),
        Command::Eval(a) => cmd_eval(a, out).map(|_| ()),
        Command::Gen(a) => cmd_gen(a, out),
    }
}
