//! Scoring detections against reference season lengths.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use seasonlen_core::{
    baseline_periodogram, detect_season_length, DetectionConfig, Reference, TimeSeries,
};
use serde::{Deserialize, Serialize};

use crate::input::read_series;
use crate::manifest::{ManifestEntry, ReferenceValue};

/// Outcome of one case for both detectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub case: String,
    pub family: String,
    pub reference: Option<ReferenceValue>,
    pub detected: Option<f64>,
    pub relative_error: Option<f64>,
    pub passed: bool,
    pub baseline: Option<f64>,
    pub baseline_relative_error: Option<f64>,
    pub baseline_passed: bool,
}

/// Relative error against the closest reference and the pass verdict.
///
/// A case passes when both sides report no season, or when the detection
/// lies within `margin` (relative) of an acceptable reference.
pub fn score(detected: Option<f64>, reference: &Reference, margin: f64) -> (Option<f64>, bool) {
    match (detected, reference) {
        (None, Reference::None) => (None, true),
        (Some(d), r) => {
            let err = r.relative_error(d);
            (err, err.is_some_and(|e| e <= margin))
        }
        (None, _) => (None, false),
    }
}

pub fn evaluate_case(
    entry: &ManifestEntry,
    series: &TimeSeries,
    config: &DetectionConfig,
    margin: f64,
) -> Result<EvalRecord> {
    let reference = entry.reference();
    let detected = detect_season_length(series, config)
        .with_context(|| format!("case {}", entry.case))?
        .unscaled_length();
    let baseline = baseline_periodogram(series);
    let (relative_error, passed) = score(detected, &reference, margin);
    let (baseline_relative_error, baseline_passed) = score(baseline, &reference, margin);
    Ok(EvalRecord {
        case: entry.case.clone(),
        family: entry.family.clone(),
        reference: entry.reference.clone(),
        detected,
        relative_error,
        passed,
        baseline,
        baseline_relative_error,
        baseline_passed,
    })
}

/// Evaluates every manifest entry on up to `jobs` threads; records keep
/// manifest order regardless of scheduling.
pub fn evaluate(
    entries: &[ManifestEntry],
    base: &Path,
    config: &DetectionConfig,
    margin: f64,
    jobs: usize,
) -> Result<Vec<EvalRecord>> {
    let run = || {
        entries
            .par_iter()
            .map(|e| {
                let values = read_series(&e.resolve(base), None, b',')?;
                let series = seasonlen_core::validate_series(&values, 1.0)
                    .with_context(|| format!("case {}", e.case))?;
                evaluate_case(e, &series, config, margin)
            })
            .collect::<Result<Vec<_>>>()
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("cannot start worker threads")?
        .install(run)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyRow {
    pub family: String,
    pub cases: usize,
    pub passed: usize,
    pub baseline_passed: usize,
}

/// Per-family pass counts in first-appearance order, plus the total.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: Vec<FamilyRow>,
    pub total: FamilyRow,
}

impl Summary {
    pub fn from_records(records: &[EvalRecord]) -> Self {
        let mut rows: Vec<FamilyRow> = Vec::new();
        for r in records {
            let i = match rows.iter().position(|row| row.family == r.family) {
                Some(i) => i,
                None => {
                    rows.push(FamilyRow {
                        family: r.family.clone(),
                        ..FamilyRow::default()
                    });
                    rows.len() - 1
                }
            };
            rows[i].cases += 1;
            rows[i].passed += r.passed as usize;
            rows[i].baseline_passed += r.baseline_passed as usize;
        }
        let total = FamilyRow {
            family: "total".into(),
            cases: rows.iter().map(|r| r.cases).sum(),
            passed: rows.iter().map(|r| r.passed).sum(),
            baseline_passed: rows.iter().map(|r| r.baseline_passed).sum(),
        };
        Self { rows, total }
    }

    pub fn pass_rate(&self) -> f64 {
        rate(self.total.passed, self.total.cases)
    }

    pub fn baseline_pass_rate(&self) -> f64 {
        rate(self.total.baseline_passed, self.total.cases)
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<12} {:>6} {:>14} {:>14}\n",
            "family", "cases", "autocorr", "periodogram"
        );
        for row in self.rows.iter().chain(std::iter::once(&self.total)) {
            let cell = |n: usize| format!("{n} ({:.0}%)", 100.0 * rate(n, row.cases));
            let _ = writeln!(
                out,
                "{:<12} {:>6} {:>14} {:>14}",
                row.family,
                row.cases,
                cell(row.passed),
                cell(row.baseline_passed)
            );
        }
        out
    }
}

fn rate(n: usize, of: usize) -> f64 {
    if of == 0 {
        0.0
    } else {
        n as f64 / of as f64
    }
}
