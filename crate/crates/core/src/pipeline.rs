//! End-to-end detection plus the exact and spectral reference detectors.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::autocorr::{self, AcfSeries};
use crate::detrend::{self, TrendModel};
use crate::error::{Error, Result};
use crate::preprocess;
use crate::series::{
    DetectionConfig, DetectionResult, Diagnostics, Season, TimeSeries, MIN_DETECTION_LENGTH,
};
use crate::zerocross::{self, ZeroAnalysis};

/// Intermediate signals of one detection run.
#[derive(Debug, Clone)]
pub struct Trace {
    pub interpolated: Vec<f64>,
    pub filtered: Vec<f64>,
    pub trend: TrendModel,
    pub detrended: Vec<f64>,
    /// `None` when the detrended signal has no variance left.
    pub acf: Option<AcfSeries>,
    pub zeros: ZeroAnalysis,
}

/// Runs every stage and keeps the intermediate results.
pub fn trace(series: &TimeSeries, config: &DetectionConfig) -> Result<Trace> {
    config.validate()?;
    if series.len() < MIN_DETECTION_LENGTH {
        return Err(Error::TooShort {
            len: series.len(),
            min: MIN_DETECTION_LENGTH,
        });
    }
    let interpolated = preprocess::interpolate_values(series.values(), config.interp_factor);
    let spec = preprocess::design_butterworth_lowpass(config.filter_order, config.filter_cutoff)?;
    let filtered = preprocess::filter_values(&interpolated, &spec)?;
    let (_, trend) = detrend::select_values(&filtered, config.trend_log_threshold)?;
    let detrended = detrend::remove_values(&filtered, &trend)?;

    let acf = match autocorr::acf_values(&detrended) {
        Ok(values) => Some(autocorr::detrend_acf(&AcfSeries::from_values(values))?),
        Err(Error::ZeroVariance) => None,
        Err(e) => return Err(e),
    };
    let zeros = match &acf {
        Some(acf) => zerocross::analyze_zeros(
            zerocross::find_zeros(acf, config.zero_tolerance_rel),
            config.quotient_threshold,
            config.interp_factor,
        ),
        None => ZeroAnalysis::default(),
    };
    Ok(Trace {
        interpolated,
        filtered,
        trend,
        detrended,
        acf,
        zeros,
    })
}

/// Estimates the season length of `series`.
///
/// Series without detectable seasonality yield [`Season::None`]; errors are
/// reserved for invalid input or configuration.
pub fn detect_season_length(
    series: &TimeSeries,
    config: &DetectionConfig,
) -> Result<DetectionResult> {
    let values = series.values();
    if values.len() >= MIN_DETECTION_LENGTH && values.iter().all(|&v| v == values[0]) {
        config.validate()?;
        return Ok(DetectionResult {
            season: Season::None,
            trend_degree: 1,
            diagnostics: Diagnostics::default(),
        });
    }

    let t = trace(series, config)?;
    let z = &t.zeros;
    let diagnostics = Diagnostics {
        zero_count: z.zeros.len(),
        distance_count: z.distances.len(),
        interval: z.interval,
        interval_size: z.members().len(),
    };
    let season = match z.season {
        Some(s) if z.zeros.len() >= config.min_zero_count && s >= 2.0 => Season::Detected {
            unscaled: s,
            scaled: s * series.delta(),
            low_confidence: z.low_confidence,
        },
        _ => Season::None,
    };
    Ok(DetectionResult {
        season,
        trend_degree: t.trend.degree(),
        diagnostics,
    })
}

/// Smallest exact season of a discrete sequence.
///
/// Returns the least `p >= 2` (with `p <= n / 2`) such that
/// `values[i] == values[i + p]` for every valid `i` and the first `p` values
/// are not a repetition of a shorter block.
pub fn exact_season_oracle(values: &[f64]) -> Option<usize> {
    (2..=values.len() / 2).find(|&p| repeats_with(values, p) && is_irreducible(&values[..p]))
}

/// `values[i] == values[i + p]` for every `i`.
pub fn repeats_with(values: &[f64], p: usize) -> bool {
    p > 0
        && values
            .iter()
            .zip(&values[p.min(values.len())..])
            .all(|(a, b)| a == b)
}

/// True when `block` cannot be written as `k >= 2` copies of a shorter block.
pub fn is_irreducible(block: &[f64]) -> bool {
    let n = block.len();
    !(1..n).any(|d| n % d == 0 && repeats_with(block, d))
}

/// Period of the strongest periodogram peak after linear detrending.
///
/// A plain comparison baseline: returns `n / k` for the peak bin `k`, or
/// `None` for series shorter than 16, without variance, or peaking at DC.
pub fn baseline_periodogram(series: &TimeSeries) -> Option<f64> {
    let x = series.values();
    let n = x.len();
    if n < 16 {
        return None;
    }
    let model = detrend::fit_values(x, 1).ok()?;
    let resid = detrend::remove_values(x, &model).ok()?;
    let scale = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if resid.iter().all(|r| r.abs() <= 1e-12 * scale) {
        return None;
    }

    let mut buf: Vec<Complex64> = resid.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    FftPlanner::<f64>::new()
        .plan_fft_forward(n)
        .process(&mut buf);
    let (peak, _) = buf[..=n / 2].iter().map(|c| c.norm_sqr()).enumerate().fold(
        (0, f64::NEG_INFINITY),
        |best, (k, p)| if p > best.1 { (k, p) } else { best },
    );
    (peak > 0).then(|| n as f64 / peak as f64)
}
