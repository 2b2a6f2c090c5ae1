//! Parameter-free season length detection for uniformly sampled time series.
//!
//! The detector upsamples the observations by linear interpolation, smooths
//! them with a zero-phase Butterworth low-pass filter, removes a linear or
//! quadratic trend, and computes the normalized autocorrelation. Distances
//! between consecutive zeros of the (linearly detrended) autocorrelation are
//! half the season length; the longest run of near-equal distances is
//! averaged to produce the estimate.
//!
//! ```
//! use seasonlen_core::{detect_season_length, DetectionConfig, TimeSeries};
//!
//! let values: Vec<f64> = (0..800)
//!     .map(|t| (2.0 * std::f64::consts::PI * t as f64 / 20.0).sin())
//!     .collect();
//! let series = TimeSeries::new(values, 1.0).unwrap();
//! let config = DetectionConfig {
//!     filter_cutoff: 0.05 * std::f64::consts::PI,
//!     ..DetectionConfig::default()
//! };
//! let result = detect_season_length(&series, &config).unwrap();
//! let s = result.unscaled_length().unwrap();
//! assert!((19.0..=21.0).contains(&s));
//! ```

pub mod autocorr;
pub mod detrend;
mod error;
pub mod pipeline;
pub mod preprocess;
pub mod rng;
mod series;
pub mod synthgen;
pub mod zerocross;

pub use autocorr::{autocorrelation, detrend_acf, AcfSeries};
pub use detrend::{fit_polynomial, remove_trend, select_trend_degree, TrendModel};
pub use error::{Error, Result};
pub use pipeline::{baseline_periodogram, detect_season_length, exact_season_oracle};
pub use preprocess::{apply_filter, design_butterworth_lowpass, interpolate_linear, FilterSpec};
pub use series::{
    validate_series, DetectionConfig, DetectionResult, Diagnostics, Season, TimeSeries,
    MIN_DETECTION_LENGTH,
};
pub use synthgen::{gen_family, generate, Case, Family, Reference, SeriesSpec};
pub use zerocross::ZeroAnalysis;
