use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

/// Shortest series accepted for a detection attempt.
pub const MIN_DETECTION_LENGTH: usize = 4;

/// Uniformly sampled, finite observations with their sampling interval.
///
/// The interval only scales the reported season length; all stages work in
/// sample units.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    delta: f64,
}

impl TimeSeries {
    /// Builds a series after checking that every value is finite and that
    /// `delta > 0`. No minimum length is enforced here; use
    /// [`validate_series`] for detection input.
    pub fn new(values: Vec<f64>, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::NonPositiveDelta(delta));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { values, delta })
    }

    /// Series with unit sampling interval.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1.0)
    }

    pub(crate) fn with_values(&self, values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self {
            values,
            delta: self.delta,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Checks raw observations for use as detection input.
pub fn validate_series(raw: &[f64], delta: f64) -> Result<TimeSeries> {
    if raw.len() < MIN_DETECTION_LENGTH {
        return Err(Error::TooShort {
            len: raw.len(),
            min: MIN_DETECTION_LENGTH,
        });
    }
    TimeSeries::new(raw.to_vec(), delta)
}

/// Constants of the detection pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionConfig {
    /// Upsampling ratio; the interpolated length is `interp_factor * (n - 1) + 1`.
    pub interp_factor: usize,
    /// Butterworth order.
    pub filter_order: usize,
    /// Half-power frequency in rad/sample of the interpolated signal.
    pub filter_cutoff: f64,
    /// Quadratic trend is chosen when `ln(C1 - C2)` exceeds this.
    pub trend_log_threshold: f64,
    /// Zero band half-width as a fraction of the detrended ACF range.
    pub zero_tolerance_rel: f64,
    /// Maximum jump between neighbouring distance quotients inside a
    /// low-variance interval.
    pub quotient_threshold: f64,
    /// Fewer zeros than this means no season.
    pub min_zero_count: usize,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            interp_factor: 4,
            filter_order: 2,
            filter_cutoff: 0.001 * PI,
            trend_log_threshold: E * E,
            zero_tolerance_rel: 1e-4,
            quotient_threshold: 0.5,
            min_zero_count: 3,
        }
    }
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.interp_factor < 1 {
            return bad("interp_factor must be >= 1".into());
        }
        if self.filter_order < 1 {
            return bad("filter_order must be >= 1".into());
        }
        if !(self.filter_cutoff > 0.0 && self.filter_cutoff < PI) {
            return bad(format!(
                "filter_cutoff must lie in (0, pi), got {}",
                self.filter_cutoff
            ));
        }
        if !self.trend_log_threshold.is_finite() {
            return bad("trend_log_threshold must be finite".into());
        }
        if !(self.zero_tolerance_rel >= 0.0) || !self.zero_tolerance_rel.is_finite() {
            return bad(format!(
                "zero_tolerance_rel must be >= 0, got {}",
                self.zero_tolerance_rel
            ));
        }
        if !(self.quotient_threshold > 0.0 && self.quotient_threshold < 1.0) {
            return bad(format!(
                "quotient_threshold must lie in (0, 1), got {}",
                self.quotient_threshold
            ));
        }
        Ok(())
    }
}

/// Outcome of a detection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Season {
    /// A season of `unscaled` samples, i.e. `scaled = unscaled * delta`.
    Detected {
        unscaled: f64,
        scaled: f64,
        /// Estimate rests on a single zero-to-zero distance.
        low_confidence: bool,
    },
    None,
}

/// Summary of the zero analysis behind a result.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Diagnostics {
    pub zero_count: usize,
    /// Number of distances that survived the `> 1` filter.
    pub distance_count: usize,
    /// Selected `(a, b]` interval over the sorted distances (1-based).
    pub interval: Option<(usize, usize)>,
    /// Number of distances averaged into the estimate.
    pub interval_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionResult {
    pub season: Season,
    pub trend_degree: usize,
    pub diagnostics: Diagnostics,
}

impl DetectionResult {
    /// Season length scaled by the sampling interval.
    pub fn season_length(&self) -> Option<f64> {
        match self.season {
            Season::Detected { scaled, .. } => Some(scaled),
            Season::None => None,
        }
    }

    /// Season length in original samples.
    pub fn unscaled_length(&self) -> Option<f64> {
        match self.season {
            Season::Detected { unscaled, .. } => Some(unscaled),
            Season::None => None,
        }
    }

    pub fn is_seasonal(&self) -> bool {
        matches!(self.season, Season::Detected { .. })
    }
}
