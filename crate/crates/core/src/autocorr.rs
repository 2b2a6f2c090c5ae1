//! Normalized autocorrelation and its secondary linear detrending.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::detrend;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Autocorrelation values for lags `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfSeries {
    values: Vec<f64>,
    detrended: bool,
}

impl AcfSeries {
    /// Wraps precomputed values, e.g. to analyze an externally computed ACF.
    pub fn from_values(values: Vec<f64>) -> Self {
        Self {
            values,
            detrended: false,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_detrended(&self) -> bool {
        self.detrended
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Biased, mean-removed autocorrelation normalized by its lag-0 value:
/// `A(tau) = sum_t y_t y_{t+tau} / sum_t y_t^2` with `y = x - mean(x)`.
///
/// Computed through a zero-padded FFT in `O(n log n)`.
pub fn autocorrelation(series: &TimeSeries) -> Result<AcfSeries> {
    Ok(AcfSeries::from_values(acf_values(series.values())?))
}

pub(crate) fn acf_values(x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::ZeroVariance);
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let energy: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    if !(energy > 0.0) {
        return Err(Error::ZeroVariance);
    }

    let size = (2 * n).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(size);
    let inverse = planner.plan_fft_inverse(size);

    let mut buf: Vec<Complex64> = x
        .iter()
        .map(|v| Complex64::new(v - mean, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(size)
        .collect();
    forward.process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex64::new(c.norm_sqr(), 0.0);
    }
    inverse.process(&mut buf);

    let scale = 1.0 / (size as f64 * energy);
    let mut acf: Vec<f64> = buf[..n].iter().map(|c| c.re * scale).collect();
    acf[0] = 1.0;
    Ok(acf)
}

/// Subtracts the least-squares line over all lags.
pub fn detrend_acf(acf: &AcfSeries) -> Result<AcfSeries> {
    if acf.detrended {
        return Err(Error::AlreadyDetrended);
    }
    let model = detrend::fit_values(&acf.values, 1)?;
    Ok(AcfSeries {
        values: detrend::remove_values(&acf.values, &model)?,
        detrended: true,
    })
}
