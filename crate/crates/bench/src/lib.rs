//! Shared inputs for the benchmarks.

use seasonlen_core::rng::SeededRng;
use seasonlen_core::TimeSeries;

/// Noisy sinusoid of the given period.
pub fn noisy_sinusoid(n: usize, period: f64, seed: u64) -> TimeSeries {
    let mut rng = SeededRng::new(seed);
    let values = (0..n)
        .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period).sin() + 0.2 * rng.normal())
        .collect();
    TimeSeries::from_values(values).expect("finite values")
}
