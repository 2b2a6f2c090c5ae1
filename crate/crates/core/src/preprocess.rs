//! Upsampling and low-pass smoothing.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Linear interpolation inserting `factor - 1` equally spaced points between
/// neighbouring observations.
///
/// Original observation `i` lands at output index `factor * i`, and the
/// sampling interval shrinks by `factor`.
pub fn interpolate_linear(series: &TimeSeries, factor: usize) -> Result<TimeSeries> {
    if factor == 0 {
        return Err(Error::InvalidConfig(
            "interpolation factor must be >= 1".into(),
        ));
    }
    let values = interpolate_values(series.values(), factor);
    TimeSeries::new(values, series.delta() / factor as f64)
}

pub(crate) fn interpolate_values(x: &[f64], factor: usize) -> Vec<f64> {
    if factor <= 1 || x.len() < 2 {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(factor * (x.len() - 1) + 1);
    for pair in x.windows(2) {
        let (x1, x2) = (pair[0], pair[1]);
        out.push(x1);
        for j in 1..factor {
            out.push(x1 + (x2 - x1) * (j as f64 / factor as f64));
        }
    }
    out.push(x[x.len() - 1]);
    out
}

/// One second-order section, `b0 + b1 q + b2 q^2 / (1 + a1 q + a2 q^2)` with
/// `q = z^-1`. First-order sections have `b2 = a2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub b: [f64; 3],
    pub a: [f64; 3],
}

impl Section {
    fn response(&self, q: Complex64) -> Complex64 {
        let num = self.b[0] + q * (self.b[1] + q * self.b[2]);
        let den = self.a[0] + q * (self.a[1] + q * self.a[2]);
        num / den
    }

    fn dc_gain(&self) -> f64 {
        self.b.iter().sum::<f64>() / self.a.iter().sum::<f64>()
    }

    /// Direct-form-II-transposed state for a constant input `u` in steady state.
    fn steady_state(&self, u: f64) -> [f64; 2] {
        let y = self.dc_gain() * u;
        let s2 = self.b[2] * u - self.a[2] * y;
        let s1 = self.b[1] * u - self.a[1] * y + s2;
        [s1, s2]
    }

    fn run(&self, data: &mut [f64]) {
        let Some(&first) = data.first() else { return };
        let [b0, b1, b2] = self.b;
        let [_, a1, a2] = self.a;
        let [mut s1, mut s2] = self.steady_state(first);
        for v in data.iter_mut() {
            let x = *v;
            let y = b0 * x + s1;
            s1 = b1 * x - a1 * y + s2;
            s2 = b2 * x - a2 * y;
            *v = y;
        }
    }
}

/// Digital Butterworth low-pass filter as a cascade of sections.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    order: usize,
    cutoff: f64,
    sections: Vec<Section>,
    poles: Vec<Complex64>,
}

impl FilterSpec {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Half-power frequency in rad/sample.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Digital poles (z-plane).
    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    /// Feedforward polynomial in `z^-1`, constant term first.
    pub fn numerator(&self) -> Vec<f64> {
        self.sections
            .iter()
            .fold(vec![1.0], |acc, s| poly_mul(&acc, &trim(&s.b)))
    }

    /// Feedback polynomial in `z^-1`, leading coefficient 1.
    pub fn denominator(&self) -> Vec<f64> {
        self.sections
            .iter()
            .fold(vec![1.0], |acc, s| poly_mul(&acc, &trim(&s.a)))
    }

    /// Ratio of coefficient sums, i.e. `H(1)`.
    pub fn dc_gain(&self) -> f64 {
        self.numerator().iter().sum::<f64>() / self.denominator().iter().sum::<f64>()
    }

    pub fn frequency_response(&self, omega: f64) -> Complex64 {
        let q = Complex64::from_polar(1.0, -omega);
        self.sections
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, s| acc * s.response(q))
    }

    pub fn magnitude(&self, omega: f64) -> f64 {
        self.frequency_response(omega).norm()
    }

    pub fn is_stable(&self) -> bool {
        self.poles.iter().all(|p| p.norm() < 1.0)
    }
}

fn trim(c: &[f64; 3]) -> Vec<f64> {
    let len = if c[2] == 0.0 { 2 } else { 3 };
    c[..len].to_vec()
}

fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Butterworth low-pass of the given order with its half-power point at
/// `cutoff` rad/sample (`pi` is Nyquist).
///
/// The analog prototype is pre-warped to `2 tan(cutoff / 2)` and mapped with
/// the bilinear transform; every section is normalized to unit DC gain.
pub fn design_butterworth_lowpass(order: usize, cutoff: f64) -> Result<FilterSpec> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    if !(cutoff > 0.0 && cutoff < PI) {
        return Err(Error::CutoffOutOfRange(cutoff));
    }
    let warped = 2.0 * (cutoff / 2.0).tan();
    let n = order as f64;
    let two = Complex64::new(2.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let mut sections = Vec::with_capacity(order.div_ceil(2));
    let mut poles = Vec::with_capacity(order);
    for k in 0..order / 2 {
        let theta = PI * (2.0 * k as f64 + n + 1.0) / (2.0 * n);
        let analog = Complex64::from_polar(warped, theta);
        let z = (two + analog) / (two - analog);
        let gap = (one - z).norm_sqr();
        let g = gap / 4.0;
        sections.push(Section {
            b: [g, 2.0 * g, g],
            a: [1.0, -2.0 * z.re, z.norm_sqr()],
        });
        poles.push(z);
        poles.push(z.conj());
    }
    if order % 2 == 1 {
        let z = (2.0 - warped) / (2.0 + warped);
        let g = (1.0 - z) / 2.0;
        sections.push(Section {
            b: [g, g, 0.0],
            a: [1.0, -z, 0.0],
        });
        poles.push(Complex64::new(z, 0.0));
    }
    Ok(FilterSpec {
        order,
        cutoff,
        sections,
        poles,
    })
}

/// Zero-phase low-pass filtering: a forward pass, then a pass over the
/// reversed output. Each pass starts from the steady state of its first
/// sample. The effective magnitude response is `|H|^2`.
pub fn apply_filter(series: &TimeSeries, spec: &FilterSpec) -> Result<TimeSeries> {
    Ok(series.with_values(filter_values(series.values(), spec)?))
}

pub(crate) fn filter_values(x: &[f64], spec: &FilterSpec) -> Result<Vec<f64>> {
    let min = 6 * spec.order;
    if x.len() <= min {
        return Err(Error::SeriesTooShortForFilter { len: x.len(), min });
    }
    let mut data = x.to_vec();
    for s in &spec.sections {
        s.run(&mut data);
    }
    data.reverse();
    for s in &spec.sections {
        s.run(&mut data);
    }
    data.reverse();
    Ok(data)
}
