//! Least-squares polynomial trends of degree 1 or 2.
//!
//! Fits use the centered, scaled time index `t = (i - (n + 1) / 2) / n`
//! (`i = 1..=n`) instead of raw powers of `i`. Both bases span the same
//! column space, so fitted values and residuals are identical, but the
//! normal equations stay well conditioned even for very long series.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A fitted polynomial trend.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendModel {
    degree: usize,
    coefficients: Vec<f64>,
    cost: f64,
    len: usize,
}

impl TrendModel {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients in the centered basis, constant term first.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Mean squared residual of the fit.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Length of the series the model was fitted on.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Trend value at zero-based position `index`.
    pub fn value_at(&self, index: usize) -> f64 {
        let t = scaled_time(index, self.len);
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c)
    }

    pub fn fitted_values(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.value_at(i)).collect()
    }
}

fn scaled_time(index: usize, n: usize) -> f64 {
    let n = n as f64;
    ((index + 1) as f64 - (n + 1.0) / 2.0) / n
}

fn check_degree(n: usize, degree: usize) -> Result<()> {
    if !(1..=2).contains(&degree) {
        return Err(Error::DegreeUnsupported(degree));
    }
    if n < degree + 1 {
        return Err(Error::InsufficientPoints { n, degree });
    }
    Ok(())
}

/// `n x (degree + 1)` design matrix; column `j` holds the `j`-th power of the
/// centered, scaled time index.
pub fn design_matrix(n: usize, degree: usize) -> Result<DMatrix<f64>> {
    check_degree(n, degree)?;
    Ok(DMatrix::from_fn(n, degree + 1, |i, j| {
        scaled_time(i, n).powi(j as i32)
    }))
}

/// Least-squares polynomial fit of the given degree.
pub fn fit_polynomial(series: &TimeSeries, degree: usize) -> Result<TrendModel> {
    fit_values(series.values(), degree)
}

pub(crate) fn fit_values(values: &[f64], degree: usize) -> Result<TrendModel> {
    let n = values.len();
    check_degree(n, degree)?;
    let m = degree + 1;

    // Gram matrix entries only depend on sum(t^k), k = 0..2*degree.
    let mut power_sums = [0.0f64; 5];
    for i in 0..n {
        let t = scaled_time(i, n);
        let mut p = 1.0;
        for s in power_sums.iter_mut().take(2 * degree + 1) {
            *s += p;
            p *= t;
        }
    }
    let gram = DMatrix::from_fn(m, m, |j, k| power_sums[j + k]);
    let chol = gram.cholesky().ok_or(Error::SingularSystem)?;

    let project = |data: &dyn Fn(usize) -> f64| {
        let mut rhs = DVector::zeros(m);
        for i in 0..n {
            let t = scaled_time(i, n);
            let x = data(i);
            let mut p = 1.0;
            for j in 0..m {
                rhs[j] += p * x;
                p *= t;
            }
        }
        rhs
    };

    let mut theta = chol.solve(&project(&|i| values[i]));
    // One refinement step against the residual recovers digits lost when the
    // series has a large offset relative to its fluctuations.
    let eval = |theta: &DVector<f64>, i: usize| {
        let t = scaled_time(i, n);
        theta.iter().rev().fold(0.0, |acc, c| acc * t + c)
    };
    let correction = chol.solve(&project(&|i| values[i] - eval(&theta, i)));
    theta += correction;
    if theta.iter().any(|c| !c.is_finite()) {
        return Err(Error::SingularSystem);
    }

    let sse: f64 = (0..n).map(|i| (values[i] - eval(&theta, i)).powi(2)).sum();
    Ok(TrendModel {
        degree,
        coefficients: theta.iter().copied().collect(),
        cost: sse / n as f64,
        len: n,
    })
}

/// Picks degree 2 iff `ln(C1 - C2) > k_trend`, where `Cd` is the mean squared
/// error of the degree-`d` fit. A non-positive difference selects degree 1.
pub fn select_trend_degree(series: &TimeSeries, k_trend: f64) -> usize {
    select_values(series.values(), k_trend)
        .map(|(degree, _)| degree)
        .unwrap_or(1)
}

/// Degree selection returning the chosen model as well.
pub(crate) fn select_values(values: &[f64], k_trend: f64) -> Result<(usize, TrendModel)> {
    let linear = fit_values(values, 1)?;
    let quadratic = match fit_values(values, 2) {
        Ok(q) => q,
        Err(Error::InsufficientPoints { .. }) => return Ok((1, linear)),
        Err(e) => return Err(e),
    };
    if prefers_quadratic(linear.cost(), quadratic.cost(), k_trend) {
        Ok((2, quadratic))
    } else {
        Ok((1, linear))
    }
}

fn prefers_quadratic(linear_cost: f64, quadratic_cost: f64, k_trend: f64) -> bool {
    let gain = linear_cost - quadratic_cost;
    gain > 0.0 && gain.ln() > k_trend
}

/// Subtracts the fitted trend.
pub fn remove_trend(series: &TimeSeries, model: &TrendModel) -> Result<TimeSeries> {
    Ok(series.with_values(remove_values(series.values(), model)?))
}

pub(crate) fn remove_values(values: &[f64], model: &TrendModel) -> Result<Vec<f64>> {
    if values.len() != model.len() {
        return Err(Error::LengthMismatch {
            expected: model.len(),
            found: values.len(),
        });
    }
    Ok(values
        .iter()
        .enumerate()
        .map(|(i, x)| x - model.value_at(i))
        .collect())
}
