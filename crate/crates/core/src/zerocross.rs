//! Zeros of the detrended autocorrelation and the segmentation of their
//! spacings into a season length.
//!
//! Adjacent zeros of the autocorrelation of a seasonal series sit half a
//! season apart. Spurious or missed zeros show up as distances that are
//! fractions or multiples of the true one, so the sorted distances are split
//! wherever the ratio between neighbours jumps, and the longest stable run
//! is averaged.

use crate::autocorr::AcfSeries;
use crate::error::{Error, Result};

/// Everything derived from the zero positions of one autocorrelation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZeroAnalysis {
    /// Zero positions in lag units, ascending.
    pub zeros: Vec<f64>,
    /// Differences between consecutive zeros.
    pub raw_distances: Vec<f64>,
    /// Distances greater than one lag, ascending.
    pub distances: Vec<f64>,
    /// Ratios of consecutive sorted distances.
    pub quotients: Vec<f64>,
    /// Non-zero change-point indices (1-based into `distances`).
    pub change_points: Vec<usize>,
    /// Selected `(a, b]` interval over `distances` (1-based).
    pub interval: Option<(usize, usize)>,
    /// Estimate in lag units of the analyzed series (`None` if no estimate).
    pub season: Option<f64>,
    /// The estimate rests on fewer than three distances.
    pub low_confidence: bool,
}

impl ZeroAnalysis {
    /// Distances averaged into the estimate.
    pub fn members(&self) -> &[f64] {
        match self.interval {
            Some((a, b)) => &self.distances[a..b],
            None => &[],
        }
    }
}

/// Positions where the autocorrelation crosses or touches zero.
///
/// Sign changes between neighbouring lags are located by linear
/// interpolation; maximal runs with `|A| <= eps` contribute their centre,
/// where `eps = epsilon_rel * (max - min)`. Candidates closer than half a lag
/// are merged, and anything below lag 1 is dropped.
pub fn find_zeros(acf: &AcfSeries, epsilon_rel: f64) -> Vec<f64> {
    let v = acf.values();
    if v.len() < 2 {
        return Vec::new();
    }
    let (lo, hi) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let eps = epsilon_rel * (hi - lo);

    let mut candidates = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..v.len() {
        if v[i].abs() <= eps {
            run_start.get_or_insert(i);
        } else if let Some(s) = run_start.take() {
            candidates.push((s + i - 1) as f64 / 2.0);
        }
        if i + 1 < v.len() && v[i] * v[i + 1] < 0.0 {
            candidates.push(i as f64 + v[i] / (v[i] - v[i + 1]));
        }
    }
    if let Some(s) = run_start {
        candidates.push((s + v.len() - 1) as f64 / 2.0);
    }
    candidates.sort_by(f64::total_cmp);

    let mut zeros = Vec::new();
    let mut cluster: Vec<f64> = Vec::new();
    for c in candidates {
        if let Some(&first) = cluster.first() {
            if c - first > 0.5 {
                zeros.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
                cluster.clear();
            }
        }
        cluster.push(c);
    }
    if !cluster.is_empty() {
        zeros.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
    }
    zeros.retain(|&z| z >= 1.0);
    zeros
}

/// Consecutive differences `delta` and the sorted distances above one lag.
pub fn zero_distances(zeros: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let raw: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
    let mut kept: Vec<f64> = raw.iter().copied().filter(|&d| d > 1.0).collect();
    kept.sort_by(f64::total_cmp);
    (raw, kept)
}

/// Ratios `d[i + 1] / d[i]` of the sorted distances.
pub fn quotients(distances: &[f64]) -> Result<Vec<f64>> {
    if distances.len() < 2 {
        return Err(Error::TooFewDistances(distances.len()));
    }
    Ok(distances.windows(2).map(|w| w[1] / w[0]).collect())
}

/// Change points of the quotient sequence (1-based), zeros removed and
/// consecutive duplicates collapsed.
///
/// For each `i` in `1..=m` the first matching case wins:
/// `i == 1` with `|g1 - g2| <= k` gives 1; `i == m` gives `m`;
/// `|g_i - g_{i+1}| > k` gives `i + 1`; otherwise 0.
pub fn change_points(gamma: &[f64], k_quot: f64) -> Result<Vec<usize>> {
    let m = gamma.len();
    if m < 2 {
        return Err(Error::TooFewQuotients(m));
    }
    let mut out: Vec<usize> = Vec::new();
    for i in 1..=m {
        let g = |j: usize| gamma[j - 1];
        let marker = if i == 1 && (g(1) - g(2)).abs() <= k_quot {
            1
        } else if i == m {
            m
        } else if (g(i) - g(i + 1)).abs() > k_quot {
            i + 1
        } else {
            0
        };
        if marker != 0 && out.last() != Some(&marker) {
            out.push(marker);
        }
    }
    Ok(out)
}

/// Widest gap between consecutive change points; ties go to the earlier gap.
/// The selected members are `distances[a + 1 ..= b]` (1-based).
pub fn select_interval(change_points: &[usize], distances: &[f64]) -> Result<(usize, usize)> {
    if change_points.len() < 2 {
        return Err(Error::NoInterval(change_points.len()));
    }
    let mut best = 0;
    let mut widest = 0;
    for (i, w) in change_points.windows(2).enumerate() {
        let gap = w[1].saturating_sub(w[0]);
        if gap > widest {
            widest = gap;
            best = i;
        }
    }
    let (a, b) = (change_points[best], change_points[best + 1]);
    if a >= b || b > distances.len() {
        return Err(Error::NoInterval(change_points.len()));
    }
    Ok((a, b))
}

/// Twice the mean distance over `(a, b]`, divided by the interpolation
/// factor to return to original-sample units.
pub fn season_from_interval(distances: &[f64], a: usize, b: usize, interp_factor: usize) -> f64 {
    let sum: f64 = distances[a..b].iter().sum();
    2.0 * sum / (b - a) as f64 / interp_factor as f64
}

/// Runs distances through segmentation, handling short distance lists.
///
/// With no distances there is no estimate. A single distance is used as is
/// (low confidence). Two distances are averaged when their ratio stays within
/// `1 + k_quot`, otherwise the smaller one is used.
pub fn analyze_zeros(zeros: Vec<f64>, k_quot: f64, interp_factor: usize) -> ZeroAnalysis {
    let (raw_distances, distances) = zero_distances(&zeros);
    let mut analysis = ZeroAnalysis {
        zeros,
        raw_distances,
        distances,
        ..ZeroAnalysis::default()
    };
    let d = &analysis.distances;
    let f = interp_factor as f64;
    match d.len() {
        0 => {}
        1 => {
            analysis.season = Some(2.0 * d[0] / f);
            analysis.interval = Some((0, 1));
            analysis.low_confidence = true;
        }
        2 => {
            let gamma = d[1] / d[0];
            analysis.quotients = vec![gamma];
            analysis.low_confidence = true;
            if gamma - 1.0 <= k_quot {
                analysis.interval = Some((0, 2));
                analysis.season = Some((d[0] + d[1]) / f);
            } else {
                analysis.interval = Some((0, 1));
                analysis.season = Some(2.0 * d[0] / f);
            }
        }
        _ => {
            // |d| >= 3 guarantees at least two quotients
            let gamma = quotients(d).expect("three or more distances");
            let cps = change_points(&gamma, k_quot).expect("two or more quotients");
            if let Ok((a, b)) = select_interval(&cps, d) {
                analysis.season = Some(season_from_interval(d, a, b, interp_factor));
                analysis.interval = Some((a, b));
            }
            analysis.quotients = gamma;
            analysis.change_points = cps;
        }
    }
    analysis
}

#[cfg(test)]
mod tests {
    use super::*;

    const TYPICAL_DISTANCES: [f64; 11] = [
        281., 546., 697., 703., 704., 705., 706., 706., 1411., 1411., 2823.,
    ];

    #[test]
    fn midpoint_sign_change() {
        let acf = AcfSeries::from_values(vec![1.0, 0.5, -0.5, -1.0]);
        assert_eq!(find_zeros(&acf, 1e-4), vec![1.5]);
    }

    #[test]
    fn no_zeros_when_positive() {
        let acf = AcfSeries::from_values(vec![1.0, 0.5, 0.3, 0.1, 0.2, 0.4]);
        assert!(find_zeros(&acf, 1e-4).is_empty());
    }

    #[test]
    fn tolerance_band_run_yields_center() {
        let acf = AcfSeries::from_values(vec![1.0, 0.4, 0.001, 0.0005, 0.0008, 0.3, 0.9]);
        // range 1.0 - 0.0005, eps = 0.01 * range
        assert_eq!(find_zeros(&acf, 0.01), vec![3.0]);
    }

    #[test]
    fn exact_zero_is_found_without_tolerance() {
        let acf = AcfSeries::from_values(vec![1.0, 0.5, 0.0, -0.5, 0.0, 0.5]);
        assert_eq!(find_zeros(&acf, 0.0), vec![2.0, 4.0]);
    }

    #[test]
    fn crossing_inside_band_is_merged() {
        let acf = AcfSeries::from_values(vec![1.0, 0.5, 0.00001, -0.00001, -0.5, -1.0]);
        let z = find_zeros(&acf, 1e-4);
        assert_eq!(z.len(), 1);
        assert!((z[0] - 2.5).abs() < 1e-12);
    }

    #[test]
    fn lag_zero_neighbourhood_excluded() {
        let acf = AcfSeries::from_values(vec![0.1, -0.5, -1.0, -0.5, 0.5]);
        assert_eq!(find_zeros(&acf, 0.0), vec![3.5]);
    }

    #[test]
    fn distances_direct() {
        let (raw, kept) = zero_distances(&[10.0, 20.5, 31.0]);
        assert_eq!(raw, vec![10.5, 10.5]);
        assert_eq!(kept, vec![10.5, 10.5]);
    }

    #[test]
    fn distances_drop_unit_gaps() {
        let (raw, kept) = zero_distances(&[5.0, 5.8, 16.0]);
        assert_eq!(raw.len(), 2);
        assert!((raw[0] - 0.8).abs() < 1e-12 && (raw[1] - 10.2).abs() < 1e-12);
        assert_eq!(kept.len(), 1);
        assert!((kept[0] - 10.2).abs() < 1e-12);
        // exactly one lag is dropped too
        assert!(zero_distances(&[3.0, 4.0]).1.is_empty());
    }

    #[test]
    fn distances_are_sorted() {
        let zeros = [0.0, 703.0, 1407.0, 1688.0, 3099.0];
        let (raw, kept) = zero_distances(&zeros);
        assert_eq!(raw, vec![703., 704., 281., 1411.]);
        assert_eq!(kept, vec![281., 703., 704., 1411.]);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotients(&[4., 4., 8.]).unwrap(), vec![1.0, 2.0]);
        assert_eq!(quotients(&[7.; 4]).unwrap(), vec![1.0; 3]);
        assert_eq!(quotients(&[7.]), Err(Error::TooFewDistances(1)));
    }

    #[test]
    fn reference_quotients() {
        let g = quotients(&TYPICAL_DISTANCES).unwrap();
        let expected = [
            1.943, 1.277, 1.009, 1.001, 1.001, 1.001, 1.000, 1.999, 1.000, 2.001,
        ];
        assert_eq!(g.len(), 10);
        for (a, b) in g.iter().zip(expected) {
            assert!((a - b).abs() < 5e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn reference_segmentation() {
        let g = quotients(&TYPICAL_DISTANCES).unwrap();
        let cps = change_points(&g, 0.5).unwrap();
        assert_eq!(cps, vec![2, 8, 9, 10]);
        let (a, b) = select_interval(&cps, &TYPICAL_DISTANCES).unwrap();
        assert_eq!((a, b), (2, 8));
        assert_eq!(
            &TYPICAL_DISTANCES[a..b],
            &[697., 703., 704., 705., 706., 706.]
        );
        assert_eq!(season_from_interval(&TYPICAL_DISTANCES, a, b, 1), 1407.0);
    }

    #[test]
    fn change_point_edge_cases() {
        assert_eq!(change_points(&[1.0, 1.0, 1.0], 0.5).unwrap(), vec![1, 3]);
        assert_eq!(change_points(&[1.0, 5.0], 0.5).unwrap(), vec![2]);
        assert_eq!(change_points(&[1.0], 0.5), Err(Error::TooFewQuotients(1)));
    }

    #[test]
    fn interval_selection() {
        assert_eq!(select_interval(&[1, 3], &[7.; 4]).unwrap(), (1, 3));
        assert_eq!(select_interval(&[1, 4, 5], &[1.; 6]).unwrap(), (1, 4));
        // tie goes to the earlier gap
        assert_eq!(select_interval(&[1, 3, 5], &[1.; 6]).unwrap(), (1, 3));
        assert_eq!(select_interval(&[2], &[1.; 6]), Err(Error::NoInterval(1)));
    }

    #[test]
    fn season_units() {
        assert_eq!(season_from_interval(&[10.; 4], 1, 4, 1), 20.0);
        assert_eq!(season_from_interval(&[40., 40.], 1, 2, 4), 20.0);
    }

    #[test]
    fn short_distance_lists() {
        assert_eq!(analyze_zeros(vec![], 0.5, 1).season, None);
        assert_eq!(analyze_zeros(vec![1.5, 2.0], 0.5, 1).season, None);
        let one = analyze_zeros(vec![2.0, 12.0], 0.5, 1);
        assert_eq!(one.season, Some(20.0));
        assert!(one.low_confidence);
        let close = analyze_zeros(vec![2.0, 12.0, 23.0], 0.5, 1);
        assert_eq!(close.season, Some(21.0));
        let apart = analyze_zeros(vec![2.0, 12.0, 42.0], 0.5, 2);
        assert_eq!(apart.season, Some(10.0));
    }

    #[test]
    fn synthetic_zeros_recover_period() {
        for p in [4.0, 10.0, 37.0, 250.0] {
            let zeros: Vec<f64> = (0..20).map(|k| p / 4.0 + k as f64 * p / 2.0).collect();
            let a = analyze_zeros(zeros, 0.5, 1);
            let s = a.season.unwrap();
            assert!((s - p).abs() < 1e-9 * p, "{s} vs {p}");
            assert!(a.members().iter().all(|&d| d > 1.0));
        }
    }
}
