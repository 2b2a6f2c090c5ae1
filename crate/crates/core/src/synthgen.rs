//! Seeded synthetic series with known season lengths.
//!
//! Seven benchmark families cover varied, corrupted, ambiguous, repeated,
//! noisy, differently scaled and non-seasonal series. Every case is a sum of
//! a trend, a seasonal component, Gaussian noise and injected outliers,
//! generated from [`SeededRng`] so that a seed reproduces the exact values.
//!
//! Seasonal periods (other than in the `Length` family) are drawn between
//! 200 and 2000 samples, the range where the default filter cutoff of
//! `0.001 pi` on the fourfold interpolated signal preserves the season.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pipeline::exact_season_oracle;
use crate::rng::SeededRng;
use crate::series::TimeSeries;

/// Shape of the seasonal component.
#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    /// `amplitude * sin(2 pi t / period)`.
    Sinusoid,
    /// Explicit repeating block; the period is the block length.
    Tile(Vec<f64>),
    /// Sinusoid plus a second one with its own period and relative amplitude.
    TwoSinusoids {
        second_period: f64,
        second_amplitude: f64,
    },
    /// Gaussian random walk with `amplitude`-sized steps (non-seasonal).
    RandomWalk,
    /// No seasonal component.
    Flat,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Trend {
    pub offset: f64,
    pub slope: f64,
    pub curvature: f64,
}

impl Trend {
    pub fn degree(&self) -> usize {
        if self.curvature != 0.0 {
            2
        } else if self.slope != 0.0 {
            1
        } else {
            0
        }
    }

    fn at(&self, t: f64) -> f64 {
        self.offset + self.slope * t + self.curvature * t * t
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Outliers {
    pub count: usize,
    /// Spike height in units of the seasonal amplitude.
    pub magnitude: f64,
}

/// Full description of one synthetic series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub pattern: Pattern,
    pub amplitude: f64,
    /// Reference season length; `None` for non-seasonal series.
    pub period: Option<f64>,
    pub length: usize,
    pub trend: Trend,
    /// Noise standard deviation relative to `amplitude`.
    pub noise_sigma: f64,
    pub outliers: Outliers,
    /// Seasonal amplitude gain per cycle (1 = constant).
    pub amplitude_drift: f64,
    /// Cycles whose seasonal pattern is inverted.
    pub season_outlier_cycles: Vec<usize>,
    pub seed: u64,
}

impl SeriesSpec {
    pub fn sinusoid(period: f64, length: usize, seed: u64) -> Self {
        Self {
            pattern: Pattern::Sinusoid,
            amplitude: 1.0,
            period: Some(period),
            length,
            trend: Trend::default(),
            noise_sigma: 0.0,
            outliers: Outliers::default(),
            amplitude_drift: 1.0,
            season_outlier_cycles: Vec::new(),
            seed,
        }
    }

    pub fn tile(block: Vec<f64>, length: usize, seed: u64) -> Self {
        let period = block.len() as f64;
        Self {
            pattern: Pattern::Tile(block),
            period: Some(period),
            ..Self::sinusoid(period, length, seed)
        }
    }

    pub fn non_seasonal(pattern: Pattern, length: usize, seed: u64) -> Self {
        Self {
            pattern,
            period: None,
            ..Self::sinusoid(1.0, length, seed)
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        if !(self.noise_sigma >= 0.0) {
            return bad("noise_sigma must be >= 0");
        }
        if self.outliers.count * 10 >= self.length {
            return bad("outlier count must stay below length / 10");
        }
        if !(self.amplitude_drift > 0.0) {
            return bad("amplitude_drift must be > 0");
        }
        if self.length < 4 {
            return bad("length must be >= 4");
        }
        let seasonal = matches!(
            self.pattern,
            Pattern::Sinusoid | Pattern::Tile(_) | Pattern::TwoSinusoids { .. }
        );
        match (seasonal, self.period) {
            (true, Some(p)) => {
                if !(p >= 2.0) {
                    return bad("period must be >= 2");
                }
                if (self.length as f64) < 4.0 * p {
                    return bad("length must cover at least four periods");
                }
                if let Pattern::Tile(block) = &self.pattern {
                    if block.len() as f64 != p {
                        return bad("tile period must equal block length");
                    }
                }
                if let Pattern::TwoSinusoids { second_period, .. } = self.pattern {
                    if !(second_period >= 2.0) {
                        return bad("second period must be >= 2");
                    }
                }
            }
            (true, None) => return bad("seasonal pattern needs a period"),
            (false, Some(_)) => return bad("non-seasonal pattern cannot carry a period"),
            (false, None) => {}
        }
        Ok(())
    }

    fn seasonal_at(&self, t: usize, period: f64) -> f64 {
        let tf = t as f64;
        match &self.pattern {
            Pattern::Sinusoid => (2.0 * PI * tf / period).sin(),
            Pattern::Tile(block) => block[t % block.len()],
            Pattern::TwoSinusoids {
                second_period,
                second_amplitude,
            } => {
                (2.0 * PI * tf / period).sin()
                    + second_amplitude * (2.0 * PI * tf / second_period).sin()
            }
            Pattern::RandomWalk | Pattern::Flat => 0.0,
        }
    }
}

/// Builds the series described by `spec` and returns it with its reference.
pub fn generate(spec: &SeriesSpec) -> Result<(TimeSeries, Option<f64>)> {
    spec.validate()?;
    if let (Pattern::Tile(block), Some(p)) = (&spec.pattern, spec.period) {
        let tiled: Vec<f64> = (0..spec.length).map(|t| block[t % block.len()]).collect();
        if exact_season_oracle(&tiled) != Some(p as usize) {
            return Err(Error::InvalidSpec(
                "tile block is a repetition of a shorter block".into(),
            ));
        }
    }

    let mut rng = SeededRng::new(spec.seed);
    let a = spec.amplitude;
    let mut values: Vec<f64> = (0..spec.length).map(|t| spec.trend.at(t as f64)).collect();

    if let Some(p) = spec.period {
        for (t, v) in values.iter_mut().enumerate() {
            let cycle = (t as f64 / p).floor();
            let mut s = spec.seasonal_at(t, p);
            if spec.season_outlier_cycles.contains(&(cycle as usize)) {
                s = -s;
            }
            *v += a * s * spec.amplitude_drift.powf(t as f64 / p);
        }
    }
    if spec.pattern == Pattern::RandomWalk {
        let mut level = 0.0;
        for v in values.iter_mut() {
            level += a * rng.normal();
            *v += level;
        }
    }
    if spec.noise_sigma > 0.0 {
        for v in values.iter_mut() {
            *v += spec.noise_sigma * a * rng.normal();
        }
    }
    for _ in 0..spec.outliers.count {
        let t = rng.int(0, spec.length - 1);
        values[t] += rng.sign() * spec.outliers.magnitude * a;
    }
    Ok((TimeSeries::from_values(values)?, spec.period))
}

/// Acceptable answers for a benchmark case.
#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    /// No seasonality.
    None,
    Exact(f64),
    /// Any of several lengths (a fundamental and its multiples).
    AnyOf(Vec<f64>),
}

impl Reference {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Reference::None => Vec::new(),
            Reference::Exact(r) => vec![*r],
            Reference::AnyOf(rs) => rs.clone(),
        }
    }

    /// Smallest relative error against any acceptable length.
    pub fn relative_error(&self, detected: f64) -> Option<f64> {
        self.values()
            .into_iter()
            .map(|r| (detected - r).abs() / r)
            .min_by(f64::total_cmp)
    }
}

/// The seven synthetic benchmark families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Diverse,
    Complex,
    Ambiguous,
    Variations,
    Noise,
    Length,
    NoSeason,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Diverse,
        Family::Complex,
        Family::Ambiguous,
        Family::Variations,
        Family::Noise,
        Family::Length,
        Family::NoSeason,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Diverse => "Diverse",
            Family::Complex => "Complex",
            Family::Ambiguous => "Ambiguous",
            Family::Variations => "Variations",
            Family::Noise => "Noise",
            Family::Length => "Length",
            Family::NoSeason => "NoSeason",
        }
    }

    /// Number of cases generated per seed.
    pub fn size(self) -> usize {
        match self {
            Family::Diverse | Family::Complex | Family::Ambiguous | Family::Variations => 20,
            Family::Noise | Family::Length | Family::NoSeason => 10,
        }
    }

    fn index(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// One generated benchmark case.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub series: TimeSeries,
    pub reference: Reference,
}

fn mix(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Log-uniform integer period.
fn draw_period(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.uniform())
        .exp()
        .round()
}

/// Smooth irregular block: a few random harmonics sampled over one period.
fn smooth_block(rng: &mut SeededRng, period: usize) -> Vec<f64> {
    let harmonics: Vec<(f64, f64)> = (1..=3)
        .map(|h| {
            let amp = if h == 1 { 1.0 } else { rng.range(0.0, 0.4) };
            (amp, rng.range(0.0, 2.0 * PI))
        })
        .collect();
    (0..period)
        .map(|t| {
            harmonics
                .iter()
                .enumerate()
                .map(|(i, (amp, phase))| {
                    amp * (2.0 * PI * (i + 1) as f64 * t as f64 / period as f64 + phase).sin()
                })
                .sum()
        })
        .collect()
}

fn random_trend(rng: &mut SeededRng, length: usize) -> Trend {
    let n = length as f64;
    let offset = rng.range(-5.0, 5.0);
    match rng.int(0, 2) {
        0 => Trend {
            offset,
            ..Trend::default()
        },
        // total rise of up to 4 amplitudes
        1 => Trend {
            offset,
            slope: rng.range(-4.0, 4.0) / n,
            curvature: 0.0,
        },
        _ => Trend {
            offset,
            slope: 0.0,
            curvature: rng.sign() * rng.range(2.0, 6.0) / (n * n),
        },
    }
}

fn random_seasonal(rng: &mut SeededRng, period: f64, length: usize, seed: u64) -> SeriesSpec {
    match rng.int(0, 2) {
        0 => SeriesSpec::sinusoid(period, length, seed),
        1 => SeriesSpec::tile(smooth_block(rng, period as usize), length, seed),
        _ => SeriesSpec {
            pattern: Pattern::TwoSinusoids {
                second_period: period / 2.0,
                second_amplitude: rng.range(0.2, 0.6),
            },
            ..SeriesSpec::sinusoid(period, length, seed)
        },
    }
}

fn case(family: Family, i: usize, spec: &SeriesSpec, reference: Reference) -> Result<Case> {
    let (series, _) = generate(spec)?;
    Ok(Case {
        label: format!("{}_{:02}", family.name(), i + 1),
        series,
        reference,
    })
}

/// Generates all cases of a family by name.
pub fn gen_family(name: &str, seed: u64) -> Result<Vec<Case>> {
    generate_family(name.parse()?, seed)
}

pub fn generate_family(family: Family, seed: u64) -> Result<Vec<Case>> {
    let mut rng = SeededRng::new(mix(seed, 1000 + family.index()));
    let case_seed = |i: usize| mix(seed, 100 * (family.index() + 1) + i as u64);
    let mut cases = Vec::with_capacity(family.size());

    match family {
        Family::Diverse => {
            for i in 0..family.size() {
                let period = draw_period(&mut rng, 200.0, 2000.0);
                let length = (period * rng.range(8.0, 25.0)) as usize;
                let mut spec = random_seasonal(&mut rng, period, length, case_seed(i));
                spec.trend = random_trend(&mut rng, length);
                spec.noise_sigma = rng.range(0.0, 0.5);
                cases.push(case(family, i, &spec, Reference::Exact(period))?);
            }
        }
        Family::Complex => {
            for i in 0..family.size() {
                let period = draw_period(&mut rng, 200.0, 2000.0);
                let cycles = rng.range(10.0, 25.0);
                let length = (period * cycles) as usize;
                let mut spec = random_seasonal(&mut rng, period, length, case_seed(i));
                spec.trend = random_trend(&mut rng, length);
                spec.noise_sigma = rng.range(0.1, 0.6);
                spec.outliers = Outliers {
                    count: rng.int(length / 100, length / 20),
                    magnitude: rng.range(3.0, 10.0),
                };
                // amplitude changes by a factor of up to 3 over the series
                spec.amplitude_drift = rng.range(1.0 / 3.0, 3.0).powf(1.0 / cycles);
                let n_outlier_cycles = rng.int(0, 2);
                spec.season_outlier_cycles = (0..n_outlier_cycles)
                    .map(|_| rng.int(0, cycles as usize - 1))
                    .collect();
                cases.push(case(family, i, &spec, Reference::Exact(period))?);
            }
        }
        Family::Ambiguous => {
            for i in 0..family.size() {
                let period = draw_period(&mut rng, 200.0, 800.0);
                let multiple = rng.int(2, 3) as f64;
                let long = period * multiple;
                let length = (long * rng.range(6.0, 12.0)) as usize;
                let spec = SeriesSpec {
                    pattern: Pattern::TwoSinusoids {
                        second_period: long,
                        second_amplitude: rng.range(0.5, 1.5),
                    },
                    noise_sigma: rng.range(0.0, 0.3),
                    ..SeriesSpec::sinusoid(period, length, case_seed(i))
                };
                cases.push(case(
                    family,
                    i,
                    &spec,
                    Reference::AnyOf(vec![period, long]),
                )?);
            }
        }
        Family::Variations => {
            for base in 0..4 {
                let period = draw_period(&mut rng, 200.0, 2000.0);
                let length = (period * rng.range(10.0, 20.0)) as usize;
                let spec = random_seasonal(&mut rng, period, length, case_seed(base * 5));
                for v in 0..5 {
                    let i = base * 5 + v;
                    let mut s = spec.clone();
                    s.seed = case_seed(i);
                    match v {
                        0 => {}
                        1 => s.noise_sigma = 0.4,
                        2 => {
                            s.outliers = Outliers {
                                count: length / 50,
                                magnitude: 6.0,
                            }
                        }
                        3 => {
                            s.trend = Trend {
                                offset: 2.0,
                                slope: 3.0 / length as f64,
                                curvature: 0.0,
                            }
                        }
                        _ => s.season_outlier_cycles = vec![2, 5],
                    }
                    cases.push(case(family, i, &s, Reference::Exact(period))?);
                }
            }
        }
        Family::Noise => {
            let period = 400.0;
            for i in 0..family.size() {
                let spec = SeriesSpec {
                    noise_sigma: 0.2 * i as f64,
                    ..SeriesSpec::sinusoid(period, 6000, case_seed(i))
                };
                cases.push(case(family, i, &spec, Reference::Exact(period))?);
            }
        }
        Family::Length => {
            let periods = [
                10.0, 25.0, 50.0, 100.0, 200.0, 350.0, 500.0, 1000.0, 2000.0, 3000.0,
            ];
            for (i, &period) in periods.iter().enumerate() {
                let spec = SeriesSpec {
                    pattern: Pattern::TwoSinusoids {
                        second_period: period / 2.0,
                        second_amplitude: 0.4,
                    },
                    noise_sigma: 0.05,
                    ..SeriesSpec::sinusoid(period, (period * 12.0) as usize, case_seed(i))
                };
                cases.push(case(family, i, &spec, Reference::Exact(period))?);
            }
        }
        Family::NoSeason => {
            for i in 0..family.size() {
                let length = rng.int(2000, 10000);
                let seed = case_seed(i);
                let n = length as f64;
                let spec = match i % 5 {
                    0 | 1 => SeriesSpec {
                        noise_sigma: 1.0,
                        ..SeriesSpec::non_seasonal(Pattern::Flat, length, seed)
                    },
                    2 => SeriesSpec::non_seasonal(Pattern::RandomWalk, length, seed),
                    3 => SeriesSpec {
                        trend: Trend {
                            offset: 1.0,
                            slope: rng.range(-5.0, 5.0) / n,
                            curvature: 0.0,
                        },
                        ..SeriesSpec::non_seasonal(Pattern::Flat, length, seed)
                    },
                    _ => SeriesSpec {
                        trend: Trend {
                            offset: 0.0,
                            slope: 0.0,
                            curvature: rng.range(1.0, 10.0) / (n * n),
                        },
                        ..SeriesSpec::non_seasonal(Pattern::Flat, length, seed)
                    },
                };
                cases.push(case(family, i, &spec, Reference::None)?);
            }
        }
    }
    Ok(cases)
}

/// All seven families in order.
pub fn generate_all(seed: u64) -> Result<Vec<(Family, Vec<Case>)>> {
    Family::ALL
        .into_iter()
        .map(|f| Ok((f, generate_family(f, seed)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_sinusoid_is_exact() {
        let (ts, r) = generate(&SeriesSpec::sinusoid(12.0, 240, 1)).unwrap();
        assert_eq!(r, Some(12.0));
        for (t, v) in ts.values().iter().enumerate() {
            assert_eq!(*v, (2.0 * PI * t as f64 / 12.0).sin());
        }
    }

    #[test]
    fn tile_reference_confirmed_by_oracle() {
        let (ts, r) = generate(&SeriesSpec::tile(vec![0., 2., 1., 2.], 160, 1)).unwrap();
        assert_eq!(r, Some(4.0));
        assert_eq!(exact_season_oracle(ts.values()), Some(4));
    }

    #[test]
    fn reducible_tile_rejected() {
        let spec = SeriesSpec::tile(vec![1., 2., 1., 2.], 160, 1);
        assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn seeds_change_noise_not_reference() {
        let spec = |seed| SeriesSpec {
            noise_sigma: 0.2,
            ..SeriesSpec::sinusoid(12.0, 240, seed)
        };
        let (a, ra) = generate(&spec(1)).unwrap();
        let (b, rb) = generate(&spec(2)).unwrap();
        assert_ne!(a.values(), b.values());
        assert_eq!(ra, rb);
        assert_eq!(generate(&spec(1)).unwrap().0, a);
    }

    #[test]
    fn invalid_specs() {
        let short = SeriesSpec::sinusoid(100.0, 300, 1);
        assert!(matches!(generate(&short), Err(Error::InvalidSpec(_))));
        let too_many = SeriesSpec {
            outliers: Outliers {
                count: 30,
                magnitude: 2.0,
            },
            ..SeriesSpec::sinusoid(10.0, 300, 1)
        };
        assert!(matches!(generate(&too_many), Err(Error::InvalidSpec(_))));
        let tiny = SeriesSpec::sinusoid(1.5, 300, 1);
        assert!(matches!(generate(&tiny), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!(
            gen_family("Economy", 7),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn no_season_family() {
        let cases = gen_family("NoSeason", 7).unwrap();
        assert_eq!(cases.len(), 10);
        assert!(cases.iter().all(|c| c.reference == Reference::None));
    }

    #[test]
    fn noise_family_escalates() {
        let cases = gen_family("Noise", 7).unwrap();
        assert_eq!(cases.len(), 10);
        // same base waveform: noiseless case is the pure sinusoid
        let clean = &cases[0].series;
        assert_eq!(clean.values()[100], (2.0 * PI * 100.0 / 400.0).sin());
        let deviation = |c: &Case| {
            c.series
                .values()
                .iter()
                .zip(clean.values())
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
        };
        let devs: Vec<f64> = cases.iter().map(deviation).collect();
        assert_eq!(devs[0], 0.0);
        assert!(devs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn length_family_spans_scales() {
        let cases = gen_family("Length", 7).unwrap();
        let refs: Vec<f64> = cases.iter().flat_map(|c| c.reference.values()).collect();
        assert_eq!(cases.len(), 10);
        assert!(refs.iter().cloned().fold(f64::MAX, f64::min) <= 10.0);
        assert!(refs.iter().cloned().fold(0.0, f64::max) >= 500.0);
    }

    #[test]
    fn family_sizes_and_reference_bounds() {
        let mut total = 0;
        for (family, cases) in generate_all(7).unwrap() {
            assert_eq!(cases.len(), family.size());
            total += cases.len();
            for c in &cases {
                for r in c.reference.values() {
                    assert!(r >= 2.0);
                    assert!(c.series.len() as f64 >= 4.0 * r, "{}", c.label);
                }
            }
        }
        assert_eq!(total, 110);
    }

    #[test]
    fn ambiguous_cases_list_multiples() {
        for c in gen_family("Ambiguous", 3).unwrap() {
            let Reference::AnyOf(refs) = &c.reference else {
                panic!("{}", c.label)
            };
            assert_eq!(refs.len(), 2);
            let k = refs[1] / refs[0];
            assert!(k == 2.0 || k == 3.0);
        }
    }

    #[test]
    fn relative_error_uses_closest_reference() {
        let r = Reference::AnyOf(vec![10.0, 30.0]);
        assert_eq!(r.relative_error(27.0), Some(0.1));
        assert_eq!(Reference::None.relative_error(5.0), None);
    }
}
