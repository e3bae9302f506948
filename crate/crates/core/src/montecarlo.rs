//! Seeded Monte Carlo engine for detection time and burned area.
//!
//! A trial draws its ignition points and then, for random placement with
//! per-trial resampling, its sensors, all from the trial's own substream (see
//! [`crate::rng`]). The detection time is the smallest reach time over every
//! (ignition, sensor) pair; the burned area is measured at that instant.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, AnalyticLaw};
use crate::error::{require_positive, Error, Result};
use crate::geometry::{union_area, EllipseGrowth, Point, RectRegion, DEFAULT_AREA_TOL};
use crate::placement::{self, uniform_point, SensorLayout};
use crate::propagation::{burned_area, SpreadModel};
use crate::rng::{self, StreamRng};

/// How sensors are placed in the region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Placement {
    /// Square lattice with the given spacing, boundary nodes included.
    Grid { spacing: f64 },
    /// `count` sensors i.i.d. uniform in the region.
    Random { count: usize },
    /// Sensors at fixed, known positions.
    Fixed { positions: Vec<Point> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub region: RectRegion,
    pub placement: Placement,
    pub model: SpreadModel,
    pub ignition_count: usize,
    pub trials: usize,
    pub master_seed: u64,
    /// Draw a fresh random layout for every trial. Ignored unless placement
    /// is [`Placement::Random`].
    pub resample_layout_each_trial: bool,
    /// Measure the burned area inside the region only.
    pub clip_to_region: bool,
    /// Relative tolerance of union-area integration.
    #[serde(default = "default_area_tol")]
    pub area_tol: f64,
}

fn default_area_tol() -> f64 {
    DEFAULT_AREA_TOL
}

impl ScenarioConfig {
    /// Scenario with one ignition, the placement's default clip and
    /// resampling modes, 10^5 trials and seed 0.
    pub fn new(region: RectRegion, placement: Placement, model: SpreadModel) -> Self {
        let random = matches!(placement, Placement::Random { .. });
        ScenarioConfig {
            region,
            placement,
            model,
            ignition_count: 1,
            trials: 100_000,
            master_seed: 0,
            resample_layout_each_trial: random,
            clip_to_region: random,
            area_tol: DEFAULT_AREA_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.ignition_count == 0 {
            return Err(Error::Config("ignition count must be >= 1".into()));
        }
        require_positive("area tolerance", self.area_tol)?;
        match &self.placement {
            Placement::Random { count: 0 } => Err(Error::Config("sensor layout is empty".into())),
            Placement::Fixed { positions } if positions.is_empty() => {
                Err(Error::Config("sensor layout is empty".into()))
            }
            Placement::Grid { spacing } => {
                placement::grid_layout(&self.region, *spacing).map(|_| ())
            }
            Placement::Fixed { positions } => {
                SensorLayout::from_positions(&self.region, positions.clone(), 1.0).map(|_| ())
            }
            Placement::Random { .. } => Ok(()),
        }
    }

    pub fn sensor_count(&self) -> Result<usize> {
        Ok(match &self.placement {
            Placement::Grid { spacing } => placement::grid_layout(&self.region, *spacing)?.len(),
            Placement::Random { count } => *count,
            Placement::Fixed { positions } => positions.len(),
        })
    }

    /// Grid spacing, or `sqrt(A / N)` otherwise.
    pub fn characteristic_distance(&self) -> Result<f64> {
        match &self.placement {
            Placement::Grid { spacing } => Ok(*spacing),
            _ => placement::characteristic_distance(self.region.area(), self.sensor_count()?),
        }
    }
}

/// One Monte Carlo sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Time to detection, seconds.
    pub t_d: f64,
    /// Burned area at detection, square meters.
    pub a_d: f64,
}

struct Detector {
    growth: EllipseGrowth,
    circular: bool,
    rate: f64,
    ignitions: Vec<Point>,
    best: f64,
    best_sq_dist: f64,
}

impl Detector {
    fn new(model: &SpreadModel, ignitions: Vec<Point>) -> Result<Self> {
        Ok(Detector {
            growth: model.growth()?,
            circular: matches!(model, SpreadModel::Circular(_)),
            rate: model.rate(),
            ignitions,
            best: f64::INFINITY,
            best_sq_dist: f64::INFINITY,
        })
    }

    #[inline]
    fn observe(&mut self, sensor: Point) {
        for ign in &self.ignitions {
            let dx = sensor.x - ign.x;
            let dy = sensor.y - ign.y;
            let d2 = dx * dx + dy * dy;
            // The head is the fastest part of the front, so distance / R
            // bounds every reach time from below.
            if d2 >= self.best_sq_dist {
                continue;
            }
            if self.circular {
                self.best_sq_dist = d2;
            } else {
                let t = self.growth.reach_time_from(dx, dy);
                if t < self.best {
                    self.best = t;
                    let reach = self.rate * t;
                    self.best_sq_dist = reach * reach;
                }
            }
        }
    }

    fn detection_time(&self) -> f64 {
        if self.circular {
            self.best_sq_dist.sqrt() / self.rate
        } else {
            self.best
        }
    }
}

fn burned_at(
    model: &SpreadModel,
    ignitions: &[Point],
    t_d: f64,
    region: &RectRegion,
    clip: bool,
    tol: f64,
) -> Result<f64> {
    if !t_d.is_finite() {
        return Err(Error::Config("no sensor can detect the fire".into()));
    }
    if ignitions.len() == 1 && !clip {
        return burned_area(model, t_d);
    }
    let growth = model.growth()?;
    let fronts: Vec<_> = ignitions.iter().map(|&p| growth.front(p, t_d)).collect();
    union_area(&fronts, clip.then_some(region), tol)
}

/// Detection time and burned area for known sensors and ignitions.
pub fn evaluate_detection(
    model: &SpreadModel,
    sensors: &[Point],
    ignitions: &[Point],
    region: &RectRegion,
    clip_to_region: bool,
    tol: f64,
) -> Result<TrialOutcome> {
    if sensors.is_empty() {
        return Err(Error::Config("sensor layout is empty".into()));
    }
    if ignitions.is_empty() {
        return Err(Error::Config("at least one ignition is required".into()));
    }
    let mut det = Detector::new(model, ignitions.to_vec())?;
    for &s in sensors {
        det.observe(s);
    }
    let t_d = det.detection_time();
    let a_d = burned_at(model, ignitions, t_d, region, clip_to_region, tol)?;
    Ok(TrialOutcome { t_d, a_d })
}

enum Sensors {
    Shared(Vec<Point>),
    PerTrial(usize),
}

fn prepare_sensors(config: &ScenarioConfig) -> Result<Sensors> {
    Ok(match &config.placement {
        Placement::Grid { spacing } => Sensors::Shared(
            placement::grid_layout(&config.region, *spacing)?
                .positions()
                .to_vec(),
        ),
        Placement::Fixed { positions } => Sensors::Shared(positions.clone()),
        Placement::Random { count } if config.resample_layout_each_trial => {
            Sensors::PerTrial(*count)
        }
        Placement::Random { count } => {
            let mut rng = rng::substream(config.master_seed, rng::LAYOUT_STREAM);
            let layout = placement::uniform_layout_from(&mut rng, &config.region, *count)?;
            Sensors::Shared(layout.positions().to_vec())
        }
    })
}

fn run_trial(config: &ScenarioConfig, sensors: &Sensors, trial: u64) -> Result<TrialOutcome> {
    let mut rng: StreamRng = rng::substream(config.master_seed, trial);
    let ignitions: Vec<Point> = (0..config.ignition_count)
        .map(|_| uniform_point(&mut rng, &config.region))
        .collect();
    let mut det = Detector::new(&config.model, ignitions)?;
    match sensors {
        Sensors::Shared(points) => points.iter().for_each(|&s| det.observe(s)),
        Sensors::PerTrial(n) => {
            for _ in 0..*n {
                det.observe(uniform_point(&mut rng, &config.region));
            }
        }
    }
    let t_d = det.detection_time();
    let a_d = burned_at(
        &config.model,
        &det.ignitions,
        t_d,
        &config.region,
        config.clip_to_region,
        config.area_tol,
    )?;
    Ok(TrialOutcome { t_d, a_d })
}

/// Runs every trial of `config` on the current rayon pool. The outcome list
/// depends only on `config`.
pub fn run_trials(config: &ScenarioConfig) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    let sensors = prepare_sensors(config)?;
    (0..config.trials as u64)
        .into_par_iter()
        .map(|i| run_trial(config, &sensors, i))
        .collect()
}

/// Runs `f` on a dedicated pool of `threads` workers (0 picks rayon's
/// default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// [`run_trials`] on a dedicated pool of `threads` workers.
pub fn run_trials_with_threads(
    config: &ScenarioConfig,
    threads: usize,
) -> Result<Vec<TrialOutcome>> {
    with_threads(threads, || run_trials(config))?
}

/// Replays a single trial.
pub fn run_single_trial(config: &ScenarioConfig, trial: u64) -> Result<TrialOutcome> {
    config.validate()?;
    let sensors = prepare_sensors(config)?;
    run_trial(config, &sensors, trial)
}

/// Writes outcomes as CSV with header `trial,t_d,a_d`.
pub fn write_outcomes_csv<W: Write>(outcomes: &[TrialOutcome], mut out: W) -> io::Result<()> {
    writeln!(out, "trial,t_d,a_d")?;
    for (i, o) in outcomes.iter().enumerate() {
        writeln!(out, "{i},{},{}", o.t_d, o.a_d)?;
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mean_td: f64,
    pub var_td: f64,
    pub se_td: f64,
    pub mean_ad: f64,
    pub var_ad: f64,
    pub se_ad: f64,
    /// Standard errors of the two sample variances.
    pub se_var_td: f64,
    pub se_var_ad: f64,
    /// Sorted detection times.
    pub ecdf_td: Vec<f64>,
    /// Sorted burned areas.
    pub ecdf_ad: Vec<f64>,
}

/// Mean, unbiased variance and the standard error of that variance.
fn mean_var(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let (ss, s4) = xs.iter().fold((0.0, 0.0), |(ss, s4), x| {
        let d2 = (x - mean) * (x - mean);
        (ss + d2, s4 + d2 * d2)
    });
    let var = ss / (n - 1.0);
    // Var(s^2) ~ (m4 - s^4 (n - 3)/(n - 1)) / n.
    let m4 = s4 / n;
    let var_of_var = (m4 - var * var * (n - 3.0) / (n - 1.0)).max(0.0) / n;
    (mean, var, var_of_var.sqrt())
}

fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs
}

/// Unbiased means and variances, standard errors and sorted samples.
pub fn summarize(outcomes: &[TrialOutcome]) -> Result<SummaryStats> {
    if outcomes.len() < 2 {
        return Err(Error::Estimator(format!(
            "need at least 2 outcomes, got {}",
            outcomes.len()
        )));
    }
    let td: Vec<f64> = outcomes.iter().map(|o| o.t_d).collect();
    let ad: Vec<f64> = outcomes.iter().map(|o| o.a_d).collect();
    let n = outcomes.len();
    let (mean_td, var_td, se_var_td) = mean_var(&td);
    let (mean_ad, var_ad, se_var_ad) = mean_var(&ad);
    Ok(SummaryStats {
        n,
        mean_td,
        var_td,
        se_td: (var_td / n as f64).sqrt(),
        mean_ad,
        var_ad,
        se_ad: (var_ad / n as f64).sqrt(),
        se_var_td,
        se_var_ad,
        ecdf_td: sorted(td),
        ecdf_ad: sorted(ad),
    })
}

/// Kolmogorov-Smirnov distance between the empirical CDF of a sorted sample
/// and the law's CDF, evaluated on both sides of every step.
pub fn ks_distance(sample: &[f64], law: &AnalyticLaw) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::Estimator("empty sample".into()));
    }
    if sample.iter().any(|x| x.is_nan()) {
        return Err(Error::Estimator("sample contains NaN".into()));
    }
    if sample.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Estimator("sample is not sorted ascending".into()));
    }
    let n = sample.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in sample.iter().enumerate() {
        let f = law.cdf(x);
        let below = i as f64 / n;
        let above = (i + 1) as f64 / n;
        sup = sup.max(above - f).max(f - below);
    }
    Ok(sup)
}

/// `P(K > lambda)` for the Kolmogorov distribution.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.0 {
        // Jacobi-theta form converges fast for small arguments.
        let c = std::f64::consts::PI * std::f64::consts::PI / (8.0 * lambda * lambda);
        let s: f64 = (1..=20)
            .map(|k| (-((2 * k - 1) as f64).powi(2) * c).exp())
            .sum();
        return 1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * s;
    }
    let s: f64 = (1..=100)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp()
        })
        .sum();
    (2.0 * s).clamp(0.0, 1.0)
}

/// Asymptotic critical value of the one-sample KS distance at level
/// `alpha` for a sample of size `n`.
pub fn ks_critical_value(n: usize, alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.2f64, 5.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_sf(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / (n as f64).sqrt()
}

/// Reference laws a scenario's outcomes can be checked against, when one is
/// known: `(detection time, burned area)`.
pub fn reference_laws(
    config: &ScenarioConfig,
) -> Result<(Option<AnalyticLaw>, Option<AnalyticLaw>)> {
    let single = config.ignition_count == 1;
    let circular = matches!(config.model, SpreadModel::Circular(_));
    match &config.placement {
        Placement::Grid { spacing } if single && circular => {
            let td = analytic::grid_td_law(*spacing, config.model.rate())?;
            let ad = if config.clip_to_region {
                None
            } else {
                Some(analytic::grid_ad_law(*spacing)?)
            };
            Ok((Some(td), ad))
        }
        Placement::Random { count } if config.resample_layout_each_trial => {
            let d = config.characteristic_distance()?;
            let td = if single {
                Some(analytic::random_td_law(&config.model, d)?)
            } else {
                None
            };
            let ad = if config.clip_to_region {
                analytic::random_ad_exact_law(config.region.area(), *count)?
            } else {
                analytic::random_ad_limit_law(d)?
            };
            Ok((td, Some(ad)))
        }
        _ => Ok((None, None)),
    }
}

/// Summary written by the `simulate` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub n: usize,
    pub mean_td: f64,
    pub se_td: f64,
    pub var_td: f64,
    pub mean_ad: f64,
    pub se_ad: f64,
    pub var_ad: f64,
    pub ks_td: Option<f64>,
    pub ks_ad: Option<f64>,
}

pub fn summary_report(config: &ScenarioConfig, stats: &SummaryStats) -> Result<SummaryReport> {
    let (td_law, ad_law) = reference_laws(config)?;
    let ks_td = td_law
        .map(|l| ks_distance(&stats.ecdf_td, &l))
        .transpose()?;
    let ks_ad = ad_law
        .map(|l| ks_distance(&stats.ecdf_ad, &l))
        .transpose()?;
    Ok(SummaryReport {
        n: stats.n,
        mean_td: stats.mean_td,
        se_td: stats.se_td,
        var_td: stats.var_td,
        mean_ad: stats.mean_ad,
        se_ad: stats.se_ad,
        var_ad: stats.var_ad,
        ks_td,
        ks_ad,
    })
}
