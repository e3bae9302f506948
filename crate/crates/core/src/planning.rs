//! Sensor-count planning and simulation-versus-theory comparison tables.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::analytic::{self, AnalyticLaw};
use crate::error::{require_positive, Error, Result};
use crate::geometry::RectRegion;
use crate::montecarlo::{self, Placement, ScenarioConfig, SummaryStats};
use crate::propagation::SpreadModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlacementKind {
    Grid,
    Random,
}

/// What the planned network must achieve on average.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanTarget {
    /// Largest acceptable expected burned area at detection, m^2.
    MeanBurnedArea(f64),
    /// Largest acceptable expected detection time, s.
    MeanDetectionTime(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanRequest {
    pub region_area: f64,
    pub model: SpreadModel,
    pub target: PlanTarget,
    pub placement: PlacementKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    #[serde(rename = "D")]
    pub distance: f64,
    #[serde(rename = "N")]
    pub sensors: usize,
    pub assumptions: Vec<String>,
}

/// `ceil`, ignoring rounding noise just above an integer.
fn count_ceil(q: f64) -> usize {
    let r = q.round();
    if (q - r).abs() <= 1e-9 * q.max(1.0) {
        r as usize
    } else {
        q.ceil() as usize
    }
}

/// Characteristic distance and sensor count meeting `req.target`.
pub fn plan(req: &PlanRequest) -> Result<PlanResult> {
    require_positive("region area", req.region_area)?;
    req.model.validate()?;
    let circular = matches!(req.model, SpreadModel::Circular(_));
    let mut assumptions = Vec::new();
    let distance = match (req.placement, req.target) {
        (_, PlanTarget::MeanBurnedArea(a)) | (_, PlanTarget::MeanDetectionTime(a))
            if !(a.is_finite() && a > 0.0) =>
        {
            return Err(Error::param(format!("plan target must be > 0, got {a}")));
        }
        (PlacementKind::Grid, _) if !circular => {
            return Err(Error::param("grid planning laws assume circular spread"));
        }
        (PlacementKind::Grid, PlanTarget::MeanBurnedArea(a)) => {
            assumptions
                .push("square grid with spacing D, uniform ignition: E[A_d] = (pi/6) D^2".into());
            (6.0 * a / PI).sqrt()
        }
        (PlacementKind::Grid, PlanTarget::MeanDetectionTime(t)) => {
            assumptions.push(
                "square grid with spacing D, circular spread at rate R: E[T_d] = (sqrt(2) + ln(1 + sqrt(2)))/6 * D/R".into(),
            );
            t * req.model.rate() * 6.0 / (SQRT_2 + (1.0 + SQRT_2).ln())
        }
        (PlacementKind::Random, PlanTarget::MeanBurnedArea(a)) => {
            assumptions.push(
                "uniform random placement, large N: A_d ~ Exponential(1/D^2), E[A_d] = D^2, independent of spread law".into(),
            );
            a.sqrt()
        }
        (PlacementKind::Random, PlanTarget::MeanDetectionTime(t)) => {
            assumptions
                .push("uniform random placement, large N: P(T_d > t) = exp(-F(t)/D^2)".into());
            if circular {
                assumptions.push("circular spread: E[T_d] = D/(2R)".into());
            } else {
                assumptions
                    .push("elliptical spread: E[T_d] = 2 sqrt(LB)/(1 + 1/HB) * D/(2R)".into());
            }
            2.0 * req.model.rate() * t / req.model.time_scale()
        }
    };
    assumptions.push("D = sqrt(A/N), N rounded up".into());
    let sensors = count_ceil(req.region_area / (distance * distance)).max(1);
    Ok(PlanResult {
        distance,
        sensors,
        assumptions,
    })
}

/// One line of a comparison table. `theory_*` columns hold the closed-form
/// value the scenario should approach (exact for grids, the large-N limit
/// for random placement); `exact_*_ad` hold the finite-N burned-area
/// moments when the area is clipped to the region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub sensors: usize,
    pub distance: f64,
    pub trials: usize,
    pub mean_td: f64,
    pub se_td: f64,
    pub var_td: f64,
    pub mean_ad: f64,
    pub se_ad: f64,
    pub var_ad: f64,
    pub se_var_td: f64,
    pub se_var_ad: f64,
    pub theory_mean_td: Option<f64>,
    pub theory_var_td: Option<f64>,
    pub theory_mean_ad: Option<f64>,
    pub theory_var_ad: Option<f64>,
    pub exact_mean_ad: Option<f64>,
    pub exact_var_ad: Option<f64>,
    pub ks_td: Option<f64>,
    pub ks_ad: Option<f64>,
}

/// ECDF evaluated on a grid of `x`, next to the exact and asymptotic CDFs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcdfRow {
    pub sensors: usize,
    pub variable: String,
    pub x: f64,
    pub empirical: f64,
    pub exact: Option<f64>,
    pub asymptotic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<CompareRow>,
    pub ecdf: Vec<EcdfRow>,
}

fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

fn ecdf_table(
    sensors: usize,
    variable: &str,
    sorted: &[f64],
    exact: Option<&AnalyticLaw>,
    asymptotic: Option<&AnalyticLaw>,
    points: usize,
) -> Vec<EcdfRow> {
    if points == 0 {
        return Vec::new();
    }
    let idx = ((sorted.len() as f64 * 0.999) as usize).min(sorted.len() - 1);
    let upper = sorted[idx];
    let step = if points > 1 {
        upper / (points - 1) as f64
    } else {
        0.0
    };
    (0..points)
        .map(|i| {
            let x = i as f64 * step;
            EcdfRow {
                sensors,
                variable: variable.to_string(),
                x,
                empirical: empirical_cdf(sorted, x),
                exact: exact.map(|l| l.cdf(x)),
                asymptotic: asymptotic.map(|l| l.cdf(x)),
            }
        })
        .collect()
}

fn compare_one(config: &ScenarioConfig, ecdf_points: usize) -> Result<(CompareRow, Vec<EcdfRow>)> {
    let outcomes = montecarlo::run_trials(config)?;
    let stats: SummaryStats = montecarlo::summarize(&outcomes)?;
    let report = montecarlo::summary_report(config, &stats)?;
    let sensors = config.sensor_count()?;
    let distance = config.characteristic_distance()?;
    let single = config.ignition_count == 1;
    let circular = matches!(config.model, SpreadModel::Circular(_));

    let mut row = CompareRow {
        sensors,
        distance,
        trials: stats.n,
        mean_td: stats.mean_td,
        se_td: stats.se_td,
        var_td: stats.var_td,
        mean_ad: stats.mean_ad,
        se_ad: stats.se_ad,
        var_ad: stats.var_ad,
        se_var_td: stats.se_var_td,
        se_var_ad: stats.se_var_ad,
        theory_mean_td: None,
        theory_var_td: None,
        theory_mean_ad: None,
        theory_var_ad: None,
        exact_mean_ad: None,
        exact_var_ad: None,
        ks_td: report.ks_td,
        ks_ad: report.ks_ad,
    };

    let ecdf = match &config.placement {
        Placement::Grid { spacing } if single && circular => {
            let m = analytic::grid_moments(*spacing, config.model.rate())?;
            row.theory_mean_td = Some(m.mean_td);
            row.theory_var_td = Some(m.var_td);
            if !config.clip_to_region {
                let ad = analytic::grid_ad_law(*spacing)?;
                row.theory_mean_ad = ad.mean;
                row.theory_var_ad = ad.variance;
            }
            let law = analytic::grid_td_law(*spacing, config.model.rate())?;
            ecdf_table(
                sensors,
                "t_d",
                &stats.ecdf_td,
                Some(&law),
                None,
                ecdf_points,
            )
        }
        Placement::Random { count } => {
            let mut table = Vec::new();
            if single {
                let m = analytic::random_td_moments(&config.model, distance)?;
                row.theory_mean_td = Some(m.mean_td);
                row.theory_var_td = Some(m.var_td);
                let td = analytic::random_td_law(&config.model, distance)?;
                table = ecdf_table(sensors, "t_d", &stats.ecdf_td, None, Some(&td), ecdf_points);
            }
            let limit = analytic::random_ad_limit_law(distance)?;
            row.theory_mean_ad = limit.mean;
            row.theory_var_ad = limit.variance;
            let exact = if config.clip_to_region {
                let law = analytic::random_ad_exact_law(config.region.area(), *count)?;
                row.exact_mean_ad = law.mean;
                row.exact_var_ad = law.variance;
                Some(law)
            } else {
                None
            };
            table.extend(ecdf_table(
                sensors,
                "a_d",
                &stats.ecdf_ad,
                exact.as_ref(),
                Some(&limit),
                ecdf_points,
            ));
            table
        }
        _ => ecdf_table(sensors, "a_d", &stats.ecdf_ad, None, None, ecdf_points),
    };
    Ok((row, ecdf))
}

/// Single-scenario comparison, e.g. a grid layout against its exact laws.
pub fn compare_scenario(config: &ScenarioConfig, ecdf_points: usize) -> Result<Comparison> {
    let (row, ecdf) = compare_one(config, ecdf_points)?;
    Ok(Comparison {
        rows: vec![row],
        ecdf,
    })
}

/// Random placement at fixed characteristic distance `distance`, sweeping
/// the sensor count. Each row uses a square region of area `N D^2`; every
/// other setting comes from `template`.
pub fn compare_random_sweep(
    template: &ScenarioConfig,
    distance: f64,
    sensor_counts: &[usize],
    ecdf_points: usize,
) -> Result<Comparison> {
    require_positive("characteristic distance", distance)?;
    if sensor_counts.is_empty() {
        return Err(Error::Config("sensor sweep is empty".into()));
    }
    let mut out = Comparison {
        rows: Vec::new(),
        ecdf: Vec::new(),
    };
    for &n in sensor_counts {
        if n == 0 {
            return Err(Error::Config("sensor count must be >= 1".into()));
        }
        let config = ScenarioConfig {
            region: RectRegion::square_with_area(n as f64 * distance * distance)?,
            placement: Placement::Random { count: n },
            ..template.clone()
        };
        let (row, ecdf) = compare_one(&config, ecdf_points)?;
        out.rows.push(row);
        out.ecdf.extend(ecdf);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ() -> SpreadModel {
        SpreadModel::circular(1.0).unwrap()
    }

    #[test]
    fn random_area_target() {
        let p = plan(&PlanRequest {
            region_area: 1e4,
            model: circ(),
            target: PlanTarget::MeanBurnedArea(1.0),
            placement: PlacementKind::Random,
        })
        .unwrap();
        assert_eq!(p.distance, 1.0);
        assert_eq!(p.sensors, 10_000);
        assert!(!p.assumptions.is_empty());
    }

    #[test]
    fn grid_area_target() {
        let p = plan(&PlanRequest {
            region_area: 1e4,
            model: circ(),
            target: PlanTarget::MeanBurnedArea(PI / 6.0),
            placement: PlacementKind::Grid,
        })
        .unwrap();
        assert!((p.distance - 1.0).abs() < 1e-15);
        assert_eq!(p.sensors, 10_000);
    }

    #[test]
    fn random_time_target() {
        let p = plan(&PlanRequest {
            region_area: 400.0,
            model: circ(),
            target: PlanTarget::MeanDetectionTime(0.5),
            placement: PlacementKind::Random,
        })
        .unwrap();
        assert_eq!(p.distance, 1.0);
        assert_eq!(p.sensors, 400);

        let ell = SpreadModel::elliptical(1.0, 2.0, 2.0, 0.0).unwrap();
        let p = plan(&PlanRequest {
            region_area: 400.0,
            model: ell,
            target: PlanTarget::MeanDetectionTime(0.5),
            placement: PlacementKind::Random,
        })
        .unwrap();
        let m = analytic::random_td_moments(&ell, p.distance).unwrap();
        assert!((m.mean_td - 0.5).abs() < 1e-12);
    }

    #[test]
    fn grid_time_target_inverts_grid_mean() {
        let p = plan(&PlanRequest {
            region_area: 100.0,
            model: SpreadModel::circular(0.5).unwrap(),
            target: PlanTarget::MeanDetectionTime(3.0),
            placement: PlacementKind::Grid,
        })
        .unwrap();
        let m = analytic::grid_moments(p.distance, 0.5).unwrap();
        assert!((m.mean_td - 3.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_targets() {
        for target in [
            PlanTarget::MeanBurnedArea(0.0),
            PlanTarget::MeanDetectionTime(-1.0),
        ] {
            let r = plan(&PlanRequest {
                region_area: 100.0,
                model: circ(),
                target,
                placement: PlacementKind::Random,
            });
            assert!(matches!(r, Err(Error::Parameter(_))));
        }
        let r = plan(&PlanRequest {
            region_area: 100.0,
            model: SpreadModel::elliptical(1.0, 2.0, 2.0, 0.0).unwrap(),
            target: PlanTarget::MeanBurnedArea(1.0),
            placement: PlacementKind::Grid,
        });
        assert!(r.is_err());
    }

    #[test]
    fn plan_json_shape() {
        let p = PlanResult {
            distance: 1.0,
            sensors: 4,
            assumptions: vec!["x".into()],
        };
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["D"], 1.0);
        assert_eq!(v["N"], 4);
        assert_eq!(v["assumptions"][0], "x");
    }
}
