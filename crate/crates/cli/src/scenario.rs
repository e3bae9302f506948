//! Scenario assembly: built-in defaults, then the JSON file, then flags.

use std::fs;

use firewatch_core::geometry::DEFAULT_AREA_TOL;
use firewatch_core::montecarlo::{Placement, ScenarioConfig};
use firewatch_core::{CircularModel, EllipticalModel, RectRegion, SpreadModel};
use serde::Deserialize;

use crate::args::{ModelArgs, ModelKind, ScenarioArgs};
use crate::CliError;

const DEFAULT_SIDE: f64 = 100.0;
const DEFAULT_SENSORS: usize = 10_000;
const DEFAULT_TRIALS: usize = 10_000;

/// Scenario file; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    region: Option<RectRegion>,
    placement: Option<Placement>,
    model: Option<SpreadModel>,
    ignition_count: Option<usize>,
    trials: Option<usize>,
    master_seed: Option<u64>,
    resample_layout_each_trial: Option<bool>,
    clip_to_region: Option<bool>,
    area_tol: Option<f64>,
}

fn parse_region(s: &str) -> Result<RectRegion, CliError> {
    let bad = || CliError::Input(format!("--region expects WIDTHxHEIGHT, got {s:?}"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: f64 = w.trim().parse().map_err(|_| bad())?;
    let h: f64 = h.trim().parse().map_err(|_| bad())?;
    Ok(RectRegion::new(w, h)?)
}

fn read_file(args: &ScenarioArgs) -> Result<ScenarioFile, CliError> {
    match &args.config {
        None => Ok(ScenarioFile::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad scenario file {}: {e}", path.display())))
        }
    }
}

/// Applies model flags on top of `base` (circular at 1 m/s when absent).
pub fn build_model(args: &ModelArgs, base: Option<SpreadModel>) -> Result<SpreadModel, CliError> {
    let base = base.unwrap_or(SpreadModel::Circular(CircularModel { rate: 1.0 }));
    let kind = args.model.unwrap_or(match base {
        SpreadModel::Circular(_) => ModelKind::Circular,
        SpreadModel::Elliptical(_) => ModelKind::Elliptical,
    });
    let rate = args.rate.unwrap_or(base.rate());
    let model = match kind {
        ModelKind::Circular => {
            if args.hb.is_some() || args.lb.is_some() || args.heading.is_some() {
                return Err(CliError::Input(
                    "--hb, --lb and --heading need --model elliptical".into(),
                ));
            }
            SpreadModel::Circular(CircularModel { rate })
        }
        ModelKind::Elliptical => {
            let (hb, lb, heading) = match base {
                SpreadModel::Elliptical(e) => (e.head_to_back, e.length_to_breadth, e.heading),
                SpreadModel::Circular(_) => (1.0, 1.0, 0.0),
            };
            SpreadModel::Elliptical(EllipticalModel {
                rate,
                head_to_back: args.hb.unwrap_or(hb),
                length_to_breadth: args.lb.unwrap_or(lb),
                heading: args.heading.unwrap_or(heading),
            })
        }
    };
    model.validate()?;
    Ok(model)
}

pub fn build(args: &ScenarioArgs) -> Result<ScenarioConfig, CliError> {
    let file = read_file(args)?;
    let region = match &args.region {
        Some(s) => parse_region(s)?,
        None => file
            .region
            .unwrap_or(RectRegion::new(DEFAULT_SIDE, DEFAULT_SIDE)?),
    };
    let placement = match (args.sensors, args.spacing) {
        (Some(count), _) => Placement::Random { count },
        (None, Some(spacing)) => Placement::Grid { spacing },
        (None, None) => file.placement.unwrap_or(Placement::Random {
            count: DEFAULT_SENSORS,
        }),
    };
    let random = matches!(placement, Placement::Random { .. });
    let clip = if args.clip {
        true
    } else if args.no_clip {
        false
    } else {
        file.clip_to_region.unwrap_or(random)
    };
    let resample = if args.fixed_layout {
        false
    } else {
        file.resample_layout_each_trial.unwrap_or(random)
    };
    let config = ScenarioConfig {
        region,
        placement,
        model: build_model(&args.model, file.model)?,
        ignition_count: args.ignitions.or(file.ignition_count).unwrap_or(1),
        trials: args.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
        master_seed: args.seed.or(file.master_seed).unwrap_or(0),
        resample_layout_each_trial: resample,
        clip_to_region: clip,
        area_tol: args.area_tol.or(file.area_tol).unwrap_or(DEFAULT_AREA_TOL),
    };
    config.validate()?;
    Ok(config)
}
