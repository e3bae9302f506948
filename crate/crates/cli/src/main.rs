//! `firewatch`: evaluate detection laws, run simulations, compare the two,
//! and plan sensor counts.

mod args;
mod output;
mod scenario;

use std::process::ExitCode;

use clap::Parser;
use firewatch_core::analytic::{self, RangeMode};
use firewatch_core::montecarlo::{self, with_threads};
use firewatch_core::planning::{self, PlanRequest, PlanTarget};
use firewatch_core::Error;

use args::{AnalyticArgs, Cli, Command, CompareArgs, Format, LawKind, PlanArgs, SimulateArgs};
use output::{Sink, ValueRow};

#[derive(Debug)]
enum CliError {
    Core(Error),
    /// Unreadable or malformed input.
    Input(String),
    /// Failure writing results.
    Output(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Domain(_)) | CliError::Core(Error::Estimator(_)) => 3,
            CliError::Core(_) | CliError::Input(_) => 2,
            CliError::Output(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) | CliError::Output(m) => f.write_str(m),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let result = with_threads(threads, move || run(cli.command))
        .map_err(CliError::from)
        .and_then(|r| r);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("firewatch: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Analytic(a) => cmd_analytic(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Plan(a) => cmd_plan(a),
    }
}

fn cmd_analytic(a: AnalyticArgs) -> CliResult {
    let config = scenario::build(&a.scenario)?;
    let distance = match a.distance {
        Some(d) => d,
        None => config.characteristic_distance()?,
    };
    let mode = if a.clamp {
        RangeMode::Clamp
    } else {
        RangeMode::Strict
    };
    let rate = config.model.rate();
    let law = match a.law {
        LawKind::GridTd => analytic::grid_td_law(distance, rate)?,
        LawKind::GridAd => analytic::grid_ad_law(distance)?,
        LawKind::RandomAdExact => {
            analytic::random_ad_exact_law(config.region.area(), config.sensor_count()?)?
        }
        LawKind::RandomAdLimit => analytic::random_ad_limit_law(distance)?,
        LawKind::RandomTd => analytic::random_td_law(&config.model, distance)?,
    };
    let mut rows = Vec::with_capacity(a.at.len());
    for &x in &a.at {
        // Point evaluations go through the strict entry points so that
        // out-of-domain arguments surface as domain errors.
        let survival = match a.law {
            LawKind::GridTd => 1.0 - analytic::grid_td_cdf(x, distance, rate)?,
            LawKind::RandomAdExact => analytic::random_ad_survival_exact(
                x,
                config.region.area(),
                config.sensor_count()?,
                mode,
            )?,
            LawKind::RandomAdLimit => analytic::random_ad_survival_limit(x, distance)?,
            LawKind::RandomTd => analytic::random_td_survival(x, &config.model, distance)?,
            LawKind::GridAd => {
                if x < 0.0 || x.is_nan() {
                    return Err(Error::Domain(format!("burned area must be >= 0, got {x}")).into());
                }
                law.survival(x)
            }
        };
        rows.push(ValueRow {
            x,
            cdf: 1.0 - survival,
            survival,
        });
    }
    let sink = Sink::new(a.out.as_deref());
    match a.format {
        Format::Csv => sink.write_values_csv(&rows),
        Format::Json => sink.write_json(&output::law_json(&law, &rows)),
    }
}

fn cmd_simulate(a: SimulateArgs) -> CliResult {
    let config = scenario::build(&a.scenario)?;
    let outcomes = montecarlo::run_trials(&config)?;
    let sink = Sink::new(a.out.as_deref());
    match a.format {
        Format::Csv => sink.write_with(|w| montecarlo::write_outcomes_csv(&outcomes, w)),
        Format::Json => {
            let stats = montecarlo::summarize(&outcomes)?;
            let report = montecarlo::summary_report(&config, &stats)?;
            sink.write_json(&report)
        }
    }
}

fn cmd_compare(a: CompareArgs) -> CliResult {
    let config = scenario::build(&a.scenario)?;
    let comparison = match &a.sweep {
        Some(counts) => {
            let distance = a.distance.unwrap_or(1.0);
            planning::compare_random_sweep(&config, distance, counts, a.ecdf_points)?
        }
        None => planning::compare_scenario(&config, a.ecdf_points)?,
    };
    let sink = Sink::new(a.out.as_deref());
    match a.format {
        Format::Json => sink.write_json(&comparison),
        Format::Csv => {
            sink.write_with(|w| output::write_compare_rows_csv(&comparison.rows, w))?;
            if let Some(path) = &a.ecdf_out {
                Sink::new(Some(path))
                    .write_with(|w| output::write_ecdf_csv(&comparison.ecdf, w))?;
            }
            Ok(())
        }
    }
}

fn cmd_plan(a: PlanArgs) -> CliResult {
    let model = scenario::build_model(&a.model, None)?;
    let target = match (a.target_area, a.target_time) {
        (Some(x), None) => PlanTarget::MeanBurnedArea(x),
        (None, Some(t)) => PlanTarget::MeanDetectionTime(t),
        _ => {
            return Err(CliError::Input(
                "give exactly one of --target-area or --target-time".into(),
            ))
        }
    };
    let result = planning::plan(&PlanRequest {
        region_area: a.area,
        model,
        target,
        placement: a.placement.into(),
    })?;
    Sink::new(a.out.as_deref()).write_json(&result)
}
