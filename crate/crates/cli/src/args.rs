use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use firewatch_core::planning::PlacementKind;

#[derive(Debug, Parser)]
#[command(
    name = "firewatch",
    version,
    about = "Detection time and burned area for wildfire sensor networks"
)]
pub struct Cli {
    /// Worker threads for simulations (0 = one per core). Results do not
    /// depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a closed-form law at given points.
    Analytic(AnalyticArgs),
    /// Run Monte Carlo trials and dump outcomes (csv) or a summary (json).
    Simulate(SimulateArgs),
    /// Tabulate simulated statistics next to their closed forms.
    Compare(CompareArgs),
    /// Characteristic distance and sensor count for a target statistic.
    Plan(PlanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Circular,
    Elliptical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlacementArg {
    Grid,
    Random,
}

impl From<PlacementArg> for PlacementKind {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Grid => PlacementKind::Grid,
            PlacementArg::Random => PlacementKind::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawKind {
    /// Grid detection-time law (x in seconds).
    GridTd,
    /// Grid burned-area law under circular spread (x in m^2).
    GridAd,
    /// Exact finite-N burned-area law for random placement (x in m^2).
    RandomAdExact,
    /// Exponential burned-area limit for random placement (x in m^2).
    RandomAdLimit,
    /// Large-N detection-time law for random placement (x in seconds).
    RandomTd,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Rate of spread at the head, m/s.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Head-to-back ratio (elliptical only).
    #[arg(long)]
    pub hb: Option<f64>,
    /// Length-to-breadth ratio (elliptical only).
    #[arg(long)]
    pub lb: Option<f64>,
    /// Direction of the head, radians from +x (elliptical only).
    #[arg(long)]
    pub heading: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Protected region as WIDTHxHEIGHT in meters.
    #[arg(long)]
    pub region: Option<String>,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of uniformly placed sensors.
    #[arg(long, conflicts_with = "spacing")]
    pub sensors: Option<usize>,
    /// Grid spacing in meters.
    #[arg(long)]
    pub spacing: Option<f64>,
    #[arg(long)]
    pub ignitions: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Keep one random layout for all trials instead of redrawing it.
    #[arg(long)]
    pub fixed_layout: bool,
    /// Measure burned area inside the region only.
    #[arg(long, conflicts_with = "no_clip")]
    pub clip: bool,
    #[arg(long)]
    pub no_clip: bool,
    /// Relative tolerance of burned-area integration.
    #[arg(long)]
    pub area_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long, value_enum)]
    pub law: LawKind,
    /// Comma-separated evaluation points.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub at: Vec<f64>,
    /// Characteristic distance; defaults to the scenario's.
    #[arg(long)]
    pub distance: Option<f64>,
    /// Clamp out-of-range burned areas instead of failing.
    #[arg(long)]
    pub clamp: bool,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Random-placement sweep over these sensor counts, each in a square of
    /// area N * D^2.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<usize>>,
    /// Characteristic distance for --sweep.
    #[arg(long)]
    pub distance: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub ecdf_points: usize,
    /// Where to write the ECDF table in csv mode.
    #[arg(long)]
    pub ecdf_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    /// Area of the protected region, m^2.
    #[arg(long)]
    pub area: f64,
    /// Largest acceptable mean burned area at detection, m^2.
    #[arg(long)]
    pub target_area: Option<f64>,
    /// Largest acceptable mean detection time, s.
    #[arg(long)]
    pub target_time: Option<f64>,
    #[arg(long, value_enum, default_value_t = PlacementArg::Random)]
    pub placement: PlacementArg,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
