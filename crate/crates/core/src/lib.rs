//! Detection-time and burned-area statistics for wildfire-detecting sensor
//! networks.
//!
//! The crate is split along the lines of the problem:
//!
//! * [`geometry`]: points, the protected rectangle, elliptical fronts and
//!   union-area integration.
//! * [`propagation`]: constant-rate circular and elliptical spread models.
//! * [`placement`]: regular-grid and uniform-random sensor layouts.
//! * [`analytic`]: closed-form survival laws and moments.
//! * [`montecarlo`]: the seeded trial engine, summaries and KS distances.
//! * [`planning`]: sensor-count planning and simulation/theory comparison
//!   tables.

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod placement;
pub mod planning;
pub mod propagation;
pub mod quadrature;
pub mod rng;

pub use analytic::{AnalyticLaw, GridMoments, RangeMode, TdMoments};
pub use error::{Error, Result};
pub use geometry::{Ellipse, Point, RectRegion};
pub use montecarlo::{Placement, ScenarioConfig, SummaryStats, TrialOutcome};
pub use placement::SensorLayout;
pub use planning::{PlacementKind, PlanRequest, PlanResult, PlanTarget};
pub use propagation::{CircularModel, EllipticalModel, SpreadModel};
