//! Closed-form detection laws.
//!
//! Regular grid (spacing `D`, circular spread at rate `R`): the nearest
//! sensor sits at the corner of a `D/2 x D/2` quarter cell and the ignition
//! is uniform in that cell, so `P(T_d <= x)` is the fraction of the quarter
//! cell within distance `Rx` of the corner.
//!
//! Uniform random placement (`N` sensors in area `A`): the fire is still
//! undetected while its burned set holds no sensor, giving the exact
//! `P(A_d > x) = (1 - x/A)^N`. With `A = N D^2` this tends to `exp(-x/D^2)`
//! for any spread law and any number of ignitions, and composing with the
//! burned-area law `F` gives `P(T_d > t) ~ exp(-F(t)/D^2)`.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{require_nonnegative, require_positive, Error, Result};
use crate::propagation::{burned_area, SpreadModel};
use crate::quadrature;

/// How out-of-range arguments are treated by laws with bounded support.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMode {
    /// Return a domain error.
    #[default]
    Strict,
    /// Clamp to the nearest valid value of the law.
    Clamp,
}

type SurvivalFn = dyn Fn(f64) -> f64 + Send + Sync;

/// An evaluable survival function `S(x) = P(X > x)` with whatever moments
/// are known in closed form.
#[derive(Clone)]
pub struct AnalyticLaw {
    name: String,
    survival: Arc<SurvivalFn>,
    pub mean: Option<f64>,
    pub second_moment: Option<f64>,
    pub variance: Option<f64>,
    pub support_upper: Option<f64>,
    /// Points where `S` is not smooth; quadrature splits panels there.
    pub breakpoints: Vec<f64>,
}

impl fmt::Debug for AnalyticLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticLaw")
            .field("name", &self.name)
            .field("mean", &self.mean)
            .field("second_moment", &self.second_moment)
            .field("variance", &self.variance)
            .field("support_upper", &self.support_upper)
            .finish()
    }
}

impl AnalyticLaw {
    pub fn new(
        name: impl Into<String>,
        survival: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        AnalyticLaw {
            name: name.into(),
            survival: Arc::new(survival),
            mean: None,
            second_moment: None,
            variance: None,
            support_upper: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_moments(mut self, mean: f64, second_moment: f64) -> Self {
        self.mean = Some(mean);
        self.second_moment = Some(second_moment);
        self.variance = Some(second_moment - mean * mean);
        self
    }

    pub fn with_support_upper(mut self, upper: f64) -> Self {
        self.support_upper = Some(upper);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `S(x)`; arguments below zero give 1.
    pub fn survival(&self, x: f64) -> f64 {
        if x < 0.0 {
            1.0
        } else {
            (self.survival)(x)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        1.0 - self.survival(x)
    }

    /// `(E[X], E[X^2])` by integrating `S(x)` and `2 x S(x)` numerically.
    pub fn quadrature_moments(&self, tol: f64) -> (f64, f64) {
        let upper = self.support_upper.unwrap_or_else(|| self.tail_cutoff());
        let mut breaks = vec![0.0];
        breaks.extend(
            self.breakpoints
                .iter()
                .copied()
                .filter(|&b| b > 0.0 && b < upper),
        );
        breaks.push(upper);
        let mean = quadrature::integrate_pieces(|x| self.survival(x), &breaks, tol);
        let second = quadrature::integrate_pieces(|x| 2.0 * x * self.survival(x), &breaks, tol);
        (mean, second)
    }

    fn tail_cutoff(&self) -> f64 {
        let mut upper = self.mean.unwrap_or(1.0).max(f64::MIN_POSITIVE);
        while self.survival(upper) > 1e-20 {
            upper *= 2.0;
        }
        upper
    }
}

/// `P(T_d <= x)` for a square grid of spacing `spacing` and circular spread
/// at `rate`.
pub fn grid_td_cdf(x: f64, spacing: f64, rate: f64) -> Result<f64> {
    require_positive("grid spacing", spacing)?;
    require_positive("rate of spread", rate)?;
    require_nonnegative("detection time", x)?;
    Ok(quarter_cell_fraction(rate * x / (spacing / 2.0)))
}

/// Fraction of the unit square within distance `u` of one corner.
fn quarter_cell_fraction(u: f64) -> f64 {
    if u <= 1.0 {
        FRAC_PI_4 * u * u
    } else if u < SQRT_2 {
        let w = (u * u - 1.0).sqrt();
        ((FRAC_PI_4 - w.atan()) * u * u + w).min(1.0)
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMoments {
    pub mean_td: f64,
    pub second_moment_td: f64,
    pub var_td: f64,
    pub mean_ad: f64,
}

/// Mean distance from a corner of the unit square to a uniform point.
fn corner_mean_distance() -> f64 {
    (SQRT_2 + (1.0 + SQRT_2).ln()) / 3.0
}

pub fn grid_moments(spacing: f64, rate: f64) -> Result<GridMoments> {
    require_positive("grid spacing", spacing)?;
    require_positive("rate of spread", rate)?;
    let scale = spacing / rate;
    let mean_td = corner_mean_distance() / 2.0 * scale;
    let second_moment_td = scale * scale / 6.0;
    let c = SQRT_2 + (1.0 + SQRT_2).ln();
    Ok(GridMoments {
        mean_td,
        second_moment_td,
        var_td: (6.0 - c * c) / 36.0 * scale * scale,
        mean_ad: PI / 6.0 * spacing * spacing,
    })
}

/// Detection-time law on a grid; `T_d <= D / (sqrt(2) R)` always.
pub fn grid_td_law(spacing: f64, rate: f64) -> Result<AnalyticLaw> {
    let m = grid_moments(spacing, rate)?;
    let half = spacing / (2.0 * rate);
    let law = AnalyticLaw::new("grid detection time", move |x| {
        1.0 - quarter_cell_fraction(x / half)
    })
    .with_moments(m.mean_td, m.second_moment_td)
    .with_support_upper(SQRT_2 * half);
    Ok(AnalyticLaw {
        breakpoints: vec![half],
        ..law
    })
}

/// Burned-area law on a grid under circular spread, `A_d = pi (R T_d)^2`.
/// It does not depend on the rate of spread.
pub fn grid_ad_law(spacing: f64) -> Result<AnalyticLaw> {
    require_positive("grid spacing", spacing)?;
    let half = spacing / 2.0;
    let mean = PI / 6.0 * spacing * spacing;
    // E[r^4] over the quarter cell is 28/45 (D/2)^4.
    let second = PI * PI * 28.0 / 45.0 * half.powi(4);
    let law = AnalyticLaw::new("grid burned area", move |a| {
        1.0 - quarter_cell_fraction((a / PI).sqrt() / half)
    })
    .with_moments(mean, second)
    .with_support_upper(PI * spacing * spacing / 2.0);
    Ok(AnalyticLaw {
        breakpoints: vec![PI * half * half],
        ..law
    })
}

/// Exact `P(A_d > x) = (1 - x/A)^N` for `N` uniform sensors in area `A`.
pub fn random_ad_survival_exact(x: f64, area: f64, n: usize, mode: RangeMode) -> Result<f64> {
    require_positive("region area", area)?;
    if n == 0 {
        return Err(Error::param("sensor count must be >= 1"));
    }
    if x.is_nan() {
        return Err(Error::domain("burned area is NaN"));
    }
    if !(0.0..=area).contains(&x) {
        return match mode {
            RangeMode::Strict => Err(Error::domain(format!(
                "burned area {x} outside [0, {area}]"
            ))),
            RangeMode::Clamp => Ok(if x < 0.0 { 1.0 } else { 0.0 }),
        };
    }
    Ok(exact_void_probability(x / area, n))
}

fn exact_void_probability(fraction: f64, n: usize) -> f64 {
    (n as f64 * (-fraction).ln_1p()).exp()
}

/// The exact finite-N burned-area law. `A_d / A` is Beta(1, N).
pub fn random_ad_exact_law(area: f64, n: usize) -> Result<AnalyticLaw> {
    require_positive("region area", area)?;
    if n == 0 {
        return Err(Error::param("sensor count must be >= 1"));
    }
    let nf = n as f64;
    let mean = area / (nf + 1.0);
    let second = 2.0 * area * area / ((nf + 1.0) * (nf + 2.0));
    Ok(AnalyticLaw::new("exact finite-N burned area", move |x| {
        if x >= area {
            0.0
        } else {
            exact_void_probability(x / area, n)
        }
    })
    .with_moments(mean, second)
    .with_support_upper(area))
}

/// Exponential limit `exp(-x / D^2)`.
pub fn random_ad_survival_limit(x: f64, distance: f64) -> Result<f64> {
    require_positive("characteristic distance", distance)?;
    require_nonnegative("burned area", x)?;
    Ok((-x / (distance * distance)).exp())
}

/// Exponential limit law with mean `D^2` and variance `D^4`.
pub fn random_ad_limit_law(distance: f64) -> Result<AnalyticLaw> {
    require_positive("characteristic distance", distance)?;
    let d2 = distance * distance;
    Ok(
        AnalyticLaw::new("exponential burned-area limit", move |x| (-x / d2).exp())
            .with_moments(d2, 2.0 * d2 * d2),
    )
}

/// Large-N detection-time survival `exp(-F(t) / D^2)`.
pub fn random_td_survival(t: f64, model: &SpreadModel, distance: f64) -> Result<f64> {
    require_positive("characteristic distance", distance)?;
    let f = burned_area(model, t)?;
    Ok((-f / (distance * distance)).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdMoments {
    pub mean_td: f64,
    pub second_moment_td: f64,
    pub var_td: f64,
}

/// Closed-form moments of the large-N detection-time law.
///
/// For circular spread `T_d` is Rayleigh-distributed. An elliptical fire
/// burns the same area as a circular fire observed at `t / k`, with
/// `k = 2 sqrt(LB) / (1 + 1/HB)`; substituting `t -> k t` scales the mean by
/// `k` and the second moment and variance by `k^2`.
pub fn random_td_moments(model: &SpreadModel, distance: f64) -> Result<TdMoments> {
    model.validate()?;
    require_positive("characteristic distance", distance)?;
    let k = model.time_scale();
    let ratio = distance / model.rate();
    Ok(TdMoments {
        mean_td: k * ratio / 2.0,
        second_moment_td: k * k * ratio * ratio / PI,
        var_td: k * k * (4.0 - PI) / (4.0 * PI) * ratio * ratio,
    })
}

pub fn random_td_law(model: &SpreadModel, distance: f64) -> Result<AnalyticLaw> {
    let m = random_td_moments(model, distance)?;
    let model = *model;
    Ok(AnalyticLaw::new("large-N detection time", move |t| {
        random_td_survival(t, &model, distance).unwrap_or(1.0)
    })
    .with_moments(m.mean_td, m.second_moment_td))
}
