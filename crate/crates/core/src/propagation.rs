//! Constant-rate fire spread models.
//!
//! Both models expose the total burned area `F(t)` and the first time the
//! front reaches a given point.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_nonnegative, require_positive, Error, Result};
use crate::geometry::{Ellipse, EllipseGrowth, Point};

/// Spread at rate `rate` in every direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularModel {
    pub rate: f64,
}

/// Elliptical spread with the head advancing at `rate` along `heading`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticalModel {
    pub rate: f64,
    pub head_to_back: f64,
    pub length_to_breadth: f64,
    #[serde(default)]
    pub heading: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpreadModel {
    Circular(CircularModel),
    Elliptical(EllipticalModel),
}

impl SpreadModel {
    pub fn circular(rate: f64) -> Result<Self> {
        let m = SpreadModel::Circular(CircularModel { rate });
        m.validate()?;
        Ok(m)
    }

    pub fn elliptical(
        rate: f64,
        head_to_back: f64,
        length_to_breadth: f64,
        heading: f64,
    ) -> Result<Self> {
        let m = SpreadModel::Elliptical(EllipticalModel {
            rate,
            head_to_back,
            length_to_breadth,
            heading,
        });
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpreadModel::Circular(c) => require_positive("rate of spread", c.rate),
            SpreadModel::Elliptical(_) => self.growth().map(|_| ()),
        }
    }

    /// Head rate of spread.
    pub fn rate(&self) -> f64 {
        match self {
            SpreadModel::Circular(c) => c.rate,
            SpreadModel::Elliptical(e) => e.rate,
        }
    }

    /// `F(t) / t^2`.
    fn area_coefficient(&self) -> f64 {
        match self {
            SpreadModel::Circular(c) => PI * c.rate * c.rate,
            SpreadModel::Elliptical(e) => {
                let head_back = 1.0 + 1.0 / e.head_to_back;
                PI * e.rate * e.rate * head_back * head_back / (4.0 * e.length_to_breadth)
            }
        }
    }

    /// Time-scaling factor relative to a circular fire with the same head
    /// rate: `2 sqrt(LB) / (1 + 1/HB)`, and exactly 1 for circular spread.
    pub fn time_scale(&self) -> f64 {
        match self {
            SpreadModel::Circular(_) => 1.0,
            SpreadModel::Elliptical(e) => {
                2.0 * e.length_to_breadth.sqrt() / (1.0 + 1.0 / e.head_to_back)
            }
        }
    }

    /// Geometry of the elliptical front; circles are the `HB = LB = 1` case.
    pub fn growth(&self) -> Result<EllipseGrowth> {
        match self {
            SpreadModel::Circular(c) => EllipseGrowth::new(c.rate, 1.0, 1.0, 0.0),
            SpreadModel::Elliptical(e) => {
                EllipseGrowth::new(e.rate, e.head_to_back, e.length_to_breadth, e.heading)
            }
        }
    }

    /// Burned set at time `t` for a fire ignited at `ignition`.
    pub fn front(&self, ignition: Point, t: f64) -> Result<Ellipse> {
        require_nonnegative("time", t)?;
        Ok(self.growth()?.front(ignition, t))
    }
}

/// Total burned area at time `t`.
pub fn burned_area(model: &SpreadModel, t: f64) -> Result<f64> {
    model.validate()?;
    require_nonnegative("time", t)?;
    Ok(model.area_coefficient() * t * t)
}

/// Time at which the burned area reaches `area`.
pub fn inverse_burned_area(model: &SpreadModel, area: f64) -> Result<f64> {
    model.validate()?;
    require_nonnegative("area", area)?;
    Ok((area / model.area_coefficient()).sqrt())
}

/// First time the front ignited at `ignition` reaches `target`.
pub fn reach_time(model: &SpreadModel, ignition: &Point, target: &Point) -> Result<f64> {
    model.validate()?;
    if !ignition.is_finite() || !target.is_finite() {
        return Err(Error::param("points must have finite coordinates"));
    }
    Ok(match model {
        SpreadModel::Circular(c) => ignition.distance(target) / c.rate,
        SpreadModel::Elliptical(_) => model.growth()?.reach_time(ignition, target),
    })
}

/// A front ignited at `ignition`, observed at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Front {
    pub ignition: Point,
    pub model: SpreadModel,
    pub t: f64,
}

impl Front {
    pub fn shape(&self) -> Result<Ellipse> {
        self.model.front(self.ignition, self.t)
    }
}
