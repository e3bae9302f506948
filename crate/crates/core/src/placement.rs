//! Sensor layouts and the characteristic distance between sensors.

use std::io::{self, Write};

use rand::Rng;

use crate::error::{require_positive, Error, Result};
use crate::geometry::{Point, RectRegion};
use crate::rng::{self, StreamRng};

/// Sensor positions together with the characteristic distance `D` they
/// were generated for.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorLayout {
    positions: Vec<Point>,
    characteristic_distance: f64,
}

impl SensorLayout {
    /// Layout from explicit positions, e.g. surveyed sensor sites.
    pub fn from_positions(
        region: &RectRegion,
        positions: Vec<Point>,
        characteristic_distance: f64,
    ) -> Result<Self> {
        require_positive("characteristic distance", characteristic_distance)?;
        if let Some(p) = positions.iter().find(|p| !region.contains(p)) {
            return Err(Error::param(format!(
                "sensor at ({}, {}) lies outside the region",
                p.x, p.y
            )));
        }
        Ok(SensorLayout {
            positions,
            characteristic_distance,
        })
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn characteristic_distance(&self) -> f64 {
        self.characteristic_distance
    }

    /// Writes the layout as CSV with header `x,y`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y")?;
        for p in &self.positions {
            writeln!(out, "{},{}", p.x, p.y)?;
        }
        out.flush()
    }
}

/// `D = sqrt(A / N)`.
pub fn characteristic_distance(area: f64, n: usize) -> Result<f64> {
    require_positive("area", area)?;
    if n == 0 {
        return Err(Error::param("sensor count must be >= 1"));
    }
    Ok((area / n as f64).sqrt())
}

fn lattice_steps(side: f64, spacing: f64, name: &str) -> Result<usize> {
    let steps = (side / spacing).round();
    if steps < 1.0 || (side - steps * spacing).abs() > 1e-9 * side {
        let remainder = side - (side / spacing).floor() * spacing;
        return Err(Error::param(format!(
            "region {name} {side} is not an integer multiple of spacing {spacing} (remainder {remainder})"
        )));
    }
    Ok(steps as usize)
}

/// Square lattice with spacing `D`, including sensors on every boundary edge
/// and at the four corners.
pub fn grid_layout(region: &RectRegion, spacing: f64) -> Result<SensorLayout> {
    require_positive("grid spacing", spacing)?;
    let nx = lattice_steps(region.width(), spacing, "width")?;
    let ny = lattice_steps(region.height(), spacing, "height")?;
    let mut positions = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        // Pin the last row/column to the boundary so rounding never pushes
        // a node outside.
        let y = if j == ny {
            region.height()
        } else {
            j as f64 * spacing
        };
        for i in 0..=nx {
            let x = if i == nx {
                region.width()
            } else {
                i as f64 * spacing
            };
            positions.push(Point::new(x, y));
        }
    }
    Ok(SensorLayout {
        positions,
        characteristic_distance: spacing,
    })
}

/// Uniform point in the region.
#[inline]
pub(crate) fn uniform_point(rng: &mut StreamRng, region: &RectRegion) -> Point {
    let x = rng.gen::<f64>() * region.width();
    let y = rng.gen::<f64>() * region.height();
    Point::new(x, y)
}

pub(crate) fn uniform_layout_from(
    rng: &mut StreamRng,
    region: &RectRegion,
    n: usize,
) -> Result<SensorLayout> {
    let d = characteristic_distance(region.area(), n)?;
    let positions = (0..n).map(|_| uniform_point(rng, region)).collect();
    Ok(SensorLayout {
        positions,
        characteristic_distance: d,
    })
}

/// `n` i.i.d. uniform sensors, reproducible from `seed`.
pub fn uniform_layout(region: &RectRegion, n: usize, seed: u64) -> Result<SensorLayout> {
    let mut rng = rng::substream(seed, rng::DEFAULT_STREAM);
    uniform_layout_from(&mut rng, region, n)
}
