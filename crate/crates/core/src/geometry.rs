//! Planar primitives: points, the protected rectangle, growing elliptical
//! fire fronts and the area of their union clipped to the region.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_nonnegative, require_positive, Error, Result};

/// A location in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned protected region `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRect")]
pub struct RectRegion {
    width: f64,
    height: f64,
}

#[derive(Deserialize)]
struct RawRect {
    width: f64,
    height: f64,
}

impl TryFrom<RawRect> for RectRegion {
    type Error = Error;

    fn try_from(raw: RawRect) -> Result<Self> {
        RectRegion::new(raw.width, raw.height)
    }
}

impl RectRegion {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        require_positive("region width", width)?;
        require_positive("region height", height)?;
        Ok(RectRegion { width, height })
    }

    /// Square region of the given area.
    pub fn square_with_area(area: f64) -> Result<Self> {
        require_positive("region area", area)?;
        let side = area.sqrt();
        RectRegion::new(side, side)
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    /// Boundary points count as inside.
    pub fn contains(&self, p: &Point) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }
}

/// Free-function form of [`RectRegion::contains`].
pub fn contains(region: &RectRegion, p: &Point) -> bool {
    region.contains(p)
}

/// A filled ellipse. `angle` is the direction of the semi-major axis, in
/// radians counter-clockwise from +x. A circle has equal semi-axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Point,
    pub semi_major: f64,
    pub semi_minor: f64,
    pub angle: f64,
}

impl Ellipse {
    pub fn circle(center: Point, radius: f64) -> Self {
        Ellipse {
            center,
            semi_major: radius,
            semi_minor: radius,
            angle: 0.0,
        }
    }

    pub fn area(&self) -> f64 {
        PI * self.semi_major * self.semi_minor
    }

    fn is_degenerate(&self) -> bool {
        !(self.semi_major > 0.0 && self.semi_minor > 0.0)
    }

    pub fn contains(&self, p: &Point) -> bool {
        if self.is_degenerate() {
            return false;
        }
        let (s, c) = self.angle.sin_cos();
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        let along = dx * c + dy * s;
        let across = -dx * s + dy * c;
        (along / self.semi_major).powi(2) + (across / self.semi_minor).powi(2) <= 1.0
    }

    /// Half of the vertical extent.
    pub fn half_height(&self) -> f64 {
        let (s, c) = self.angle.sin_cos();
        (self.semi_major * self.semi_major * s * s + self.semi_minor * self.semi_minor * c * c)
            .sqrt()
    }

    /// Horizontal chord `[x_lo, x_hi]` at height `y`, if the line meets the
    /// ellipse.
    pub fn chord_at(&self, y: f64) -> Option<(f64, f64)> {
        if self.is_degenerate() {
            return None;
        }
        let (s, c) = self.angle.sin_cos();
        let inv_a2 = 1.0 / (self.semi_major * self.semi_major);
        let inv_b2 = 1.0 / (self.semi_minor * self.semi_minor);
        let qa = c * c * inv_a2 + s * s * inv_b2;
        let qb = c * s * (inv_a2 - inv_b2);
        let dy = y - self.center.y;
        // AC - B^2 of the quadratic form is 1 / (a^2 b^2).
        let disc = qa - dy * dy * inv_a2 * inv_b2;
        if disc < 0.0 {
            return None;
        }
        let root = disc.sqrt();
        let mid = -qb * dy / qa;
        Some((
            self.center.x + mid - root / qa,
            self.center.x + mid + root / qa,
        ))
    }

    /// Vertical chord `[y_lo, y_hi]` at abscissa `x`.
    pub fn vertical_chord_at(&self, x: f64) -> Option<(f64, f64)> {
        // Reflect across y = x.
        let mirrored = Ellipse {
            center: Point::new(self.center.y, self.center.x),
            angle: std::f64::consts::FRAC_PI_2 - self.angle,
            ..*self
        };
        mirrored.chord_at(x)
    }
}

/// Per-unit-time geometry of a constant-rate elliptical front.
///
/// In the frame with the head along +x the front at time `t` is an ellipse
/// with semi-major `a t`, semi-minor `a t / LB`, centered `c t` ahead of the
/// ignition, where `a = R (1 + 1/HB) / 2` and `c = R (1 - 1/HB) / 2`. The head
/// then advances at `R` and the back at `R / HB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGrowth {
    rate: f64,
    semi_major: f64,
    offset: f64,
    length_to_breadth: f64,
    cos_heading: f64,
    sin_heading: f64,
    heading: f64,
}

impl EllipseGrowth {
    pub fn new(rate: f64, head_to_back: f64, length_to_breadth: f64, heading: f64) -> Result<Self> {
        require_positive("rate of spread", rate)?;
        if !(head_to_back.is_finite() && head_to_back >= 1.0) {
            return Err(Error::param(format!(
                "head-to-back ratio must be >= 1, got {head_to_back}"
            )));
        }
        if !(length_to_breadth.is_finite() && length_to_breadth >= 1.0) {
            return Err(Error::param(format!(
                "length-to-breadth ratio must be >= 1, got {length_to_breadth}"
            )));
        }
        if !heading.is_finite() {
            return Err(Error::param("heading must be finite"));
        }
        let (sin_heading, cos_heading) = heading.sin_cos();
        Ok(EllipseGrowth {
            rate,
            semi_major: rate * (1.0 + 1.0 / head_to_back) / 2.0,
            offset: rate * (1.0 - 1.0 / head_to_back) / 2.0,
            length_to_breadth,
            cos_heading,
            sin_heading,
            heading,
        })
    }

    /// Head rate of spread; no point of the front is farther from the
    /// ignition than `rate * t`.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Front at time `t` for a fire ignited at `ignition`.
    pub fn front(&self, ignition: Point, t: f64) -> Ellipse {
        Ellipse {
            center: Point::new(
                ignition.x + self.offset * t * self.cos_heading,
                ignition.y + self.offset * t * self.sin_heading,
            ),
            semi_major: self.semi_major * t,
            semi_minor: self.semi_major * t / self.length_to_breadth,
            angle: self.heading,
        }
    }

    /// First time the front reaches displacement `(dx, dy)` from the
    /// ignition. No validation; this is the inner loop of the simulator.
    #[inline]
    pub fn reach_time_from(&self, dx: f64, dy: f64) -> f64 {
        let u = dx * self.cos_heading + dy * self.sin_heading;
        let v = -dx * self.sin_heading + dy * self.cos_heading;
        let lbv = self.length_to_breadth * v;
        let q = u * u + lbv * lbv;
        if q == 0.0 {
            return 0.0;
        }
        // (a^2 - c^2) t^2 + 2 u c t - q = 0, taking the non-negative root in
        // whichever form avoids cancellation.
        let a = self.semi_major;
        let c = self.offset;
        let uc = u * c;
        let root = (uc * uc + (a * a - c * c) * q).sqrt();
        if uc >= 0.0 {
            q / (uc + root)
        } else {
            (root - uc) / ((a - c) * (a + c))
        }
    }

    pub fn reach_time(&self, ignition: &Point, target: &Point) -> f64 {
        self.reach_time_from(target.x - ignition.x, target.y - ignition.y)
    }
}

/// Time at which a constant-rate elliptical front ignited at `ignition`
/// first reaches `target`.
pub fn ellipse_reach_time(
    rate: f64,
    head_to_back: f64,
    length_to_breadth: f64,
    heading: f64,
    ignition: &Point,
    target: &Point,
) -> Result<f64> {
    let growth = EllipseGrowth::new(rate, head_to_back, length_to_breadth, heading)?;
    if !ignition.is_finite() || !target.is_finite() {
        return Err(Error::param("points must have finite coordinates"));
    }
    Ok(growth.reach_time(ignition, target))
}

/// Default relative tolerance for union-area integration.
pub const DEFAULT_AREA_TOL: f64 = 1e-3;

/// Area of the union of `fronts` intersected with `region`.
pub fn burned_union_area(fronts: &[Ellipse], region: &RectRegion, tol: f64) -> Result<f64> {
    union_area(fronts, Some(region), tol)
}

/// Area of the union of `fronts`, optionally clipped to `clip`.
///
/// The union is integrated as horizontal scanlines: each chord length is
/// exact, and the vertical integral uses a cosine-graded midpoint rule on
/// every span between consecutive front extremities and clip edges, which
/// absorbs the square-root behaviour at the top and bottom of each ellipse.
/// The node count per span grows as `tol^-1/2`.
pub fn union_area(fronts: &[Ellipse], clip: Option<&RectRegion>, tol: f64) -> Result<f64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::param(format!("tolerance must be > 0, got {tol}")));
    }
    for f in fronts {
        if !f.center.is_finite() {
            return Err(Error::param("front center must be finite"));
        }
        require_nonnegative("front semi-axis", f.semi_major)?;
        require_nonnegative("front semi-axis", f.semi_minor)?;
    }
    let live: Vec<&Ellipse> = fronts.iter().filter(|f| !f.is_degenerate()).collect();
    if live.is_empty() {
        return Ok(0.0);
    }

    let (x_lo, x_hi, y_lo, y_hi) = match clip {
        Some(r) => (0.0, r.width(), 0.0, r.height()),
        None => (
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
        ),
    };

    let mut breaks: Vec<f64> = Vec::with_capacity(2 * live.len() + 2);
    for f in &live {
        let h = f.half_height();
        breaks.push((f.center.y - h).clamp(y_lo, y_hi));
        breaks.push((f.center.y + h).clamp(y_lo, y_hi));
        // Where the front crosses a vertical clip edge the clipped chord
        // changes shape; splitting there keeps thin slivers well resolved.
        for x in [x_lo, x_hi] {
            if let Some((a, b)) = x.is_finite().then(|| f.vertical_chord_at(x)).flatten() {
                breaks.push(a.clamp(y_lo, y_hi));
                breaks.push(b.clamp(y_lo, y_hi));
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let nodes = ((2.5 / tol.sqrt()).ceil() as usize).max(24);
    let dtheta = PI / nodes as f64;
    let mut chords: Vec<(f64, f64)> = Vec::with_capacity(live.len());
    let mut area = 0.0;
    for span in breaks.windows(2) {
        let (lo, hi) = (span[0], span[1]);
        let half = 0.5 * (hi - lo);
        if half <= 0.0 {
            continue;
        }
        let mut span_sum = 0.0;
        for k in 0..nodes {
            let theta = (k as f64 + 0.5) * dtheta;
            let (s, c) = theta.sin_cos();
            let y = lo + half * (1.0 - c);
            chords.clear();
            chords.extend(live.iter().filter_map(|f| {
                f.chord_at(y)
                    .map(|(a, b)| (a.max(x_lo), b.min(x_hi)))
                    .filter(|(a, b)| b > a)
            }));
            span_sum += merged_length(&mut chords) * s;
        }
        area += span_sum * half * dtheta;
    }
    Ok(area)
}

fn merged_length(intervals: &mut [(f64, f64)]) -> f64 {
    match intervals.len() {
        0 => 0.0,
        1 => intervals[0].1 - intervals[0].0,
        _ => {
            intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut total = 0.0;
            let (mut start, mut end) = intervals[0];
            for &(a, b) in &intervals[1..] {
                if a > end {
                    total += end - start;
                    start = a;
                    end = b;
                } else if b > end {
                    end = b;
                }
            }
            total + (end - start)
        }
    }
}
