//! Planar constructions the solver is built on: circle intersections
//! ("ideal points"), trip-distance deviation, and reachability annuli.
//!
//! Everything works on projected metric coordinates and is a pure function.

use thiserror::Error;

use crate::model::{Point, Segment};

/// Relative tolerance under which two circles count as tangent.
const TANGENCY_RTOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("invalid segment: {0}")]
    InvalidSegment(&'static str),
}

/// The ring of points reachable from `center` given a chain of trip
/// distances: no closer than `r_min`, no farther than `r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    pub center: Point,
    pub r_min: f64,
    pub r_max: f64,
}

impl Annulus {
    pub fn new(center: Point, r_min: f64, r_max: f64) -> Self {
        debug_assert!(0.0 <= r_min && r_min <= r_max);
        Self {
            center,
            r_min,
            r_max,
        }
    }

    /// Boundary-inclusive membership test.
    pub fn contains(&self, p: &Point) -> bool {
        let d2 = squared_distance(&self.center, p);
        self.r_min * self.r_min <= d2 && d2 <= self.r_max * self.r_max
    }

    /// How far `p` sits outside the ring, radially: 0 inside, otherwise the
    /// distance to the nearest ring boundary.
    pub fn radial_slack(&self, p: &Point) -> f64 {
        let d = self.center.distance(p);
        (self.r_min - d).max(0.0) + (d - self.r_max).max(0.0)
    }
}

fn squared_distance(a: &Point, b: &Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Where a single activity between two fixed endpoints would ideally sit.
///
/// Either the (one or two) intersection points of the trip-distance circles,
/// or — when the circles do not meet — a single fallback point minimizing the
/// total deviation, flagged `feasible: false`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoints {
    pub points: Vec<Point>,
    pub feasible: bool,
}

impl IdealPoints {
    fn feasible(points: Vec<Point>) -> Self {
        Self {
            points,
            feasible: true,
        }
    }

    fn fallback(point: Point) -> Self {
        Self {
            points: vec![point],
            feasible: false,
        }
    }
}

/// Intersects the circle around `s` with radius `d1` with the circle around
/// `e` with radius `d2`.
///
/// Non-intersecting configurations return the midpoint of the gap between
/// the circles — the stable center of the set of points minimizing
/// [`total_deviation_two_trip`]. Coincident centers use +x as the reference
/// direction.
pub fn circle_intersections(s: Point, d1: f64, e: Point, d2: f64) -> IdealPoints {
    debug_assert!(d1 >= 0.0 && d2 >= 0.0);
    let dist = s.distance(&e);
    let tol = TANGENCY_RTOL * f64::max(1.0, d1 + d2);

    if dist == 0.0 {
        // Coincident centers: concentric circles never cross. With equal
        // radii every point of the shared circle is ideal; pick +x.
        let radius = (d1 + d2) / 2.0;
        let p = Point::new(s.x + radius, s.y);
        return if (d1 - d2).abs() <= tol {
            IdealPoints::feasible(vec![p])
        } else {
            IdealPoints::fallback(p)
        };
    }

    let ux = (e.x - s.x) / dist;
    let uy = (e.y - s.y) / dist;
    let sum = d1 + d2;
    let diff = (d1 - d2).abs();

    if dist - sum > tol {
        // Separated: the minimizing set is the on-segment gap [d1, dist-d2];
        // take its midpoint.
        let r = d1 + (dist - sum) / 2.0;
        return IdealPoints::fallback(Point::new(s.x + r * ux, s.y + r * uy));
    }
    if diff - dist > tol {
        // One circle strictly inside the other: the gap lies on the line
        // through both centers, outside the inner circle.
        let r = if d1 >= d2 {
            (d1 + dist + d2) / 2.0 // beyond e, towards the big circle around s
        } else {
            (dist - sum) / 2.0 // behind s, towards the big circle around e
        };
        return IdealPoints::fallback(Point::new(s.x + r * ux, s.y + r * uy));
    }

    // Intersecting or tangent. Standard two-circle construction: the chord
    // crosses the center line at distance `a` from s.
    let a = (d1 * d1 - d2 * d2 + dist * dist) / (2.0 * dist);
    let base = Point::new(s.x + a * ux, s.y + a * uy);
    let tangent = (dist - sum).abs() <= tol || (dist - diff).abs() <= tol;
    if tangent {
        return IdealPoints::feasible(vec![base]);
    }
    let h = (d1 * d1 - a * a).max(0.0).sqrt();
    // Left normal first, then right: fixed order keeps callers deterministic.
    IdealPoints::feasible(vec![
        Point::new(base.x - h * uy, base.y + h * ux),
        Point::new(base.x + h * uy, base.y - h * ux),
    ])
}

/// Total distance deviation of placing the middle activity at `c` when the
/// observed trips say `d1` meters from `s` and `d2` meters to `e`.
pub fn total_deviation_two_trip(c: &Point, s: &Point, d1: f64, e: &Point, d2: f64) -> f64 {
    (d1 - s.distance(c)).abs() + (d2 - c.distance(e)).abs()
}

/// One-trip counterpart: deviation of realizing an observed distance `d`
/// between two known points.
pub fn single_trip_deviation(a: &Point, b: &Point, d: f64) -> f64 {
    (d - a.distance(b)).abs()
}

/// Radial reach of a chain of trips: the end of the chain lies at least
/// `r_min` and at most `r_max` meters from its start.
///
/// `r_max` is the fully stretched chain; `r_min` is what remains of the
/// longest leg after folding every other leg straight back against it.
pub fn reachability_annulus(trip_distances: &[f64]) -> Result<(f64, f64), GeometryError> {
    if trip_distances.is_empty() {
        return Err(GeometryError::InvalidSegment("empty trip list"));
    }
    debug_assert!(trip_distances.iter().all(|d| *d >= 0.0 && d.is_finite()));
    let sum: f64 = trip_distances.iter().sum();
    let max = trip_distances.iter().cloned().fold(0.0, f64::max);
    let r_min = (max - (sum - max)).max(0.0);
    Ok((r_min, sum))
}

/// Distance bounds for an anchor activity seen from both segment endpoints:
/// `(D1min, D1max)` over the trips start→anchor, `(D2min, D2max)` over the
/// trips anchor→end.
pub fn segment_ring_bounds(
    segment: &Segment,
    anchor_index: usize,
) -> Result<(f64, f64, f64, f64), GeometryError> {
    if anchor_index >= segment.inner_activities.len() {
        return Err(GeometryError::InvalidSegment("anchor index out of range"));
    }
    let distances = segment.trip_distances();
    let (d1_min, d1_max) = reachability_annulus(&distances[..=anchor_index])?;
    let (d2_min, d2_max) = reachability_annulus(&distances[anchor_index + 1..])?;
    Ok((d1_min, d1_max, d2_min, d2_max))
}

/// The two anchor rings of a segment as query-ready annuli around its
/// endpoints.
pub fn segment_ring_annuli(
    segment: &Segment,
    anchor_index: usize,
) -> Result<(Annulus, Annulus), GeometryError> {
    let (d1_min, d1_max, d2_min, d2_max) = segment_ring_bounds(segment, anchor_index)?;
    Ok((
        Annulus::new(segment.start, d1_min, d1_max),
        Annulus::new(segment.end, d2_min, d2_max),
    ))
}
