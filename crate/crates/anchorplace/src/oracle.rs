//! Independent reference implementations used to validate the solver:
//! exhaustive enumeration, polyline sampling, and a grid evaluation of the
//! deviation field.
//!
//! Nothing here reuses the solver's scoring code; the objective is written
//! out again from scratch so a shared bug cannot validate itself. Slow by
//! design.

use std::io::{self, Write};

use rand::Rng;
use thiserror::Error;

use crate::model::{Location, Point, Segment};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("brute force would enumerate {assignments:.3e} assignments (limit {limit:.1e})")]
    TooLarge { assignments: f64, limit: f64 },
    #[error("no type-compatible assignment exists for activity type '{0}'")]
    NoAssignment(String),
}

/// Assignment count above which [`brute_force_segment`] refuses to run.
pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

fn dist(a: &Point, b: &Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Objective value of one complete assignment, spelled out directly:
/// `alpha * sum(potential) - beta * sum(|observed - realized|)` over the
/// positions `start, placements..., end`.
fn assignment_score(segment: &Segment, placement: &[&Location], alpha: f64, beta: f64) -> f64 {
    let mut potential = 0.0;
    let mut deviation = 0.0;
    let mut previous = segment.start;
    for (trip, loc) in segment.trips.iter().zip(placement.iter()) {
        potential += loc.potential;
        deviation += (trip.distance - dist(&previous, &loc.position)).abs();
        previous = loc.position;
    }
    let last = segment.trips.last().expect("segment has at least one trip");
    deviation += (last.distance - dist(&previous, &segment.end)).abs();
    alpha * potential - beta * deviation
}

/// Exhaustively enumerates every type-compatible assignment of the segment's
/// inner activities to `locations` and returns the best one.
///
/// Ties resolve to the lexicographically smallest tuple of location ids.
/// Refuses instances beyond [`BRUTE_FORCE_LIMIT`] enumerations.
pub fn brute_force_segment(
    segment: &Segment,
    locations: &[Location],
    alpha: f64,
    beta: f64,
) -> Result<(Vec<Location>, f64), OracleError> {
    let n = segment.inner_activities.len();
    let assignments = (locations.len() as f64).powi(n as i32);
    if assignments > BRUTE_FORCE_LIMIT {
        return Err(OracleError::TooLarge {
            assignments,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }

    // Candidates per slot, ascending by id so the first maximum found is the
    // lexicographically smallest one.
    let mut slots: Vec<Vec<&Location>> = Vec::with_capacity(n);
    for activity in &segment.inner_activities {
        let mut compatible: Vec<&Location> = locations
            .iter()
            .filter(|l| l.supports(&activity.activity_type))
            .collect();
        compatible.sort_by_key(|l| l.id);
        if compatible.is_empty() {
            return Err(OracleError::NoAssignment(
                activity.activity_type.as_str().to_string(),
            ));
        }
        slots.push(compatible);
    }

    // Odometer enumeration, rightmost slot fastest: lexicographic order over
    // id tuples.
    let mut counters = vec![0usize; n];
    let mut current: Vec<&Location> = slots.iter().map(|s| s[0]).collect();
    let mut best: Option<(Vec<&Location>, f64)> = None;
    loop {
        let score = assignment_score(segment, &current, alpha, beta);
        match &best {
            Some((_, best_score)) if score <= *best_score => {}
            _ => best = Some((current.clone(), score)),
        }

        // advance
        let mut slot = n;
        loop {
            if slot == 0 {
                let (placement, score) = best.expect("at least one assignment evaluated");
                return Ok((placement.into_iter().cloned().collect(), score));
            }
            slot -= 1;
            counters[slot] += 1;
            if counters[slot] < slots[slot].len() {
                current[slot] = slots[slot][counters[slot]];
                break;
            }
            counters[slot] = 0;
            current[slot] = slots[slot][0];
        }
    }
}

/// Builds `samples` random polylines with the given leg lengths (joint
/// angles uniform over the full circle) and returns their end-to-end
/// distances.
pub fn sample_polyline_endpoints(
    trip_distances: &[f64],
    samples: usize,
    rng: &mut impl Rng,
) -> Vec<f64> {
    assert!(samples >= 1, "at least one sample required");
    (0..samples)
        .map(|_| {
            let mut x = 0.0f64;
            let mut y = 0.0f64;
            for d in trip_distances {
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                x += d * angle.cos();
                y += d * angle.sin();
            }
            x.hypot(y)
        })
        .collect()
}

/// One evaluated cell of the deviation field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCell {
    pub x: f64,
    pub y: f64,
    pub deviation: f64,
}

/// Evaluates `|d1 - ||S-c||| + |d2 - ||c-E|||` on a regular grid over `bbox`
/// (corners inclusive), row by row.
pub fn deviation_field(
    s: &Point,
    d1: f64,
    e: &Point,
    d2: f64,
    bbox: (Point, Point),
    resolution: f64,
) -> Vec<FieldCell> {
    assert!(resolution > 0.0, "resolution must be positive");
    let (lo, hi) = bbox;
    let nx = ((hi.x - lo.x) / resolution).floor() as usize + 1;
    let ny = ((hi.y - lo.y) / resolution).floor() as usize + 1;
    let mut cells = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let y = lo.y + iy as f64 * resolution;
        for ix in 0..nx {
            let x = lo.x + ix as f64 * resolution;
            let c = Point::new(x, y);
            let deviation = (d1 - dist(s, &c)).abs() + (d2 - dist(&c, e)).abs();
            cells.push(FieldCell { x, y, deviation });
        }
    }
    cells
}

/// Grid minimizer of the deviation field: the cheapest cell (first hit wins
/// on exact ties, scan order is row-major from the bbox corner).
pub fn grid_min_deviation(
    s: &Point,
    d1: f64,
    e: &Point,
    d2: f64,
    bbox: (Point, Point),
    resolution: f64,
) -> (Point, f64) {
    let cells = deviation_field(s, d1, e, d2, bbox, resolution);
    let best = cells
        .iter()
        .min_by(|a, b| a.deviation.total_cmp(&b.deviation))
        .expect("grid has at least one cell");
    (Point::new(best.x, best.y), best.deviation)
}

/// Writes the deviation field as `x,y,deviation` CSV rows for external
/// plotting.
pub fn write_deviation_field_csv<W: Write>(
    out: &mut W,
    s: &Point,
    d1: f64,
    e: &Point,
    d2: f64,
    bbox: (Point, Point),
    resolution: f64,
) -> io::Result<()> {
    writeln!(out, "x,y,deviation")?;
    for cell in deviation_field(s, d1, e, d2, bbox, resolution) {
        writeln!(out, "{},{},{}", cell.x, cell.y, cell.deviation)?;
    }
    Ok(())
}
