//! Read-only spatial index over locations: type-filtered ring-overlap and
//! k-nearest queries on a uniform grid.
//!
//! The grid is bulk-built once and never mutated, so concurrent reads are
//! safe. Every query is definitionally equivalent to a linear scan with the
//! same predicate; the grid only prunes.

use std::collections::HashMap;

use thiserror::Error;

use crate::geometry::Annulus;
use crate::model::{ActivityType, Location, Point};

/// Default grid cell edge length in meters.
pub const DEFAULT_CELL_SIZE: f64 = 500.0;

#[derive(Debug, Error, PartialEq)]
pub enum IndexError {
    #[error("cannot index an empty location set")]
    EmptyUniverse,
    #[error("no location offers activity type '{0}'")]
    NoLocationOfType(ActivityType),
}

/// Grid index per activity type: member list (ascending id) plus cell
/// buckets keyed by integer cell coordinates.
#[derive(Debug)]
struct TypeIndex {
    /// Indices into the location slab, ascending by location id.
    members: Vec<usize>,
    cells: HashMap<(i64, i64), Vec<usize>>,
    /// Chebyshev extent of occupied cells, for bounding ring scans.
    cell_min: (i64, i64),
    cell_max: (i64, i64),
}

/// Immutable spatial index over a location universe.
#[derive(Debug)]
pub struct LocationIndex {
    locations: Vec<Location>,
    cell_size: f64,
    by_type: HashMap<ActivityType, TypeIndex>,
}

impl LocationIndex {
    /// Builds the index. Deterministic: same input, same structure.
    pub fn build(locations: Vec<Location>, cell_size: f64) -> Result<Self, IndexError> {
        assert!(cell_size > 0.0, "cell size must be positive");
        if locations.is_empty() {
            return Err(IndexError::EmptyUniverse);
        }
        let mut by_type: HashMap<ActivityType, TypeIndex> = HashMap::new();
        let mut order: Vec<usize> = (0..locations.len()).collect();
        order.sort_by_key(|&i| locations[i].id);
        for i in order {
            let cell = cell_of(&locations[i].position, cell_size);
            for ty in &locations[i].types {
                let entry = by_type.entry(ty.clone()).or_insert_with(|| TypeIndex {
                    members: Vec::new(),
                    cells: HashMap::new(),
                    cell_min: cell,
                    cell_max: cell,
                });
                entry.members.push(i);
                entry.cells.entry(cell).or_default().push(i);
                entry.cell_min = (entry.cell_min.0.min(cell.0), entry.cell_min.1.min(cell.1));
                entry.cell_max = (entry.cell_max.0.max(cell.0), entry.cell_max.1.max(cell.1));
            }
        }
        Ok(Self {
            locations,
            cell_size,
            by_type,
        })
    }

    pub fn with_default_cell_size(locations: Vec<Location>) -> Result<Self, IndexError> {
        Self::build(locations, DEFAULT_CELL_SIZE)
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    /// Activity types present in the universe, in no particular order.
    pub fn activity_types(&self) -> impl Iterator<Item = &ActivityType> {
        self.by_type.keys()
    }

    pub fn count_of_type(&self, ty: &ActivityType) -> usize {
        self.by_type.get(ty).map_or(0, |t| t.members.len())
    }

    /// All locations of `ty` inside both annuli (boundaries inclusive),
    /// ascending by id. Unknown types yield an empty list.
    pub fn query_ring_overlap(
        &self,
        ty: &ActivityType,
        a: &Annulus,
        b: &Annulus,
    ) -> Vec<&Location> {
        let Some(sub) = self.by_type.get(ty) else {
            return Vec::new();
        };
        let hits = |p: &Point| a.contains(p) && b.contains(p);

        // Sweep grid cells under the tighter annulus's bounding box; fall
        // back to scanning the member list when the box is unbounded or
        // covers more cells than the type has members.
        let tight = if a.r_max <= b.r_max { a } else { b };
        let mut out: Vec<usize> = Vec::new();
        if let Some(range) = cell_range(tight, self.cell_size, sub) {
            let ((x0, y0), (x1, y1)) = range;
            let cells_in_box = (x1 - x0 + 1) as u64 * (y1 - y0 + 1) as u64;
            if cells_in_box <= sub.members.len() as u64 + 1 {
                for gx in x0..=x1 {
                    for gy in y0..=y1 {
                        if let Some(bucket) = sub.cells.get(&(gx, gy)) {
                            out.extend(
                                bucket
                                    .iter()
                                    .filter(|&&i| hits(&self.locations[i].position)),
                            );
                        }
                    }
                }
                out.sort_by_key(|&i| self.locations[i].id);
                return out.iter().map(|&i| &self.locations[i]).collect();
            }
        }
        sub.members
            .iter()
            .filter(|&&i| hits(&self.locations[i].position))
            .map(|&i| &self.locations[i])
            .collect()
    }

    /// The `k` locations of `ty` nearest to `p`, sorted by distance then id.
    /// Returns the whole (sorted) type universe when it has fewer than `k`
    /// members.
    pub fn query_k_nearest(&self, ty: &ActivityType, p: &Point, k: usize) -> Vec<&Location> {
        assert!(k >= 1, "k must be at least 1");
        let Some(sub) = self.by_type.get(ty) else {
            return Vec::new();
        };
        let by_dist_then_id = |&(d, i): &(f64, usize), &(d2, j): &(f64, usize)| {
            d.total_cmp(&d2)
                .then(self.locations[i].id.cmp(&self.locations[j].id))
        };

        if k >= sub.members.len() {
            let mut all: Vec<(f64, usize)> = sub
                .members
                .iter()
                .map(|&i| (sq_dist(p, &self.locations[i].position), i))
                .collect();
            all.sort_by(by_dist_then_id);
            return all.into_iter().map(|(_, i)| &self.locations[i]).collect();
        }

        // Expanding ring scan around p's cell. Cells at Chebyshev ring m
        // hold points no closer than (m-1) * cell_size, so once the k-th
        // best distance beats r * cell_size nothing farther can matter.
        let (cx, cy) = cell_of(p, self.cell_size);
        let max_ring = chebyshev_extent((cx, cy), sub.cell_min, sub.cell_max);
        let mut found: Vec<(f64, usize)> = Vec::new();
        for ring in 0..=max_ring {
            for cell in ring_cells((cx, cy), ring) {
                if let Some(bucket) = sub.cells.get(&cell) {
                    found.extend(
                        bucket
                            .iter()
                            .map(|&i| (sq_dist(p, &self.locations[i].position), i)),
                    );
                }
            }
            if found.len() >= k {
                found.sort_by(by_dist_then_id);
                let kth = found[k - 1].0.sqrt();
                if (ring as f64) * self.cell_size > kth {
                    break;
                }
            }
        }
        found.sort_by(by_dist_then_id);
        found.truncate(k);
        found.into_iter().map(|(_, i)| &self.locations[i]).collect()
    }

    /// Ring-overlap query that grows both annuli (dividing `r_min`, flooring
    /// it to 0 once below a tenth of a cell, and multiplying `r_max`) until
    /// at least `min_count` locations are found or the expansion budget is
    /// spent. A query still empty after the budget falls back to the nearest
    /// neighbours of the midpoint between the two ring centers.
    pub fn query_ring_overlap_with_expansion(
        &self,
        ty: &ActivityType,
        a: &Annulus,
        b: &Annulus,
        min_count: usize,
        expansion_factor: f64,
        max_expansions: usize,
    ) -> Result<(Vec<&Location>, usize), IndexError> {
        assert!(min_count >= 1, "min_count must be at least 1");
        assert!(expansion_factor > 1.0, "expansion factor must exceed 1");
        let universe = self.count_of_type(ty);
        if universe == 0 {
            return Err(IndexError::NoLocationOfType(ty.clone()));
        }

        let mut ra = *a;
        let mut rb = *b;
        let mut used = 0usize;
        loop {
            let found = self.query_ring_overlap(ty, &ra, &rb);
            // The whole type universe can never grow further; stop early.
            if found.len() >= min_count || used >= max_expansions || found.len() == universe {
                if found.is_empty() {
                    let mid = a.center.midpoint(&b.center);
                    return Ok((self.query_k_nearest(ty, &mid, min_count), used));
                }
                return Ok((found, used));
            }
            ra = self.expand(&ra, expansion_factor);
            rb = self.expand(&rb, expansion_factor);
            used += 1;
        }
    }

    fn expand(&self, ring: &Annulus, factor: f64) -> Annulus {
        let mut r_min = ring.r_min / factor;
        if r_min < self.cell_size / 10.0 {
            r_min = 0.0;
        }
        Annulus::new(ring.center, r_min, ring.r_max * factor)
    }
}

fn cell_of(p: &Point, cell_size: f64) -> (i64, i64) {
    (
        (p.x / cell_size).floor() as i64,
        (p.y / cell_size).floor() as i64,
    )
}

fn sq_dist(a: &Point, b: &Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Cell coordinate range covered by the annulus's bounding box, clamped to
/// the occupied extent; `None` when unbounded.
fn cell_range(ring: &Annulus, cell_size: f64, sub: &TypeIndex) -> Option<((i64, i64), (i64, i64))> {
    if !ring.r_max.is_finite() {
        return None;
    }
    let lo = cell_of(
        &Point::new(ring.center.x - ring.r_max, ring.center.y - ring.r_max),
        cell_size,
    );
    let hi = cell_of(
        &Point::new(ring.center.x + ring.r_max, ring.center.y + ring.r_max),
        cell_size,
    );
    let x0 = lo.0.max(sub.cell_min.0);
    let y0 = lo.1.max(sub.cell_min.1);
    let x1 = hi.0.min(sub.cell_max.0);
    let y1 = hi.1.min(sub.cell_max.1);
    if x0 > x1 || y0 > y1 {
        // No occupied cell under the box; an empty range keeps the caller on
        // the (trivially correct) scan path with zero members to visit.
        return Some(((0, 0), (-1, 0)));
    }
    Some(((x0, y0), (x1, y1)))
}

fn chebyshev_extent(from: (i64, i64), min: (i64, i64), max: (i64, i64)) -> i64 {
    let dx = (from.0 - min.0).abs().max((max.0 - from.0).abs());
    let dy = (from.1 - min.1).abs().max((max.1 - from.1).abs());
    dx.max(dy)
}

/// Perimeter cells of the square ring at Chebyshev distance `ring`.
fn ring_cells(center: (i64, i64), ring: i64) -> Vec<(i64, i64)> {
    let (cx, cy) = center;
    if ring == 0 {
        return vec![center];
    }
    let mut cells = Vec::with_capacity((8 * ring) as usize);
    for gx in cx - ring..=cx + ring {
        cells.push((gx, cy - ring));
        cells.push((gx, cy + ring));
    }
    for gy in cy - ring + 1..=cy + ring - 1 {
        cells.push((cx - ring, gy));
        cells.push((cx + ring, gy));
    }
    cells
}
