//! Core domain types: points, locations, trips, activities, chains and the
//! solver configuration.
//!
//! A person's day is a *chain* of activities connected by trips with observed
//! distances. Some activities are pinned to known coordinates (`Fixed`),
//! the rest must be assigned to locations (`Unplaced`). Between every pair of
//! consecutive fixed activities lies an independently solvable [`Segment`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A position in a projected, metric coordinate system (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "coordinates must be finite");
        Self { x, y }
    }

    /// Euclidean distance to `other` in meters.
    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Case-sensitive tag naming what can be done somewhere ("shop", "work", ...).
///
/// Cheap to clone; the name is shared, not copied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActivityType(Arc<str>);

impl ActivityType {
    pub fn new(name: impl AsRef<str>) -> Self {
        let name = name.as_ref();
        assert!(!name.is_empty(), "activity type name must be non-empty");
        Self(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ActivityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Identifier of a location, unique within one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocationId(pub u64);

impl fmt::Display for LocationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A discrete opportunity: somewhere an activity can take place.
///
/// `potential` is a non-negative attractiveness weight (e.g. floor area or
/// an inferred visitor volume); higher is better, 0 means "exists but carries
/// no weight".
#[derive(Debug, Clone, PartialEq)]
pub struct Location {
    pub id: LocationId,
    pub position: Point,
    pub types: BTreeSet<ActivityType>,
    pub potential: f64,
}

impl Location {
    pub fn new(
        id: u64,
        position: Point,
        types: impl IntoIterator<Item = ActivityType>,
        potential: f64,
    ) -> Self {
        debug_assert!(potential.is_finite() && potential >= 0.0);
        Self {
            id: LocationId(id),
            position,
            types: types.into_iter().collect(),
            potential,
        }
    }

    pub fn supports(&self, activity_type: &ActivityType) -> bool {
        self.types.contains(activity_type)
    }
}

/// One observed trip: the reported distance between two consecutive
/// activities. The mode tag is carried through untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct Trip {
    pub index_in_chain: usize,
    /// Observed (reported) trip distance in meters; finite and >= 0.
    pub distance: f64,
    pub mode: Option<String>,
}

impl Trip {
    pub fn new(index_in_chain: usize, distance: f64) -> Self {
        debug_assert!(distance.is_finite() && distance >= 0.0);
        Self {
            index_in_chain,
            distance,
            mode: None,
        }
    }

    pub fn with_mode(mut self, mode: impl Into<String>) -> Self {
        self.mode = Some(mode.into());
        self
    }
}

/// Whether an activity already has coordinates or still needs a location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    Fixed(Point),
    Unplaced,
}

/// One activity in a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Activity {
    pub index_in_chain: usize,
    pub activity_type: ActivityType,
    pub placement: Placement,
}

impl Activity {
    pub fn fixed(index_in_chain: usize, activity_type: ActivityType, at: Point) -> Self {
        Self {
            index_in_chain,
            activity_type,
            placement: Placement::Fixed(at),
        }
    }

    pub fn unplaced(index_in_chain: usize, activity_type: ActivityType) -> Self {
        Self {
            index_in_chain,
            activity_type,
            placement: Placement::Unplaced,
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self.placement, Placement::Fixed(_))
    }
}

/// A maximal run of unplaced activities between two fixed endpoints.
///
/// Invariant: `trips.len() == inner_activities.len() + 1` and
/// `trips.len() >= 1`; all inner activities are unplaced.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
    pub trips: Vec<Trip>,
    pub inner_activities: Vec<Activity>,
}

impl Segment {
    pub fn new(
        start: Point,
        end: Point,
        trips: Vec<Trip>,
        inner_activities: Vec<Activity>,
    ) -> Self {
        debug_assert_eq!(trips.len(), inner_activities.len() + 1);
        debug_assert!(inner_activities.iter().all(|a| !a.is_fixed()));
        Self {
            start,
            end,
            trips,
            inner_activities,
        }
    }

    /// Number of activities that still need a location.
    pub fn unplaced_count(&self) -> usize {
        self.inner_activities.len()
    }

    pub fn trip_distances(&self) -> Vec<f64> {
        self.trips.iter().map(|t| t.distance).collect()
    }
}

/// How the pivot activity of a segment is picked before recursing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorStrategy {
    /// Index `(n - 1) / 2` among the unplaced activities: the middle one,
    /// rounded down, so both halves stay balanced.
    LowerMiddle,
}

/// How a scored candidate set is thinned before branching.
///
/// The number of survivors is always decided by the caller; the spatial
/// variants additionally carry the grid resolution used to spread survivors
/// over the candidate bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionStrategy {
    /// Keep every candidate.
    KeepAll,
    /// Keep the highest scores, ties broken by ascending location id.
    TopK,
    /// Weighted sampling without replacement, weights shifted so the worst
    /// candidate still has a tiny positive chance.
    MonteCarlo,
    /// Half deterministic best, half sampled from the remainder.
    TopKMonteCarlo,
    /// Best candidate per occupied cell of a grid over the candidate
    /// bounding box, cycling to next-best once every cell contributed.
    SpatialDownsampling { grid_cells_per_axis: usize },
    /// Half deterministic best, half spatially spread from the remainder.
    TopKSpatialDownsampling { grid_cells_per_axis: usize },
}

/// All knobs of the placement algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Weight of location potential in the score.
    pub alpha: f64,
    /// Weight of distance deviation in the score.
    pub beta: f64,
    /// Branches explored per recursion step.
    pub number_of_branches: usize,
    /// Minimum candidate count the ring query must deliver before the
    /// recursion accepts it (rings grow until this is met).
    pub min_candidates_complex_case: usize,
    /// Nearest neighbours fetched around each ideal point when exactly one
    /// activity sits between two fixed endpoints.
    pub candidates_two_trip_case: usize,
    pub anchor_strategy: AnchorStrategy,
    pub selection_strategy_complex_case: SelectionStrategy,
    pub selection_strategy_two_trip_case: SelectionStrategy,
    /// Multiplicative ring growth per expansion step; > 1.
    pub expansion_factor: f64,
    /// Expansion steps before falling back to nearest neighbours.
    pub max_expansions: usize,
    /// Master seed; per-person generators are derived from it.
    pub master_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            number_of_branches: 50,
            min_candidates_complex_case: 10,
            candidates_two_trip_case: 20,
            anchor_strategy: AnchorStrategy::LowerMiddle,
            selection_strategy_complex_case: SelectionStrategy::TopKMonteCarlo,
            selection_strategy_two_trip_case: SelectionStrategy::TopK,
            expansion_factor: 1.5,
            max_expansions: 20,
            master_seed: 0,
        }
    }
}

/// A candidate location together with its evaluation.
///
/// Invariant: `score == alpha * potential - beta * deviation` for the
/// config it was evaluated under.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCandidate {
    pub location: Location,
    /// Distance deviation attributed to this candidate, meters.
    pub deviation: f64,
    pub score: f64,
}

/// A fully solved segment: one location per inner activity.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedSegment {
    pub segment: Segment,
    /// One location per inner activity, in chain order.
    pub placements: Vec<Location>,
    /// Sum of placement scores: `alpha * sum(potential) - beta * total_deviation`.
    pub total_score: f64,
    /// Sum of per-trip distance deviations covered by the score, meters.
    pub total_deviation: f64,
}

/// One person's chain before solving.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonPlan {
    pub person_id: String,
    pub activities: Vec<Activity>,
    pub trips: Vec<Trip>,
}

/// An activity after solving: always has coordinates, and points at the
/// assigned location if the solver chose one (fixed activities keep `None`).
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedActivity {
    pub index_in_chain: usize,
    pub activity_type: ActivityType,
    pub position: Point,
    pub location_id: Option<LocationId>,
}

/// A trip after solving: the reported distance next to the distance actually
/// realized between the chosen coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedTrip {
    pub index_in_chain: usize,
    pub observed_distance: f64,
    pub modeled_distance: f64,
}

impl PlacedTrip {
    /// `|observed - modeled|` in meters.
    pub fn deviation(&self) -> f64 {
        (self.observed_distance - self.modeled_distance).abs()
    }
}

/// One person's chain after solving.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedPlan {
    pub person_id: String,
    pub activities: Vec<PlacedActivity>,
    pub trips: Vec<PlacedTrip>,
    /// Sum of segment scores.
    pub total_score: f64,
    /// Sum of `|observed - modeled|` over all trips, meters.
    pub total_deviation: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid plan for {person_id}: {reason}")]
    InvalidPlan { person_id: String, reason: String },
}

/// Splits a chain into independently solvable segments, one per run of
/// unplaced activities between two fixed activities.
///
/// Adjacent fixed activities yield a segment with a single trip and nothing
/// to place. Fails when the chain does not start and end fixed, has no trip,
/// or trip and activity counts disagree.
pub fn split_into_segments(plan: &PersonPlan) -> Result<Vec<Segment>, ModelError> {
    let invalid = |reason: &str| ModelError::InvalidPlan {
        person_id: plan.person_id.clone(),
        reason: reason.to_string(),
    };

    if plan.activities.len() < 2 {
        return Err(invalid("a plan needs at least two activities"));
    }
    if plan.trips.len() != plan.activities.len() - 1 {
        return Err(invalid(
            "expected exactly one trip between consecutive activities",
        ));
    }
    let first_fixed = plan
        .activities
        .first()
        .map(Activity::is_fixed)
        .unwrap_or(false);
    let last_fixed = plan
        .activities
        .last()
        .map(Activity::is_fixed)
        .unwrap_or(false);
    if !first_fixed || !last_fixed {
        return Err(invalid(
            "first and last activity must have fixed coordinates",
        ));
    }

    let point_of = |activity: &Activity| match activity.placement {
        Placement::Fixed(p) => p,
        Placement::Unplaced => unreachable!("segment boundaries are fixed"),
    };

    let mut segments = Vec::new();
    let mut seg_start = 0usize; // chain index of the last fixed activity seen
    for (i, activity) in plan.activities.iter().enumerate().skip(1) {
        if !activity.is_fixed() {
            continue;
        }
        segments.push(Segment::new(
            point_of(&plan.activities[seg_start]),
            point_of(activity),
            plan.trips[seg_start..i].to_vec(),
            plan.activities[seg_start + 1..i].to_vec(),
        ));
        seg_start = i;
    }
    Ok(segments)
}
