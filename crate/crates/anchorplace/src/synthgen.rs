//! Deterministic synthetic data: location universes and person populations.
//!
//! Everything here is driven by a single `u64` seed and produces identical
//! output on every run, so tests and benchmarks can freeze expectations
//! against generated datasets instead of shipping fixtures.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, Pareto};
use thiserror::Error;

use crate::geometry::reachability_annulus;
use crate::model::{
    split_into_segments, Activity, ActivityType, Location, ModelError, PersonPlan, Point, Segment,
    Trip,
};
use crate::solver::SeededRng;

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Plan(#[from] ModelError),
}

/// How location attractiveness is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialLaw {
    Constant(f64),
    Uniform {
        min: f64,
        max: f64,
    },
    /// Heavy-tailed potentials: most locations are small, a few are
    /// mall-sized outliers.
    Pareto {
        scale: f64,
        shape: f64,
    },
}

/// How many trips a person's chain contains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainLengthLaw {
    Fixed(usize),
    /// Inclusive on both ends.
    UniformInt {
        min: usize,
        max: usize,
    },
}

impl ChainLengthLaw {
    fn min(&self) -> usize {
        match *self {
            ChainLengthLaw::Fixed(k) => k,
            ChainLengthLaw::UniformInt { min, .. } => min,
        }
    }

    fn draw(&self, rng: &mut SeededRng) -> usize {
        match *self {
            ChainLengthLaw::Fixed(k) => k,
            ChainLengthLaw::UniformInt { min, max } => rng.random_range(min..=max),
        }
    }
}

/// How observed trip distances are drawn, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TripDistanceLaw {
    Uniform {
        min: f64,
        max: f64,
    },
    /// Heavy-tailed trip lengths, resampled until they fall under `cap`
    /// (mirrors survey prefiltering that drops very long trips).
    Pareto {
        scale: f64,
        shape: f64,
        cap: f64,
    },
}

impl TripDistanceLaw {
    fn draw(&self, rng: &mut SeededRng) -> f64 {
        match *self {
            TripDistanceLaw::Uniform { min, max } => {
                if min < max {
                    rng.random_range(min..max)
                } else {
                    min
                }
            }
            TripDistanceLaw::Pareto { scale, shape, cap } => {
                let pareto = Pareto::new(scale, shape).expect("validated on entry");
                for _ in 0..10_000 {
                    let d = pareto.sample(rng);
                    if d <= cap {
                        return d;
                    }
                }
                cap
            }
        }
    }

    fn validate(&self) -> Result<(), SynthError> {
        match *self {
            TripDistanceLaw::Uniform { min, max } => {
                if !(min > 0.0 && min <= max) {
                    return Err(SynthError::InvalidConfig(format!(
                        "uniform trip distances need 0 < min <= max, got [{min}, {max}]"
                    )));
                }
            }
            TripDistanceLaw::Pareto { scale, shape, cap } => {
                if !(scale > 0.0 && shape > 0.0 && cap > scale) {
                    return Err(SynthError::InvalidConfig(format!(
                        "pareto trip distances need scale > 0, shape > 0, cap > scale, \
                         got scale={scale} shape={shape} cap={cap}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generates `count` locations with ids `0..count`, uniform positions inside
/// the box `[lo, hi]`, types split according to `type_mix` (largest-remainder
/// apportionment, so counts are exact) and potentials drawn from
/// `potential_law`. Deterministic for a fixed seed.
pub fn generate_locations(
    count: usize,
    lo: Point,
    hi: Point,
    type_mix: &BTreeMap<ActivityType, f64>,
    potential_law: PotentialLaw,
    seed: u64,
) -> Result<Vec<Location>, SynthError> {
    if !(lo.x < hi.x && lo.y < hi.y) {
        return Err(SynthError::InvalidConfig(format!(
            "bounding box must have positive area, got ({}, {})..({}, {})",
            lo.x, lo.y, hi.x, hi.y
        )));
    }
    if type_mix.is_empty() {
        return Err(SynthError::InvalidConfig("type mix is empty".into()));
    }
    let total: f64 = type_mix.values().sum();
    if type_mix.values().any(|s| *s < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(SynthError::InvalidConfig(format!(
            "type shares must be non-negative and sum to 1, got sum {total}"
        )));
    }
    match potential_law {
        PotentialLaw::Constant(_) => {}
        PotentialLaw::Uniform { min, max } => {
            if min > max {
                return Err(SynthError::InvalidConfig(format!(
                    "uniform potential needs min <= max, got [{min}, {max}]"
                )));
            }
        }
        PotentialLaw::Pareto { scale, shape } => {
            if !(scale > 0.0 && shape > 0.0) {
                return Err(SynthError::InvalidConfig(format!(
                    "pareto potential needs scale > 0 and shape > 0, got ({scale}, {shape})"
                )));
            }
        }
    }

    // Exact apportionment: floor each share, hand leftovers to the largest
    // fractional parts (ties resolved by type-name order via the BTreeMap).
    let mut quotas: Vec<(ActivityType, usize, f64)> = type_mix
        .iter()
        .map(|(t, share)| {
            let exact = share * count as f64;
            (t.clone(), exact.floor() as usize, exact - exact.floor())
        })
        .collect();
    let assigned: usize = quotas.iter().map(|(_, n, _)| n).sum();
    let mut order: Vec<usize> = (0..quotas.len()).collect();
    order.sort_by(|a, b| {
        quotas[*b]
            .2
            .partial_cmp(&quotas[*a].2)
            .unwrap()
            .then(a.cmp(b))
    });
    for &i in order.iter().take(count.saturating_sub(assigned)) {
        quotas[i].1 += 1;
    }

    let mut rng = SeededRng::from_seed_value(seed);
    let mut locations = Vec::with_capacity(count);
    let mut id: u64 = 0;
    for (activity_type, n, _) in quotas {
        for _ in 0..n {
            let position = Point::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            let potential = match potential_law {
                PotentialLaw::Constant(c) => c,
                PotentialLaw::Uniform { min, max } => {
                    if min < max {
                        rng.random_range(min..max)
                    } else {
                        min
                    }
                }
                PotentialLaw::Pareto { scale, shape } => Pareto::new(scale, shape)
                    .expect("validated above")
                    .sample(&mut rng),
            };
            locations.push(Location::new(
                id,
                position,
                [activity_type.clone()],
                potential,
            ));
            id += 1;
        }
    }
    Ok(locations)
}

/// Population generation knobs. `infeasible_share` is the fraction of
/// persons (rounded down) whose chains are constructed so that at least one
/// segment's trip distances cannot be realized by any placement.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSpec {
    pub n_persons: usize,
    pub chain_length_law: ChainLengthLaw,
    pub trip_distance_law: TripDistanceLaw,
    pub infeasible_share: f64,
    /// Fix one mid-chain activity at a concrete location ("main activity
    /// pre-placed"), splitting each chain into two segments.
    pub fix_main_activity: bool,
    pub seed: u64,
}

impl Default for PopulationSpec {
    fn default() -> Self {
        PopulationSpec {
            n_persons: 100,
            chain_length_law: ChainLengthLaw::UniformInt { min: 2, max: 5 },
            trip_distance_law: TripDistanceLaw::Uniform {
                min: 300.0,
                max: 3_000.0,
            },
            infeasible_share: 0.0,
            fix_main_activity: false,
            seed: 0,
        }
    }
}

/// Generates `spec.n_persons` plans against the given location universe.
///
/// Every chain starts and ends at a fixed home drawn inside the universe's
/// bounding box. Feasible persons have their trip distances rejection-sampled
/// until every segment with something to place passes both checks below;
/// the first `floor(infeasible_share * n)` persons instead get one trip
/// inflated until the distance check provably fails.
///
/// A segment counts as distance-feasible when the gap between its endpoints
/// lies inside the reachability annulus of its trip distances, and as
/// location-feasible when at least one location of the anchor's type sits in
/// the exact (unexpanded) overlap of the two anchor rings.
pub fn generate_population(
    spec: &PopulationSpec,
    locations: &[Location],
) -> Result<Vec<PersonPlan>, SynthError> {
    if locations.is_empty() {
        return Err(SynthError::InvalidConfig(
            "population generation needs a non-empty location universe".into(),
        ));
    }
    if !(0.0..=1.0).contains(&spec.infeasible_share) {
        return Err(SynthError::InvalidConfig(format!(
            "infeasible_share must lie in [0, 1], got {}",
            spec.infeasible_share
        )));
    }
    let min_trips = if spec.fix_main_activity { 3 } else { 2 };
    if spec.chain_length_law.min() < min_trips {
        return Err(SynthError::InvalidConfig(format!(
            "chains need at least {min_trips} trips for this scenario"
        )));
    }
    if let ChainLengthLaw::UniformInt { min, max } = spec.chain_length_law {
        if min > max {
            return Err(SynthError::InvalidConfig(format!(
                "chain length needs min <= max, got [{min}, {max}]"
            )));
        }
    }
    spec.trip_distance_law.validate()?;

    let (lo, hi) = universe_bbox(locations);
    let mut rng = SeededRng::from_seed_value(spec.seed);
    let n_infeasible = (spec.infeasible_share * spec.n_persons as f64).floor() as usize;

    let mut plans = Vec::with_capacity(spec.n_persons);
    for person in 0..spec.n_persons {
        let person_id = format!("p{person:04}");
        let n_trips = spec.chain_length_law.draw(&mut rng);
        let home = random_point(lo, hi, &mut rng);

        let mut activities = Vec::with_capacity(n_trips + 1);
        activities.push(Activity::fixed(0, ActivityType::new("home"), home));
        let main_index = if spec.fix_main_activity {
            Some(rng.random_range(1..n_trips))
        } else {
            None
        };
        for i in 1..n_trips {
            let template = &locations[rng.random_range(0..locations.len())];
            let activity_type = template
                .types
                .iter()
                .next()
                .expect("locations always carry a type")
                .clone();
            if Some(i) == main_index {
                activities.push(Activity::fixed(i, activity_type, template.position));
            } else {
                activities.push(Activity::unplaced(i, activity_type));
            }
        }
        activities.push(Activity::fixed(n_trips, ActivityType::new("home"), home));

        let mut plan = PersonPlan {
            person_id,
            activities,
            trips: draw_trips(n_trips, spec.trip_distance_law, &mut rng),
        };

        if person < n_infeasible {
            make_infeasible(&mut plan, &mut rng)?;
            debug_assert!(!is_distance_feasible(&plan)?);
        } else {
            ensure_feasible(&mut plan, locations, spec.trip_distance_law, &mut rng)?;
            debug_assert!(is_distance_feasible(&plan)?);
        }
        plans.push(plan);
    }
    Ok(plans)
}

/// Independent feasibility check: do all segments that contain at least one
/// unplaced activity admit their endpoint gap inside the reachability
/// annulus of their trip distances? Segments with nothing to place carry no
/// placement decision and are skipped.
pub fn is_distance_feasible(plan: &PersonPlan) -> Result<bool, ModelError> {
    for segment in split_into_segments(plan)? {
        if segment.unplaced_count() == 0 {
            continue;
        }
        if !segment_distance_feasible(&segment) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn segment_distance_feasible(segment: &Segment) -> bool {
    let (r_min, r_max) =
        reachability_annulus(&segment.trip_distances()).expect("segments carry at least one trip");
    let gap = segment.start.distance(&segment.end);
    (r_min..=r_max).contains(&gap)
}

/// At least one location of the anchor's type must sit inside the exact
/// overlap of the two anchor rings (only meaningful for segments that get
/// anchored, i.e. two or more unplaced activities).
fn segment_location_feasible(segment: &Segment, locations: &[Location]) -> bool {
    if segment.unplaced_count() < 2 {
        return true;
    }
    let anchor = (segment.unplaced_count() - 1) / 2;
    let Ok((ring_a, ring_b)) = crate::geometry::segment_ring_annuli(segment, anchor) else {
        return false;
    };
    let anchor_type = &segment.inner_activities[anchor].activity_type;
    locations.iter().any(|l| {
        l.supports(anchor_type) && ring_a.contains(&l.position) && ring_b.contains(&l.position)
    })
}

fn universe_bbox(locations: &[Location]) -> (Point, Point) {
    let mut lo = locations[0].position;
    let mut hi = lo;
    for l in locations {
        lo.x = lo.x.min(l.position.x);
        lo.y = lo.y.min(l.position.y);
        hi.x = hi.x.max(l.position.x);
        hi.y = hi.y.max(l.position.y);
    }
    (lo, hi)
}

fn random_point(lo: Point, hi: Point, rng: &mut SeededRng) -> Point {
    let x = if lo.x < hi.x {
        rng.random_range(lo.x..hi.x)
    } else {
        lo.x
    };
    let y = if lo.y < hi.y {
        rng.random_range(lo.y..hi.y)
    } else {
        lo.y
    };
    Point::new(x, y)
}

fn draw_trips(n_trips: usize, law: TripDistanceLaw, rng: &mut SeededRng) -> Vec<Trip> {
    (0..n_trips).map(|i| Trip::new(i, law.draw(rng))).collect()
}

/// Redraws the plan's trip distances until every placement-relevant segment
/// is both distance- and location-feasible. If the law refuses to cooperate,
/// falls back to distances realized by an actual polyline through randomly
/// chosen locations of the right types, which passes both checks by
/// construction.
fn ensure_feasible(
    plan: &mut PersonPlan,
    locations: &[Location],
    law: TripDistanceLaw,
    rng: &mut SeededRng,
) -> Result<(), SynthError> {
    for _ in 0..100 {
        let segments = split_into_segments(plan)?;
        let ok = segments.iter().all(|s| {
            s.unplaced_count() == 0
                || (segment_distance_feasible(s) && segment_location_feasible(s, locations))
        });
        if ok {
            return Ok(());
        }
        plan.trips = draw_trips(plan.trips.len(), law, rng);
    }

    // Constructive fallback: route the chain through real locations and use
    // the realized leg lengths as the observed distances.
    let mut waypoints: Vec<Point> = Vec::with_capacity(plan.activities.len());
    for activity in &plan.activities {
        match activity.placement {
            crate::model::Placement::Fixed(p) => waypoints.push(p),
            crate::model::Placement::Unplaced => {
                let of_type: Vec<&Location> = locations
                    .iter()
                    .filter(|l| l.supports(&activity.activity_type))
                    .collect();
                let pick = of_type[rng.random_range(0..of_type.len())];
                waypoints.push(pick.position);
            }
        }
    }
    for (i, trip) in plan.trips.iter_mut().enumerate() {
        trip.distance = waypoints[i].distance(&waypoints[i + 1]);
    }
    Ok(())
}

/// Inflates one trip of a placement-relevant segment until the segment's
/// reachability annulus provably misses the endpoint gap: the inflated leg
/// exceeds the sum of its siblings plus the gap, so the minimum reachable
/// radius ends up strictly beyond the endpoints.
fn make_infeasible(plan: &mut PersonPlan, rng: &mut SeededRng) -> Result<(), SynthError> {
    let segments = split_into_segments(plan)?;
    let target = segments
        .iter()
        .find(|s| s.unplaced_count() > 0)
        .expect("chain-length floor guarantees a placement-relevant segment");
    let gap = target.start.distance(&target.end);
    let local = rng.random_range(0..target.trips.len());
    let rest: f64 = target
        .trips
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != local)
        .map(|(_, t)| t.distance)
        .sum();
    let chain_index = target.trips[local].index_in_chain;
    plan.trips[chain_index].distance = rest + gap + rng.random_range(200.0..2_000.0);
    Ok(())
}
