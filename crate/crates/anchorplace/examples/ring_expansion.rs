//! Infeasible distances still get a placement: ring expansion at work.
//!
//! Survey data is noisy — sometimes no point in the plane realizes the
//! reported trip distances, and sometimes the feasible ring is simply empty
//! of locations. The index then relaxes the rings step by step (and falls
//! back to plain nearest-neighbour search if needed) so every activity ends
//! up somewhere sensible.
//!
//! Run with: cargo run --example ring_expansion

use anchorplace::geometry::{reachability_annulus, segment_ring_annuli};
use anchorplace::solver::{solve_segment, SeededRng};
use anchorplace::{
    Activity, ActivityType, Location, LocationIndex, Point, Segment, SolverConfig, Trip,
};

fn main() {
    let shop = ActivityType::new("shop");
    // A sparse strip of shops along a 12 km corridor.
    let locations: Vec<Location> = (0..12u64)
        .map(|i| {
            Location::new(
                i,
                Point::new(i as f64 * 1_000.0, 400.0),
                [shop.clone()],
                1.0,
            )
        })
        .collect();
    let index = LocationIndex::with_default_cell_size(locations).unwrap();

    // The reported distances sum to 2.4 km, but the endpoints lie 10 km
    // apart: no placement can realize these trips.
    let start = Point::new(0.0, 0.0);
    let end = Point::new(10_000.0, 0.0);
    let distances = [800.0, 700.0, 900.0];
    let segment = Segment::new(
        start,
        end,
        distances
            .iter()
            .enumerate()
            .map(|(i, d)| Trip::new(i, *d))
            .collect(),
        vec![
            Activity::unplaced(1, shop.clone()),
            Activity::unplaced(2, shop.clone()),
        ],
    );

    let (r_min, r_max) = reachability_annulus(&distances).unwrap();
    let gap = start.distance(&end);
    println!("endpoint gap {gap} m, reachable band [{r_min}, {r_max}] m -> infeasible");

    // The exact anchor rings contain no location; watch the expansion work.
    let (ring_a, ring_b) = segment_ring_annuli(&segment, 0).unwrap();
    let exact = index.query_ring_overlap(&shop, &ring_a, &ring_b);
    println!("locations in the exact ring overlap: {}", exact.len());
    let config = SolverConfig::default();
    let (found, expansions) = index
        .query_ring_overlap_with_expansion(
            &shop,
            &ring_a,
            &ring_b,
            config.min_candidates_complex_case,
            config.expansion_factor,
            config.max_expansions,
        )
        .unwrap();
    println!("after {expansions} expansions: {} candidates", found.len());

    let result = solve_segment(
        &segment,
        &index,
        &config,
        &mut SeededRng::from_seed_value(1),
    )
    .unwrap();
    println!("\nplaced anyway:");
    for (activity, location) in segment
        .inner_activities
        .iter()
        .zip(&result.placed.placements)
    {
        println!(
            "  activity {} -> location {} at {}",
            activity.index_in_chain, location.id.0, location.position
        );
    }
    println!(
        "total deviation {:.0} m (cannot drop below gap - sum = {:.0} m)",
        result.placed.total_deviation,
        gap - distances.iter().sum::<f64>()
    );
}
