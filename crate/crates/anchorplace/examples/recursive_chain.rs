//! Solving a full day: four secondary activities between home and home.
//!
//! Chains with more than one open activity are solved by recursion: pick the
//! middle activity as an anchor, shortlist locations inside the reachability
//! rings around both segment endpoints, then solve the left and right halves
//! for each shortlisted anchor and keep the best total.
//!
//! Run with: cargo run --example recursive_chain

use anchorplace::solver::solve_plan;
use anchorplace::synthgen::{generate_locations, PotentialLaw};
use anchorplace::{Activity, ActivityType, LocationIndex, PersonPlan, Point, SolverConfig, Trip};

fn main() {
    let mix = [("shop", 0.5), ("leisure", 0.3), ("work", 0.2)]
        .iter()
        .map(|(n, s)| (ActivityType::new(n), *s))
        .collect();
    let universe = generate_locations(
        400,
        Point::new(0.0, 0.0),
        Point::new(8_000.0, 8_000.0),
        &mix,
        PotentialLaw::Pareto {
            scale: 1.0,
            shape: 1.5,
        },
        42,
    )
    .unwrap();
    let index = LocationIndex::with_default_cell_size(universe).unwrap();

    // Home -> work -> shop -> leisure -> shop -> home, with the observed
    // trip distances a travel diary would report.
    let home = Point::new(1_000.0, 1_000.0);
    let plan = PersonPlan {
        person_id: "p0042".into(),
        activities: vec![
            Activity::fixed(0, ActivityType::new("home"), home),
            Activity::unplaced(1, ActivityType::new("work")),
            Activity::unplaced(2, ActivityType::new("shop")),
            Activity::unplaced(3, ActivityType::new("leisure")),
            Activity::unplaced(4, ActivityType::new("shop")),
            Activity::fixed(5, ActivityType::new("home"), home),
        ],
        trips: vec![
            Trip::new(0, 4_500.0),
            Trip::new(1, 1_200.0),
            Trip::new(2, 2_000.0),
            Trip::new(3, 1_500.0),
            Trip::new(4, 3_800.0),
        ],
    };

    let placed = solve_plan(&plan, &index, &SolverConfig::default()).unwrap();
    println!(
        "total score {:.1}, total deviation {:.0} m\n",
        placed.total_score, placed.total_deviation
    );
    for activity in &placed.activities {
        let id = activity
            .location_id
            .map(|id| format!("location {}", id.0))
            .unwrap_or_else(|| "fixed".into());
        println!(
            "  {} {:>8} at {} ({id})",
            activity.index_in_chain,
            activity.activity_type.as_str(),
            activity.position
        );
    }
    println!();
    for trip in &placed.trips {
        println!(
            "  trip {}: observed {:>6.0} m, modeled {:>6.0} m, deviation {:>5.0} m",
            trip.index_in_chain,
            trip.observed_distance,
            trip.modeled_distance,
            trip.deviation()
        );
    }
}
