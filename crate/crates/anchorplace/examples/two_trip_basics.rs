//! The two-trip base case: one activity between two fixed points.
//!
//! A person reports a 5 km trip from home to a shop and a 5 km trip onward
//! to work, with home and work 6 km apart. The zero-deviation positions are
//! the intersections of the two distance circles; real shops rarely sit
//! exactly there, so the solver weighs each candidate's distance deviation
//! against its potential.
//!
//! Run with: cargo run --example two_trip_basics

use anchorplace::geometry::circle_intersections;
use anchorplace::solver::{solve_two_trip, SeededRng};
use anchorplace::{ActivityType, Location, LocationIndex, Point, SolverConfig};

fn main() {
    let home = Point::new(0.0, 0.0);
    let work = Point::new(6_000.0, 0.0);
    let (d1, d2) = (5_000.0, 5_000.0);

    let ideal = circle_intersections(home, d1, work, d2);
    println!("feasible: {}", ideal.feasible);
    for p in &ideal.points {
        println!("ideal point: {p}");
    }

    // A few shops around town. Only one is close to an ideal point; another
    // compensates for its detour with a big potential.
    let shop = ActivityType::new("shop");
    let locations = vec![
        Location::new(1, Point::new(3_050.0, 3_960.0), [shop.clone()], 1.0),
        Location::new(2, Point::new(2_500.0, -3_500.0), [shop.clone()], 1.0),
        Location::new(3, Point::new(3_050.0, 3_850.0), [shop.clone()], 40.0),
        Location::new(4, Point::new(5_500.0, 500.0), [shop.clone()], 2.0),
    ];
    let index = LocationIndex::with_default_cell_size(locations).unwrap();

    for alpha in [0.0, 10.0] {
        let config = SolverConfig {
            alpha,
            beta: 1.0,
            ..SolverConfig::default()
        };
        let mut rng = SeededRng::from_seed_value(0);
        let (chosen, deviation) =
            solve_two_trip(&home, &work, d1, d2, &shop, &index, &config, &mut rng).unwrap();
        println!(
            "alpha={alpha}: shop {} at {} (potential {}, deviation {:.0} m, score {:.0})",
            chosen.location.id.0,
            chosen.location.position,
            chosen.location.potential,
            deviation,
            chosen.score
        );
    }
}
