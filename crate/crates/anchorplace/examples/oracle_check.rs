//! Cross-checking the recursion against brute-force enumeration.
//!
//! With exhaustive settings (keep every candidate, saturate the pools) the
//! recursive solver must return exactly the score a full enumeration of all
//! |L|^n assignments finds. This is the core correctness argument; the
//! `validate` CLI subcommand runs the same comparison.
//!
//! Run with: cargo run --example oracle_check

use anchorplace::oracle::brute_force_segment;
use anchorplace::solver::{solve_segment, SeededRng};
use anchorplace::{
    Activity, ActivityType, Location, LocationIndex, Point, Segment, SelectionStrategy,
    SolverConfig, Trip,
};
use rand::Rng;

fn main() {
    let types = [ActivityType::new("shop"), ActivityType::new("leisure")];
    let mut rng = SeededRng::from_seed_value(2024);
    let mut worst_gap: f64 = 0.0;

    for instance in 0..40 {
        let universe = rng.random_range(8..=20);
        let locations: Vec<Location> = (0..universe)
            .map(|i| {
                Location::new(
                    i as u64,
                    Point::new(
                        rng.random_range(-1_000.0..1_000.0),
                        rng.random_range(-1_000.0..1_000.0),
                    ),
                    [types[i % 2].clone()],
                    rng.random_range(0.0..5.0),
                )
            })
            .collect();

        let n = 1 + instance % 3;
        let segment = Segment::new(
            Point::new(
                rng.random_range(-500.0..500.0),
                rng.random_range(-500.0..500.0),
            ),
            Point::new(
                rng.random_range(-500.0..500.0),
                rng.random_range(-500.0..500.0),
            ),
            (0..=n)
                .map(|i| Trip::new(i, rng.random_range(100.0..2_000.0)))
                .collect(),
            (0..n)
                .map(|i| Activity::unplaced(i + 1, types[i % 2].clone()))
                .collect(),
        );

        // Exhaustive settings: every candidate survives selection and the
        // pools cover the whole universe.
        let config = SolverConfig {
            alpha: (instance % 2) as f64,
            number_of_branches: universe,
            min_candidates_complex_case: universe,
            candidates_two_trip_case: universe,
            selection_strategy_complex_case: SelectionStrategy::KeepAll,
            selection_strategy_two_trip_case: SelectionStrategy::TopK,
            expansion_factor: 2.0,
            max_expansions: 60,
            ..SolverConfig::default()
        };

        let index = LocationIndex::with_default_cell_size(locations.clone()).unwrap();
        let solved = solve_segment(
            &segment,
            &index,
            &config,
            &mut SeededRng::from_seed_value(instance as u64),
        )
        .unwrap();
        let (_, oracle_score) =
            brute_force_segment(&segment, &locations, config.alpha, config.beta).unwrap();

        let gap = (solved.score - oracle_score).abs();
        worst_gap = worst_gap.max(gap);
        assert!(
            gap <= 1e-9 * f64::max(1.0, oracle_score.abs()),
            "instance {instance}: solver {} vs oracle {}",
            solved.score,
            oracle_score
        );
        if instance % 8 == 0 {
            println!(
                "instance {instance:>2}: n={n}, {universe:>2} locations, score {:>10.3} == oracle",
                solved.score
            );
        }
    }
    println!("\n40 instances matched the oracle (worst absolute gap {worst_gap:.2e})");
}
