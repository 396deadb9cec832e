//! A full batch run on synthetic data, including infeasible chains.
//!
//! Generates a city-sized location universe and a population whose trip
//! diaries are partly unrealizable (as real survey data is), solves everyone
//! in parallel, and prints the run report a production batch would write to
//! disk.
//!
//! Run with: cargo run --release --example synthetic_batch

use anchorplace::io::run_batch;
use anchorplace::synthgen::{
    generate_locations, generate_population, is_distance_feasible, ChainLengthLaw, PopulationSpec,
    PotentialLaw, TripDistanceLaw,
};
use anchorplace::{ActivityType, LocationIndex, Point, SolverConfig};

fn main() {
    let mix = [
        ("shop", 0.4),
        ("leisure", 0.3),
        ("work", 0.2),
        ("education", 0.1),
    ]
    .iter()
    .map(|(n, s)| (ActivityType::new(n), *s))
    .collect();
    let universe = generate_locations(
        2_000,
        Point::new(0.0, 0.0),
        Point::new(15_000.0, 15_000.0),
        &mix,
        PotentialLaw::Pareto {
            scale: 1.0,
            shape: 1.5,
        },
        1,
    )
    .unwrap();

    let spec = PopulationSpec {
        n_persons: 300,
        chain_length_law: ChainLengthLaw::UniformInt { min: 3, max: 6 },
        trip_distance_law: TripDistanceLaw::Uniform {
            min: 400.0,
            max: 6_000.0,
        },
        infeasible_share: 0.3,
        fix_main_activity: true,
        seed: 1,
    };
    let population = generate_population(&spec, &universe).unwrap();
    let infeasible = population
        .iter()
        .filter(|p| !is_distance_feasible(p).unwrap())
        .count();
    println!(
        "{} locations, {} persons ({} with unrealizable trip distances)",
        universe.len(),
        population.len(),
        infeasible
    );

    let index = LocationIndex::with_default_cell_size(universe).unwrap();
    let result = run_batch(&population, &index, &SolverConfig::default(), 0);

    let report = &result.report;
    println!(
        "\nsolved {}/{} persons",
        report.outcomes.len(),
        report.persons_total()
    );
    println!("mean deviation   {:>10.1} m", report.mean_deviation_m());
    println!("median deviation {:>10.1} m", report.median_deviation_m());
    println!("p95 deviation    {:>10.1} m", report.p95_deviation_m());
    println!("total runtime    {:>10.2} s", report.total_runtime_s);
    println!(
        "throughput       {:>10.0} persons/s",
        report.persons_per_second()
    );
    assert!(
        report.failures.is_empty(),
        "infeasible chains must still be placed"
    );
}
