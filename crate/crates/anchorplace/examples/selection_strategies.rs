//! How the six candidate-selection strategies prune the same pool.
//!
//! The recursion cannot afford to branch over every candidate, so a strategy
//! picks a subset: deterministic top-k, score-weighted Monte Carlo sampling,
//! grid-based spatial thinning, or hybrids that keep the best half
//! deterministically and diversify the rest.
//!
//! Run with: cargo run --example selection_strategies

use anchorplace::solver::{select, SeededRng};
use anchorplace::{ActivityType, Location, Point, ScoredCandidate, SelectionStrategy};

fn pool() -> Vec<ScoredCandidate> {
    // A 4x4 block of locations; scores grow with the location id so the
    // "best" candidates all cluster in one corner of the grid.
    (0..16u64)
        .map(|i| {
            let position = Point::new((i % 4) as f64 * 100.0, (i / 4) as f64 * 100.0);
            ScoredCandidate {
                location: Location::new(i, position, [ActivityType::new("shop")], i as f64),
                deviation: 0.0,
                score: i as f64,
            }
        })
        .collect()
}

fn main() {
    let strategies = [
        ("keep_all", SelectionStrategy::KeepAll),
        ("top_k", SelectionStrategy::TopK),
        ("monte_carlo", SelectionStrategy::MonteCarlo),
        ("top_k_monte_carlo", SelectionStrategy::TopKMonteCarlo),
        (
            "spatial_downsampling",
            SelectionStrategy::SpatialDownsampling {
                grid_cells_per_axis: 2,
            },
        ),
        (
            "top_k_spatial_downsampling",
            SelectionStrategy::TopKSpatialDownsampling {
                grid_cells_per_axis: 2,
            },
        ),
    ];

    for (name, strategy) in strategies {
        let mut rng = SeededRng::from_seed_value(7);
        let picked = select(pool(), 6, strategy, &mut rng).unwrap();
        let ids: Vec<u64> = picked.iter().map(|c| c.location.id.0).collect();
        println!("{name:>27}: {ids:?}");
    }

    // Monte Carlo is random but reproducible: the same seed always samples
    // the same subset, different seeds usually differ.
    for seed in [1, 2] {
        let mut rng = SeededRng::from_seed_value(seed);
        let picked = select(pool(), 4, SelectionStrategy::MonteCarlo, &mut rng).unwrap();
        let ids: Vec<u64> = picked.iter().map(|c| c.location.id.0).collect();
        println!("monte_carlo with seed {seed}: {ids:?}");
    }
}
