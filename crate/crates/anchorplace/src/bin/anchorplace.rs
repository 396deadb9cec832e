//! Batch CLI: generate synthetic data, solve populations, cross-check the
//! solver against brute force, sweep branch widths, and dump deviation
//! fields.
//!
//! Exit codes: 0 on success, 1 when some persons or instances failed,
//! 2 on invalid input or configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::Rng;

use anchorplace::io;
use anchorplace::model::{
    Activity, ActivityType, Location, Point, Segment, SelectionStrategy, SolverConfig, Trip,
};
use anchorplace::oracle;
use anchorplace::solver::{solve_segment, SeededRng};
use anchorplace::synthgen::{self, ChainLengthLaw, PopulationSpec, PotentialLaw, TripDistanceLaw};
use anchorplace::LocationIndex;

#[derive(Parser)]
#[command(
    name = "anchorplace",
    version,
    about = "Assign activity chains to locations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic location universe and population.
    Generate {
        /// Output path for the locations CSV.
        #[arg(long)]
        locations: PathBuf,
        /// Output path for the plans file.
        #[arg(long)]
        plans: PathBuf,
        /// Number of locations.
        #[arg(long, default_value_t = 500)]
        count: usize,
        /// Number of persons.
        #[arg(long, default_value_t = 200)]
        persons: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One of fixed-main:feasible-only, fixed-main:all,
        /// free-main:feasible-only, free-main:all.
        #[arg(long, default_value = "free-main:feasible-only")]
        scenario: String,
        /// Fraction of persons given unrealizable trip distances
        /// (only meaningful with an ":all" scenario).
        #[arg(long, default_value_t = 0.3)]
        infeasible_share: f64,
        /// Universe bounding box as x0,y0,x1,y1 in meters.
        #[arg(long, default_value = "0,0,10000,10000")]
        bbox: String,
    },
    /// Place a population's activities onto a location universe.
    Solve {
        #[arg(long)]
        locations: PathBuf,
        #[arg(long)]
        plans: PathBuf,
        /// Output path for the placed CSV.
        #[arg(long)]
        out: PathBuf,
        /// Solver config file (defaults apply when omitted).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path for the run report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Overrides the config's master_seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve random small instances exhaustively and compare against
    /// brute-force enumeration.
    Validate {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-solve the same batch at several branch widths and emit a
    /// branches,mean_deviation_m,runtime_s CSV.
    Sweep {
        #[arg(long)]
        locations: PathBuf,
        #[arg(long)]
        plans: PathBuf,
        /// Output path for the sweep CSV.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated branch widths.
        #[arg(long, value_delimiter = ',', default_value = "1,5,20,50")]
        branches: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Evaluate the two-trip deviation field on a grid and emit an
    /// x,y,deviation CSV.
    Field {
        /// Observed distance from the start point.
        #[arg(long, default_value_t = 1.0)]
        d1: f64,
        /// Observed distance from the end point.
        #[arg(long, default_value_t = 6.0)]
        d2: f64,
        /// Distance between the two fixed endpoints.
        #[arg(long, default_value_t = 6.0)]
        separation: f64,
        /// Grid resolution; defaults to 1/200 of the horizontal span.
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate {
            locations,
            plans,
            count,
            persons,
            seed,
            scenario,
            infeasible_share,
            bbox,
        } => generate(
            locations,
            plans,
            count,
            persons,
            seed,
            &scenario,
            infeasible_share,
            &bbox,
        ),
        Command::Solve {
            locations,
            plans,
            out,
            config,
            report,
            threads,
            seed,
        } => solve(locations, plans, out, config, report, threads, seed),
        Command::Validate { instances, seed } => validate(instances, seed),
        Command::Sweep {
            locations,
            plans,
            out,
            config,
            branches,
            threads,
        } => sweep(locations, plans, out, config, &branches, threads),
        Command::Field {
            d1,
            d2,
            separation,
            resolution,
            out,
        } => field(d1, d2, separation, resolution, out),
    }
}

fn parse_scenario(scenario: &str) -> Result<(bool, bool), String> {
    let Some((main, filter)) = scenario.split_once(':') else {
        return Err(format!(
            "scenario '{scenario}' must look like 'fixed-main:feasible-only' or 'free-main:all'"
        ));
    };
    let fix_main = match main {
        "fixed-main" => true,
        "free-main" => false,
        other => return Err(format!("unknown scenario part '{other}'")),
    };
    let feasible_only = match filter {
        "feasible-only" => true,
        "all" => false,
        other => return Err(format!("unknown scenario part '{other}'")),
    };
    Ok((fix_main, feasible_only))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    locations_path: PathBuf,
    plans_path: PathBuf,
    count: usize,
    persons: usize,
    seed: u64,
    scenario: &str,
    infeasible_share: f64,
    bbox: &str,
) -> Result<ExitCode, String> {
    let (fix_main, feasible_only) = parse_scenario(scenario)?;
    let corners: Vec<f64> = bbox
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid bbox value '{v}'"))
        })
        .collect::<Result<_, _>>()?;
    let [x0, y0, x1, y1] = corners[..] else {
        return Err(format!("bbox needs 4 values, got {}", corners.len()));
    };

    let type_mix: BTreeMap<ActivityType, f64> = [
        ("shop", 0.4),
        ("leisure", 0.3),
        ("work", 0.2),
        ("education", 0.1),
    ]
    .iter()
    .map(|(name, share)| (ActivityType::new(name), *share))
    .collect();
    let universe = synthgen::generate_locations(
        count,
        Point::new(x0, y0),
        Point::new(x1, y1),
        &type_mix,
        PotentialLaw::Pareto {
            scale: 1.0,
            shape: 1.5,
        },
        seed,
    )
    .map_err(|e| e.to_string())?;

    let span = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    let spec = PopulationSpec {
        n_persons: persons,
        chain_length_law: ChainLengthLaw::UniformInt {
            min: if fix_main { 3 } else { 2 },
            max: 6,
        },
        trip_distance_law: TripDistanceLaw::Uniform {
            min: span * 0.02,
            max: span * 0.4,
        },
        infeasible_share: if feasible_only { 0.0 } else { infeasible_share },
        fix_main_activity: fix_main,
        seed,
    };
    let population = synthgen::generate_population(&spec, &universe).map_err(|e| e.to_string())?;

    io::write_locations(&locations_path, &universe).map_err(|e| e.to_string())?;
    io::write_plans(&plans_path, &population).map_err(|e| e.to_string())?;
    println!(
        "wrote {} locations to {}",
        universe.len(),
        locations_path.display()
    );
    println!(
        "wrote {} plans to {}",
        population.len(),
        plans_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn load_config(path: Option<PathBuf>, seed: Option<u64>) -> Result<SolverConfig, String> {
    let mut config = match path {
        Some(path) => io::read_config(path).map_err(|e| e.to_string())?,
        None => SolverConfig::default(),
    };
    if let Some(seed) = seed {
        config.master_seed = seed;
    }
    Ok(config)
}

#[allow(clippy::too_many_arguments)]
fn solve(
    locations_path: PathBuf,
    plans_path: PathBuf,
    out: PathBuf,
    config: Option<PathBuf>,
    report_path: Option<PathBuf>,
    threads: usize,
    seed: Option<u64>,
) -> Result<ExitCode, String> {
    let universe = io::read_locations(&locations_path).map_err(|e| e.to_string())?;
    let plans = io::read_plans(&plans_path).map_err(|e| e.to_string())?;
    let config = load_config(config, seed)?;
    let index = LocationIndex::with_default_cell_size(universe).map_err(|e| e.to_string())?;

    let result = io::run_batch(&plans, &index, &config, threads);
    io::write_placed(&out, &result.placed).map_err(|e| e.to_string())?;
    if let Some(report_path) = report_path {
        io::write_report(&report_path, &result.report).map_err(|e| e.to_string())?;
    }

    let report = &result.report;
    println!(
        "solved {}/{} persons in {:.2}s ({:.0} persons/s), mean deviation {:.1} m",
        report.outcomes.len(),
        report.persons_total(),
        report.total_runtime_s,
        report.persons_per_second(),
        report.mean_deviation_m()
    );
    for failure in &report.failures {
        eprintln!("failed {}: {}", failure.person_id, failure.reason);
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn validate(instances: usize, seed: u64) -> Result<ExitCode, String> {
    let mut rng = SeededRng::from_seed_value(seed);
    let types = [ActivityType::new("shop"), ActivityType::new("leisure")];
    let mut mismatches = 0usize;

    for instance in 0..instances {
        let universe_size = rng.random_range(10..=30);
        let locations: Vec<Location> = (0..universe_size)
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
        let trips: Vec<Trip> = (0..=n)
            .map(|i| Trip::new(i, rng.random_range(100.0..2_500.0)))
            .collect();
        let inner: Vec<Activity> = (0..n)
            .map(|i| Activity::unplaced(i + 1, types[i % 2].clone()))
            .collect();
        let segment = Segment::new(
            Point::new(
                rng.random_range(-800.0..800.0),
                rng.random_range(-800.0..800.0),
            ),
            Point::new(
                rng.random_range(-800.0..800.0),
                rng.random_range(-800.0..800.0),
            ),
            trips,
            inner,
        );
        let config = SolverConfig {
            alpha: (instance % 2) as f64,
            number_of_branches: universe_size,
            min_candidates_complex_case: universe_size,
            candidates_two_trip_case: universe_size,
            selection_strategy_complex_case: SelectionStrategy::KeepAll,
            selection_strategy_two_trip_case: SelectionStrategy::TopK,
            expansion_factor: 2.0,
            max_expansions: 60,
            ..SolverConfig::default()
        };

        let index =
            LocationIndex::with_default_cell_size(locations.clone()).map_err(|e| e.to_string())?;
        let mut solver_rng = SeededRng::from_seed_value(seed ^ instance as u64);
        let solved =
            solve_segment(&segment, &index, &config, &mut solver_rng).map_err(|e| e.to_string())?;
        let (_, oracle_score) =
            oracle::brute_force_segment(&segment, &locations, config.alpha, config.beta)
                .map_err(|e| e.to_string())?;

        let tolerance = 1e-9 * f64::max(1.0, oracle_score.abs());
        if (solved.score - oracle_score).abs() > tolerance {
            mismatches += 1;
            println!(
                "instance {instance}: MISMATCH solver={} oracle={}",
                solved.score, oracle_score
            );
        }
    }

    println!("validated {instances} instances, {mismatches} mismatches");
    if mismatches == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn sweep(
    locations_path: PathBuf,
    plans_path: PathBuf,
    out: PathBuf,
    config: Option<PathBuf>,
    branches: &[usize],
    threads: usize,
) -> Result<ExitCode, String> {
    if branches.is_empty() {
        return Err("sweep needs at least one branch width".into());
    }
    let universe = io::read_locations(&locations_path).map_err(|e| e.to_string())?;
    let plans = io::read_plans(&plans_path).map_err(|e| e.to_string())?;
    let config = load_config(config, None)?;
    let index = LocationIndex::with_default_cell_size(universe).map_err(|e| e.to_string())?;

    let rows = io::sweep_branches(&plans, &index, &config, branches, threads);
    io::write_sweep(&out, &rows).map_err(|e| e.to_string())?;
    for row in &rows {
        println!(
            "branches {:>4}: mean deviation {:.1} m, runtime {:.2}s",
            row.branches, row.mean_deviation_m, row.runtime_s
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn field(
    d1: f64,
    d2: f64,
    separation: f64,
    resolution: Option<f64>,
    out: PathBuf,
) -> Result<ExitCode, String> {
    if d1 <= 0.0 || d2 <= 0.0 || separation < 0.0 {
        return Err("field needs d1 > 0, d2 > 0, separation >= 0".into());
    }
    let s = Point::new(0.0, 0.0);
    let e = Point::new(separation, 0.0);
    let lo_x = f64::min(-d1, separation - d2);
    let hi_x = f64::max(d1, separation + d2);
    let half_y = f64::max(d1, d2);
    let resolution = resolution.unwrap_or((hi_x - lo_x) / 200.0);
    if resolution <= 0.0 {
        return Err("resolution must be positive".into());
    }
    let pad = 2.0 * resolution;
    let bbox = (
        Point::new(lo_x - pad, -half_y - pad),
        Point::new(hi_x + pad, half_y + pad),
    );

    let mut buffer = Vec::new();
    oracle::write_deviation_field_csv(&mut buffer, &s, d1, &e, d2, bbox, resolution)
        .map_err(|e| e.to_string())?;
    std::fs::write(&out, &buffer).map_err(|e| e.to_string())?;

    let (at, min_dev) = oracle::grid_min_deviation(&s, d1, &e, d2, bbox, resolution);
    println!(
        "wrote field to {} (resolution {resolution}), grid minimum {min_dev:.4} at ({:.3}, {:.3})",
        out.display(),
        at.x,
        at.y
    );
    Ok(ExitCode::SUCCESS)
}
