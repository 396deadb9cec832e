//! Parallel batch execution over persons.
//!
//! Results are keyed by person id and sorted before they are returned, and
//! every person's solve draws from its own seed-derived generator, so the
//! output is identical no matter how many worker threads run.

use std::time::Instant;

use rayon::prelude::*;

use crate::index::LocationIndex;
use crate::model::{PersonPlan, PlacedPlan, SolverConfig};
use crate::solver::solve_plan;

/// One successfully solved person.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonOutcome {
    pub person_id: String,
    pub deviation_m: f64,
    /// Time spent inside the solver only; parsing and writing excluded.
    pub wall_time_s: f64,
}

/// One person the solver could not place.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonFailure {
    pub person_id: String,
    pub reason: String,
}

/// Batch summary: per-person outcomes plus aggregate statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// Successful persons, sorted by person id.
    pub outcomes: Vec<PersonOutcome>,
    /// Failed persons with reasons, sorted by person id.
    pub failures: Vec<PersonFailure>,
    /// Wall time of the whole batch in seconds.
    pub total_runtime_s: f64,
}

impl RunReport {
    pub fn persons_total(&self) -> usize {
        self.outcomes.len() + self.failures.len()
    }

    pub fn mean_deviation_m(&self) -> f64 {
        if self.outcomes.is_empty() {
            return 0.0;
        }
        self.outcomes.iter().map(|o| o.deviation_m).sum::<f64>() / self.outcomes.len() as f64
    }

    pub fn median_deviation_m(&self) -> f64 {
        let mut sorted: Vec<f64> = self.outcomes.iter().map(|o| o.deviation_m).collect();
        if sorted.is_empty() {
            return 0.0;
        }
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        }
    }

    /// 95th percentile by the nearest-rank method.
    pub fn p95_deviation_m(&self) -> f64 {
        let mut sorted: Vec<f64> = self.outcomes.iter().map(|o| o.deviation_m).collect();
        if sorted.is_empty() {
            return 0.0;
        }
        sorted.sort_by(f64::total_cmp);
        let rank = ((0.95 * sorted.len() as f64).ceil() as usize).max(1);
        sorted[rank - 1]
    }

    pub fn persons_per_second(&self) -> f64 {
        if self.total_runtime_s > 0.0 {
            self.persons_total() as f64 / self.total_runtime_s
        } else {
            0.0
        }
    }
}

/// Placed plans (successes only, sorted by person id) plus the report.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub placed: Vec<PlacedPlan>,
    pub report: RunReport,
}

/// Per-person result before it is split into outcomes and failures: the plan
/// either solved (with its wall time) or failed with a reason.
type PersonResult = (String, Result<(PlacedPlan, f64), String>);

/// Solves every plan, `threads` wide (0 = one worker per core). Failures are
/// collected into the report instead of aborting the batch.
pub fn run_batch(
    plans: &[PersonPlan],
    index: &LocationIndex,
    config: &SolverConfig,
    threads: usize,
) -> BatchResult {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction cannot fail for sane thread counts");

    let started = Instant::now();
    let mut results: Vec<PersonResult> = pool.install(|| {
        plans
            .par_iter()
            .map(|plan| {
                let t0 = Instant::now();
                let solved = solve_plan(plan, index, config);
                let wall = t0.elapsed().as_secs_f64();
                let entry = match solved {
                    Ok(placed) => Ok((placed, wall)),
                    Err(err) => Err(err.to_string()),
                };
                (plan.person_id.clone(), entry)
            })
            .collect()
    });
    let total_runtime_s = started.elapsed().as_secs_f64();

    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut placed = Vec::new();
    let mut outcomes = Vec::new();
    let mut failures = Vec::new();
    for (person_id, entry) in results {
        match entry {
            Ok((plan, wall_time_s)) => {
                outcomes.push(PersonOutcome {
                    person_id,
                    deviation_m: plan.total_deviation,
                    wall_time_s,
                });
                placed.push(plan);
            }
            Err(reason) => failures.push(PersonFailure { person_id, reason }),
        }
    }
    BatchResult {
        placed,
        report: RunReport {
            outcomes,
            failures,
            total_runtime_s,
        },
    }
}

/// One row of a branch sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub branches: usize,
    pub mean_deviation_m: f64,
    pub runtime_s: f64,
}

/// Re-solves the same batch once per branch width and reports how the mean
/// deviation and runtime respond.
pub fn sweep_branches(
    plans: &[PersonPlan],
    index: &LocationIndex,
    config: &SolverConfig,
    branch_widths: &[usize],
    threads: usize,
) -> Vec<SweepRow> {
    branch_widths
        .iter()
        .map(|&branches| {
            let config = SolverConfig {
                number_of_branches: branches,
                ..config.clone()
            };
            let result = run_batch(plans, index, &config, threads);
            SweepRow {
                branches,
                mean_deviation_m: result.report.mean_deviation_m(),
                runtime_s: result.report.total_runtime_s,
            }
        })
        .collect()
}
