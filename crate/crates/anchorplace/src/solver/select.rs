//! Candidate selection: thins a scored candidate set down to the branching
//! width, trading exploration breadth against cost.

use std::collections::BTreeMap;

use rand::Rng;

use crate::model::{ScoredCandidate, SelectionStrategy};

use super::{SeededRng, SolveError};

/// Picks `min(n, |candidates|)` distinct candidates according to `strategy`.
///
/// Deterministic given the RNG state; strategies that don't sample never
/// touch the RNG, so e.g. growing `n` under `TopK` explores supersets.
pub fn select(
    candidates: Vec<ScoredCandidate>,
    n: usize,
    strategy: SelectionStrategy,
    rng: &mut SeededRng,
) -> Result<Vec<ScoredCandidate>, SolveError> {
    if candidates.is_empty() {
        return Err(SolveError::InvalidCall(
            "selection over an empty candidate set",
        ));
    }
    assert!(n >= 1, "selection width must be at least 1");
    Ok(match strategy {
        SelectionStrategy::KeepAll => candidates,
        SelectionStrategy::TopK => top_k(candidates, n),
        SelectionStrategy::MonteCarlo => monte_carlo(candidates, n, rng),
        SelectionStrategy::TopKMonteCarlo => hybrid(candidates, n, |rest, remaining| {
            monte_carlo(rest, remaining, rng)
        }),
        SelectionStrategy::SpatialDownsampling {
            grid_cells_per_axis,
        } => spatial_downsample(candidates, n, grid_cells_per_axis),
        SelectionStrategy::TopKSpatialDownsampling {
            grid_cells_per_axis,
        } => hybrid(candidates, n, |rest, remaining| {
            spatial_downsample(rest, remaining, grid_cells_per_axis)
        }),
    })
}

/// Highest score first, ties by ascending location id.
fn rank(candidates: &mut [ScoredCandidate]) {
    candidates.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then(a.location.id.cmp(&b.location.id))
    });
}

fn top_k(mut candidates: Vec<ScoredCandidate>, n: usize) -> Vec<ScoredCandidate> {
    rank(&mut candidates);
    candidates.truncate(n);
    candidates
}

/// Sampling without replacement, weight `score - min + eps`. The epsilon is
/// scaled to the score spread so even the worst candidate keeps a sliver of
/// probability (and equal scores degrade to uniform sampling).
fn monte_carlo(
    mut pool: Vec<ScoredCandidate>,
    n: usize,
    rng: &mut SeededRng,
) -> Vec<ScoredCandidate> {
    let take = n.min(pool.len());
    let min = pool.iter().map(|c| c.score).fold(f64::INFINITY, f64::min);
    let max = pool
        .iter()
        .map(|c| c.score)
        .fold(f64::NEG_INFINITY, f64::max);
    let eps = 1e-9 * (max - min + 1.0);
    let weight = |c: &ScoredCandidate| c.score - min + eps;

    let mut out = Vec::with_capacity(take);
    for _ in 0..take {
        let total: f64 = pool.iter().map(weight).sum();
        let mut threshold = rng.random::<f64>() * total;
        let mut picked = pool.len() - 1;
        for (i, candidate) in pool.iter().enumerate() {
            let w = weight(candidate);
            if threshold < w {
                picked = i;
                break;
            }
            threshold -= w;
        }
        out.push(pool.swap_remove(picked));
    }
    out
}

/// Deterministic head (ceil(n/2) by TopK) plus a sampled tail drawn from
/// whatever the head left over.
fn hybrid(
    mut candidates: Vec<ScoredCandidate>,
    n: usize,
    tail: impl FnOnce(Vec<ScoredCandidate>, usize) -> Vec<ScoredCandidate>,
) -> Vec<ScoredCandidate> {
    let head_width = n.div_ceil(2);
    rank(&mut candidates);
    let rest = candidates.split_off(head_width.min(candidates.len()));
    let mut out = candidates;
    let remaining = n - out.len();
    if remaining > 0 && !rest.is_empty() {
        out.extend(tail(rest, remaining));
    }
    out
}

/// Best candidate of every occupied cell of a `g x g` grid over the
/// candidate bounding box, row-major; once each occupied cell contributed,
/// the cycle restarts with every cell's next-best.
fn spatial_downsample(
    candidates: Vec<ScoredCandidate>,
    n: usize,
    g: usize,
) -> Vec<ScoredCandidate> {
    assert!(g >= 1, "grid must have at least one cell per axis");
    if candidates.len() <= n {
        return candidates;
    }

    let min_x = candidates
        .iter()
        .map(|c| c.location.position.x)
        .fold(f64::INFINITY, f64::min);
    let max_x = candidates
        .iter()
        .map(|c| c.location.position.x)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_y = candidates
        .iter()
        .map(|c| c.location.position.y)
        .fold(f64::INFINITY, f64::min);
    let max_y = candidates
        .iter()
        .map(|c| c.location.position.y)
        .fold(f64::NEG_INFINITY, f64::max);
    let cell_of = |v: f64, lo: f64, hi: f64| -> usize {
        if hi <= lo {
            return 0;
        }
        (((v - lo) / (hi - lo) * g as f64) as usize).min(g - 1)
    };

    // (row, column) keys iterate row-major.
    let mut cells: BTreeMap<(usize, usize), Vec<ScoredCandidate>> = BTreeMap::new();
    for candidate in candidates {
        let key = (
            cell_of(candidate.location.position.y, min_y, max_y),
            cell_of(candidate.location.position.x, min_x, max_x),
        );
        cells.entry(key).or_default().push(candidate);
    }
    for bucket in cells.values_mut() {
        rank(bucket);
    }

    let mut out = Vec::with_capacity(n);
    let deepest = cells.values().map(Vec::len).max().unwrap_or(0);
    'rounds: for depth in 0..deepest {
        for bucket in cells.values() {
            if let Some(candidate) = bucket.get(depth) {
                out.push(candidate.clone());
                if out.len() == n {
                    break 'rounds;
                }
            }
        }
    }
    out
}
