//! Assigns the activities of daily trip chains to concrete locations.
//!
//! Travel diaries record *what* people did and *how far* they travelled
//! between activities, but not *where* the intermediate stops were. Given a
//! chain like home → shop → leisure → home with observed trip distances,
//! this crate picks a concrete location for every open activity so that the
//! realized leg lengths match the observed ones as closely as possible while
//! favouring attractive (high-potential) destinations. Placements maximize
//!
//! ```text
//! score = alpha * sum(potential) - beta * sum(|observed - realized|)
//! ```
//!
//! Chains are split at fixed activities into segments. A segment with one
//! open activity is solved directly from the two distance circles; longer
//! segments recurse: an anchor activity in the middle is shortlisted from
//! the locations inside the reachability rings around both endpoints, the
//! two halves are solved for each shortlisted anchor, and the best branch
//! wins. Results are deterministic for a fixed master seed, independent of
//! thread count.
//!
//! # Modules
//!
//! - [`model`]: domain types — locations, plans, segments, solver config
//! - [`geometry`]: circle intersections, deviations, reachability annuli
//! - [`index`]: uniform-grid spatial index with ring and k-NN queries
//! - [`solver`]: the recursive placement algorithm and candidate selection
//! - [`oracle`]: brute-force enumeration and grids for cross-checking
//! - [`synthgen`]: deterministic synthetic locations and populations
//! - [`io`]: file formats, parallel batch runner, reports, sweeps
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! - `two_trip_basics` — one activity between two fixed points
//! - `selection_strategies` — how the six candidate filters prune a pool
//! - `recursive_chain` — a full multi-stop day, solved end to end
//! - `ring_expansion` — placing chains whose distances are unrealizable
//! - `oracle_check` — recursion vs brute-force enumeration
//! - `synthetic_batch` — generate a population and solve it in parallel
//! - `branch_sweep` — quality/runtime trade-off of the branch width
//! - `deviation_field` — the two-trip deviation landscape on a grid
//!
//! Run one with `cargo run --release --example synthetic_batch`. The
//! `anchorplace` binary wraps the same machinery in a batch CLI
//! (`generate`, `solve`, `validate`, `sweep`, `field`).

pub mod geometry;
pub mod index;
pub mod io;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod synthgen;

pub use geometry::{Annulus, IdealPoints};
pub use index::{IndexError, LocationIndex};
pub use model::{
    Activity, ActivityType, Location, LocationId, PersonPlan, PlacedPlan, PlacedSegment, Placement,
    Point, ScoredCandidate, Segment, SelectionStrategy, SolverConfig, Trip,
};
pub use solver::{solve_plan, solve_segment, BranchResult, SeededRng, SolveError};
