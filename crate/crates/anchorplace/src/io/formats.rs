//! Readers and writers for the five on-disk formats.
//!
//! - locations CSV: `id,x,y,types,potential` with `|`-separated types
//! - plans: one person per line, `;`-separated, alternating activity and
//!   trip-distance entries; `type@x,y` marks a fixed activity
//! - placed CSV: `person_id,activity_index,type,location_id,x,y`
//! - config: flat `key=value` lines mirroring the solver-config field names
//! - report / sweep: key-value and CSV summaries of a batch run
//!
//! Parse errors name the file, 1-based line, and 1-based column of the
//! offending field.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use super::batch::{RunReport, SweepRow};
use super::IoError;
use crate::model::{
    Activity, ActivityType, AnchorStrategy, Location, PersonPlan, PlacedPlan, Placement, Point,
    SelectionStrategy, SolverConfig, Trip,
};

const LOCATIONS_HEADER: &str = "id,x,y,types,potential";
const PLACED_HEADER: &str = "person_id,activity_index,type,location_id,x,y";
const SWEEP_HEADER: &str = "branches,mean_deviation_m,runtime_s";

fn malformed(file: &str, line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Malformed {
        file: file.to_string(),
        line,
        column,
        message: message.into(),
    }
}

/// Splits `line` on `sep`, yielding each raw field with the 1-based column
/// of its first character.
fn fields_with_columns(line: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in line.char_indices() {
        if c == sep {
            out.push((start + 1, &line[start..i]));
            start = i + 1;
        }
    }
    out.push((start + 1, &line[start..]));
    out
}

fn parse_f64(
    file: &str,
    line: usize,
    column: usize,
    raw: &str,
    what: &str,
) -> Result<f64, IoError> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| {
            malformed(
                file,
                line,
                column,
                format!("invalid {what} '{}'", raw.trim()),
            )
        })
}

// ---------------------------------------------------------------------------
// locations CSV

pub fn locations_from_str(text: &str, file: &str) -> Result<Vec<Location>, IoError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == LOCATIONS_HEADER => {}
        _ => {
            return Err(malformed(
                file,
                1,
                1,
                format!("expected header '{LOCATIONS_HEADER}'"),
            ))
        }
    }

    let mut seen = BTreeSet::new();
    let mut locations = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields = fields_with_columns(line, ',');
        if fields.len() != 5 {
            return Err(malformed(
                file,
                lineno,
                1,
                format!("expected 5 fields, got {}", fields.len()),
            ));
        }
        let id: u64 = fields[0].1.trim().parse().map_err(|_| {
            malformed(
                file,
                lineno,
                fields[0].0,
                format!("invalid id '{}'", fields[0].1.trim()),
            )
        })?;
        if !seen.insert(id) {
            return Err(IoError::DuplicateLocationId {
                file: file.to_string(),
                id,
            });
        }
        let x = parse_f64(file, lineno, fields[1].0, fields[1].1, "x coordinate")?;
        let y = parse_f64(file, lineno, fields[2].0, fields[2].1, "y coordinate")?;
        let mut types = Vec::new();
        for part in fields[3].1.split('|') {
            let name = part.trim();
            if name.is_empty() {
                return Err(malformed(file, lineno, fields[3].0, "empty activity type"));
            }
            types.push(ActivityType::new(name));
        }
        let potential = parse_f64(file, lineno, fields[4].0, fields[4].1, "potential")?;
        if potential < 0.0 {
            return Err(malformed(
                file,
                lineno,
                fields[4].0,
                "potential must be non-negative",
            ));
        }
        locations.push(Location::new(id, Point::new(x, y), types, potential));
    }
    Ok(locations)
}

pub fn locations_to_string(locations: &[Location]) -> String {
    let mut out = String::from(LOCATIONS_HEADER);
    out.push('\n');
    for l in locations {
        let types: Vec<&str> = l.types.iter().map(ActivityType::as_str).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            l.id.0,
            l.position.x,
            l.position.y,
            types.join("|"),
            l.potential
        ));
    }
    out
}

pub fn read_locations(path: impl AsRef<Path>) -> Result<Vec<Location>, IoError> {
    let file = path.as_ref().display().to_string();
    let text = fs::read_to_string(path.as_ref()).map_err(|e| IoError::file_error(&file, e))?;
    locations_from_str(&text, &file)
}

pub fn write_locations(path: impl AsRef<Path>, locations: &[Location]) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), locations_to_string(locations))
        .map_err(|e| IoError::file_error(&file, e))
}

// ---------------------------------------------------------------------------
// plans

pub fn plans_from_str(text: &str, file: &str) -> Result<Vec<PersonPlan>, IoError> {
    let mut plans = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let tokens = fields_with_columns(line, ';');
        if tokens.len() < 2 || !tokens.len().is_multiple_of(2) {
            return Err(malformed(
                file,
                lineno,
                1,
                "expected 'person_id; activity; distance; activity; ...' ending on an activity",
            ));
        }
        let person_id = tokens[0].1.trim().to_string();
        if person_id.is_empty() {
            return Err(malformed(file, lineno, tokens[0].0, "empty person id"));
        }
        if !seen_ids.insert(person_id.clone()) {
            return Err(malformed(
                file,
                lineno,
                tokens[0].0,
                format!("duplicate person id '{person_id}'"),
            ));
        }

        let mut activities = Vec::new();
        let mut trips = Vec::new();
        for (slot, (column, raw)) in tokens[1..].iter().enumerate() {
            let column = column + (raw.len() - raw.trim_start().len());
            let token = raw.trim();
            if slot % 2 == 0 {
                activities.push(parse_activity(file, lineno, column, token, slot / 2)?);
            } else {
                let distance = parse_f64(file, lineno, column, token, "trip distance")?;
                if distance < 0.0 {
                    return Err(malformed(
                        file,
                        lineno,
                        column,
                        "trip distance must be non-negative",
                    ));
                }
                trips.push(Trip::new(slot / 2, distance));
            }
        }
        plans.push(PersonPlan {
            person_id,
            activities,
            trips,
        });
    }
    Ok(plans)
}

fn parse_activity(
    file: &str,
    line: usize,
    column: usize,
    token: &str,
    index_in_chain: usize,
) -> Result<Activity, IoError> {
    let (name, coords) = match token.split_once('@') {
        Some((name, coords)) => (name.trim(), Some(coords)),
        None => (token, None),
    };
    if name.is_empty() {
        return Err(malformed(file, line, column, "empty activity type"));
    }
    let activity_type = ActivityType::new(name);
    match coords {
        None => Ok(Activity::unplaced(index_in_chain, activity_type)),
        Some(coords) => {
            let coord_col = column + token.find('@').unwrap() + 1;
            let Some((x, y)) = coords.split_once(',') else {
                return Err(malformed(
                    file,
                    line,
                    coord_col,
                    format!("expected 'x,y' after '@', got '{coords}'"),
                ));
            };
            let x = parse_f64(file, line, coord_col, x, "x coordinate")?;
            let y = parse_f64(file, line, coord_col, y, "y coordinate")?;
            Ok(Activity::fixed(
                index_in_chain,
                activity_type,
                Point::new(x, y),
            ))
        }
    }
}

pub fn plans_to_string(plans: &[PersonPlan]) -> String {
    let mut out = String::new();
    for plan in plans {
        out.push_str(&plan.person_id);
        for (i, activity) in plan.activities.iter().enumerate() {
            out.push_str("; ");
            out.push_str(activity.activity_type.as_str());
            if let Placement::Fixed(p) = activity.placement {
                out.push_str(&format!("@{},{}", p.x, p.y));
            }
            if i < plan.trips.len() {
                out.push_str(&format!("; {}", plan.trips[i].distance));
            }
        }
        out.push('\n');
    }
    out
}

pub fn read_plans(path: impl AsRef<Path>) -> Result<Vec<PersonPlan>, IoError> {
    let file = path.as_ref().display().to_string();
    let text = fs::read_to_string(path.as_ref()).map_err(|e| IoError::file_error(&file, e))?;
    plans_from_str(&text, &file)
}

pub fn write_plans(path: impl AsRef<Path>, plans: &[PersonPlan]) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), plans_to_string(plans)).map_err(|e| IoError::file_error(&file, e))
}

// ---------------------------------------------------------------------------
// placed output CSV

pub fn placed_to_string(placed: &[PlacedPlan]) -> String {
    let mut out = String::from(PLACED_HEADER);
    out.push('\n');
    for plan in placed {
        for activity in &plan.activities {
            let id = activity
                .location_id
                .map(|id| id.0.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                plan.person_id,
                activity.index_in_chain,
                activity.activity_type.as_str(),
                id,
                activity.position.x,
                activity.position.y
            ));
        }
    }
    out
}

pub fn write_placed(path: impl AsRef<Path>, placed: &[PlacedPlan]) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), placed_to_string(placed)).map_err(|e| IoError::file_error(&file, e))
}

// ---------------------------------------------------------------------------
// config

pub fn config_from_str(text: &str, file: &str) -> Result<SolverConfig, IoError> {
    let mut config = SolverConfig::default();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(malformed(file, lineno, 1, "expected 'key=value'"));
        };
        let key = key.trim();
        let value = value.trim();
        let value_col = line.find('=').unwrap() + 2;
        match key {
            "alpha" => config.alpha = parse_f64(file, lineno, value_col, value, "alpha")?,
            "beta" => config.beta = parse_f64(file, lineno, value_col, value, "beta")?,
            "number_of_branches" => {
                config.number_of_branches = parse_count(file, lineno, value_col, value, key)?
            }
            "min_candidates_complex_case" => {
                config.min_candidates_complex_case =
                    parse_count(file, lineno, value_col, value, key)?
            }
            "candidates_two_trip_case" => {
                config.candidates_two_trip_case = parse_count(file, lineno, value_col, value, key)?
            }
            "anchor_strategy" => {
                config.anchor_strategy = match value {
                    "lower_middle" => AnchorStrategy::LowerMiddle,
                    other => {
                        return Err(malformed(
                            file,
                            lineno,
                            value_col,
                            format!("unknown anchor strategy '{other}'"),
                        ))
                    }
                }
            }
            "selection_strategy_complex_case" => {
                config.selection_strategy_complex_case =
                    parse_strategy(file, lineno, value_col, value)?
            }
            "selection_strategy_two_trip_case" => {
                config.selection_strategy_two_trip_case =
                    parse_strategy(file, lineno, value_col, value)?
            }
            "expansion_factor" => {
                let factor = parse_f64(file, lineno, value_col, value, "expansion_factor")?;
                if factor <= 1.0 {
                    return Err(malformed(
                        file,
                        lineno,
                        value_col,
                        "expansion_factor must exceed 1",
                    ));
                }
                config.expansion_factor = factor;
            }
            "max_expansions" => {
                config.max_expansions = parse_count(file, lineno, value_col, value, key)?
            }
            "master_seed" => {
                config.master_seed = value.parse().map_err(|_| {
                    malformed(
                        file,
                        lineno,
                        value_col,
                        format!("invalid master_seed '{value}'"),
                    )
                })?
            }
            other => {
                return Err(malformed(
                    file,
                    lineno,
                    1,
                    format!("unknown config key '{other}'"),
                ))
            }
        }
    }
    Ok(config)
}

fn parse_count(
    file: &str,
    line: usize,
    column: usize,
    raw: &str,
    what: &str,
) -> Result<usize, IoError> {
    raw.parse::<usize>().ok().filter(|n| *n > 0).ok_or_else(|| {
        malformed(
            file,
            line,
            column,
            format!("{what} must be a positive integer, got '{raw}'"),
        )
    })
}

fn parse_strategy(
    file: &str,
    line: usize,
    column: usize,
    raw: &str,
) -> Result<SelectionStrategy, IoError> {
    let (name, grid) = match raw.split_once(':') {
        Some((name, grid)) => (name, Some(grid)),
        None => (raw, None),
    };
    let cells = |grid: Option<&str>| -> Result<usize, IoError> {
        let raw = grid.ok_or_else(|| {
            malformed(
                file,
                line,
                column,
                format!("'{name}' needs a grid size, e.g. '{name}:4'"),
            )
        })?;
        parse_count(file, line, column, raw, "grid size")
    };
    match name {
        "keep_all" => Ok(SelectionStrategy::KeepAll),
        "top_k" => Ok(SelectionStrategy::TopK),
        "monte_carlo" => Ok(SelectionStrategy::MonteCarlo),
        "top_k_monte_carlo" => Ok(SelectionStrategy::TopKMonteCarlo),
        "spatial_downsampling" => Ok(SelectionStrategy::SpatialDownsampling {
            grid_cells_per_axis: cells(grid)?,
        }),
        "top_k_spatial_downsampling" => Ok(SelectionStrategy::TopKSpatialDownsampling {
            grid_cells_per_axis: cells(grid)?,
        }),
        other => Err(malformed(
            file,
            line,
            column,
            format!("unknown selection strategy '{other}'"),
        )),
    }
}

fn strategy_to_string(strategy: SelectionStrategy) -> String {
    match strategy {
        SelectionStrategy::KeepAll => "keep_all".into(),
        SelectionStrategy::TopK => "top_k".into(),
        SelectionStrategy::MonteCarlo => "monte_carlo".into(),
        SelectionStrategy::TopKMonteCarlo => "top_k_monte_carlo".into(),
        SelectionStrategy::SpatialDownsampling {
            grid_cells_per_axis,
        } => {
            format!("spatial_downsampling:{grid_cells_per_axis}")
        }
        SelectionStrategy::TopKSpatialDownsampling {
            grid_cells_per_axis,
        } => {
            format!("top_k_spatial_downsampling:{grid_cells_per_axis}")
        }
    }
}

pub fn config_to_string(config: &SolverConfig) -> String {
    let anchor = match config.anchor_strategy {
        AnchorStrategy::LowerMiddle => "lower_middle",
    };
    format!(
        "alpha={}\nbeta={}\nnumber_of_branches={}\nmin_candidates_complex_case={}\n\
         candidates_two_trip_case={}\nanchor_strategy={}\nselection_strategy_complex_case={}\n\
         selection_strategy_two_trip_case={}\nexpansion_factor={}\nmax_expansions={}\nmaster_seed={}\n",
        config.alpha,
        config.beta,
        config.number_of_branches,
        config.min_candidates_complex_case,
        config.candidates_two_trip_case,
        anchor,
        strategy_to_string(config.selection_strategy_complex_case),
        strategy_to_string(config.selection_strategy_two_trip_case),
        config.expansion_factor,
        config.max_expansions,
        config.master_seed
    )
}

pub fn read_config(path: impl AsRef<Path>) -> Result<SolverConfig, IoError> {
    let file = path.as_ref().display().to_string();
    let text = fs::read_to_string(path.as_ref()).map_err(|e| IoError::file_error(&file, e))?;
    config_from_str(&text, &file)
}

pub fn write_config(path: impl AsRef<Path>, config: &SolverConfig) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), config_to_string(config)).map_err(|e| IoError::file_error(&file, e))
}

// ---------------------------------------------------------------------------
// report and sweep

pub fn report_to_string(report: &RunReport) -> String {
    let mut out = format!(
        "persons_total={}\npersons_succeeded={}\npersons_failed={}\nmean_deviation_m={}\n\
         median_deviation_m={}\np95_deviation_m={}\ntotal_runtime_s={}\npersons_per_second={}\n",
        report.persons_total(),
        report.outcomes.len(),
        report.failures.len(),
        report.mean_deviation_m(),
        report.median_deviation_m(),
        report.p95_deviation_m(),
        report.total_runtime_s,
        report.persons_per_second()
    );
    for outcome in &report.outcomes {
        out.push_str(&format!(
            "person.{}.deviation_m={}\nperson.{}.wall_time_s={}\n",
            outcome.person_id, outcome.deviation_m, outcome.person_id, outcome.wall_time_s
        ));
    }
    for failure in &report.failures {
        out.push_str(&format!(
            "failure.{}={}\n",
            failure.person_id, failure.reason
        ));
    }
    out
}

pub fn write_report(path: impl AsRef<Path>, report: &RunReport) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), report_to_string(report)).map_err(|e| IoError::file_error(&file, e))
}

pub fn sweep_to_string(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.branches, row.mean_deviation_m, row.runtime_s
        ));
    }
    out
}

pub fn write_sweep(path: impl AsRef<Path>, rows: &[SweepRow]) -> Result<(), IoError> {
    let file = path.as_ref().display().to_string();
    fs::write(path.as_ref(), sweep_to_string(rows)).map_err(|e| IoError::file_error(&file, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LocationId;

    #[test]
    fn location_row_parses_into_id_position_types_potential() {
        let text = "id,x,y,types,potential\n7,120.5,88.0,shop|leisure,3.5\n";
        let locations = locations_from_str(text, "locs.csv").unwrap();
        assert_eq!(locations.len(), 1);
        let l = &locations[0];
        assert_eq!(l.id, LocationId(7));
        assert_eq!(l.position, Point::new(120.5, 88.0));
        assert_eq!(l.types.len(), 2);
        assert!(l.supports(&ActivityType::new("shop")));
        assert!(l.supports(&ActivityType::new("leisure")));
        assert_eq!(l.potential, 3.5);
    }

    #[test]
    fn location_errors_carry_file_line_and_column() {
        // Bad potential: fields start at columns 1,3,5,7,12.
        let text = "id,x,y,types,potential\n8,1,2,shop,abc\n";
        let err = locations_from_str(text, "locs.csv").unwrap_err();
        assert_eq!(
            err,
            IoError::Malformed {
                file: "locs.csv".into(),
                line: 2,
                column: 12,
                message: "invalid potential 'abc'".into()
            }
        );

        let missing_header = "7,1,2,shop,1\n";
        assert!(matches!(
            locations_from_str(missing_header, "locs.csv").unwrap_err(),
            IoError::Malformed {
                line: 1,
                column: 1,
                ..
            }
        ));

        let bad_x = "id,x,y,types,potential\n1,nope,2,shop,1\n";
        assert!(matches!(
            locations_from_str(bad_x, "locs.csv").unwrap_err(),
            IoError::Malformed {
                line: 2,
                column: 3,
                ..
            }
        ));
    }

    #[test]
    fn duplicate_location_ids_are_rejected() {
        let text = "id,x,y,types,potential\n1,0,0,shop,1\n1,5,5,work,2\n";
        assert_eq!(
            locations_from_str(text, "locs.csv").unwrap_err(),
            IoError::DuplicateLocationId {
                file: "locs.csv".into(),
                id: 1
            }
        );
    }

    #[test]
    fn plan_line_parses_fixed_and_unplaced_activities() {
        let text = "p1; home@0,0; 1200; shop; 800; home@0,0\n";
        let plans = plans_from_str(text, "plans.txt").unwrap();
        assert_eq!(plans.len(), 1);
        let plan = &plans[0];
        assert_eq!(plan.person_id, "p1");
        assert_eq!(plan.activities.len(), 3);
        assert_eq!(plan.trips.len(), 2);
        assert!(plan.activities[0].is_fixed());
        assert!(!plan.activities[1].is_fixed());
        assert_eq!(plan.activities[1].activity_type, ActivityType::new("shop"));
        assert!(plan.activities[2].is_fixed());
        assert_eq!(plan.trips[0].distance, 1200.0);
        assert_eq!(plan.trips[1].distance, 800.0);
    }

    #[test]
    fn plan_errors_carry_file_line_and_column() {
        let missing_trip = "p1; home@0,0; shop; home@0,0\n";
        assert!(matches!(
            plans_from_str(missing_trip, "plans.txt").unwrap_err(),
            IoError::Malformed { line: 1, .. }
        ));

        // The bad coordinate pair sits after '@' in the 3rd token.
        let bad_coord = "p1; home@0,0; 1200; shop; 800; home@zero,0\n";
        let err = plans_from_str(bad_coord, "plans.txt").unwrap_err();
        let IoError::Malformed {
            line,
            column,
            message,
            ..
        } = err
        else {
            panic!()
        };
        assert_eq!(line, 1);
        assert_eq!(column, 37);
        assert!(message.contains("x coordinate"));

        let negative = "p1; home@0,0; -5; home@0,0\n";
        assert!(matches!(
            plans_from_str(negative, "plans.txt").unwrap_err(),
            IoError::Malformed { column: 15, .. }
        ));

        let duplicate = "p1; home@0,0; 5; home@0,0\np1; home@0,0; 5; home@0,0\n";
        let err = plans_from_str(duplicate, "plans.txt").unwrap_err();
        let IoError::Malformed { line, message, .. } = err else {
            panic!()
        };
        assert_eq!(line, 2);
        assert!(message.contains("duplicate person id"));
    }

    #[test]
    fn canonical_locations_round_trip_byte_for_byte() {
        let universe = crate::synthgen::generate_locations(
            40,
            Point::new(-2_000.0, -1_000.0),
            Point::new(3_000.0, 4_000.0),
            &[("shop", 0.5), ("leisure", 0.5)]
                .iter()
                .map(|(n, s)| (ActivityType::new(n), *s))
                .collect(),
            crate::synthgen::PotentialLaw::Uniform { min: 0.0, max: 7.0 },
            19,
        )
        .unwrap();
        let first = locations_to_string(&universe);
        let reread = locations_from_str(&first, "mem").unwrap();
        assert_eq!(reread, universe);
        assert_eq!(locations_to_string(&reread), first);
    }

    #[test]
    fn canonical_plans_round_trip_byte_for_byte() {
        let universe = crate::synthgen::generate_locations(
            30,
            Point::new(0.0, 0.0),
            Point::new(5_000.0, 5_000.0),
            &[("shop", 1.0)]
                .iter()
                .map(|(n, s)| (ActivityType::new(n), *s))
                .collect(),
            crate::synthgen::PotentialLaw::Constant(1.0),
            3,
        )
        .unwrap();
        let plans = crate::synthgen::generate_population(
            &crate::synthgen::PopulationSpec {
                n_persons: 15,
                fix_main_activity: true,
                chain_length_law: crate::synthgen::ChainLengthLaw::UniformInt { min: 3, max: 6 },
                seed: 8,
                ..Default::default()
            },
            &universe,
        )
        .unwrap();
        let first = plans_to_string(&plans);
        let reread = plans_from_str(&first, "mem").unwrap();
        assert_eq!(reread, plans);
        assert_eq!(plans_to_string(&reread), first);
    }

    #[test]
    fn canonical_configs_round_trip_byte_for_byte() {
        let configs = [
            SolverConfig::default(),
            SolverConfig {
                alpha: 0.25,
                beta: 2.5,
                number_of_branches: 7,
                selection_strategy_complex_case: SelectionStrategy::SpatialDownsampling {
                    grid_cells_per_axis: 4,
                },
                selection_strategy_two_trip_case: SelectionStrategy::TopKSpatialDownsampling {
                    grid_cells_per_axis: 6,
                },
                expansion_factor: 1.75,
                master_seed: 99,
                ..SolverConfig::default()
            },
        ];
        for config in configs {
            let text = config_to_string(&config);
            let reread = config_from_str(&text, "mem").unwrap();
            assert_eq!(reread, config);
            assert_eq!(config_to_string(&reread), text);
        }
    }

    #[test]
    fn config_text_with_default_values_equals_the_default_config() {
        let text = "alpha=1\nbeta=1\nnumber_of_branches=50\nmin_candidates_complex_case=10\n\
                    candidates_two_trip_case=20\nanchor_strategy=lower_middle\n\
                    selection_strategy_complex_case=top_k_monte_carlo\n\
                    selection_strategy_two_trip_case=top_k\nexpansion_factor=1.5\n\
                    max_expansions=20\nmaster_seed=0\n";
        assert_eq!(
            config_from_str(text, "cfg").unwrap(),
            SolverConfig::default()
        );
        // Partial files fall back to defaults for everything unspecified.
        assert_eq!(
            config_from_str("master_seed=5\n", "cfg")
                .unwrap()
                .number_of_branches,
            50
        );
    }

    #[test]
    fn unknown_config_keys_are_errors() {
        let err = config_from_str("branches=50\n", "cfg").unwrap_err();
        let IoError::Malformed { line, message, .. } = err else {
            panic!()
        };
        assert_eq!(line, 1);
        assert!(message.contains("unknown config key 'branches'"));

        assert!(config_from_str("expansion_factor=0.5\n", "cfg").is_err());
        assert!(config_from_str("selection_strategy_complex_case=best\n", "cfg").is_err());
        assert!(config_from_str(
            "selection_strategy_complex_case=spatial_downsampling\n",
            "cfg"
        )
        .is_err());
        assert!(config_from_str("# comment\n\nmaster_seed=1\n", "cfg").is_ok());
    }

    #[test]
    fn placed_output_lists_every_activity_in_chain_order() {
        use crate::model::{PlacedActivity, PlacedPlan};
        let placed = vec![PlacedPlan {
            person_id: "p1".into(),
            activities: vec![
                PlacedActivity {
                    index_in_chain: 0,
                    activity_type: ActivityType::new("home"),
                    position: Point::new(0.0, 0.0),
                    location_id: None,
                },
                PlacedActivity {
                    index_in_chain: 1,
                    activity_type: ActivityType::new("shop"),
                    position: Point::new(120.5, 88.0),
                    location_id: Some(LocationId(7)),
                },
            ],
            trips: Vec::new(),
            total_score: 0.0,
            total_deviation: 0.0,
        }];
        let text = placed_to_string(&placed);
        assert_eq!(
            text,
            "person_id,activity_index,type,location_id,x,y\n\
             p1,0,home,,0,0\np1,1,shop,7,120.5,88\n"
        );
    }

    #[test]
    fn files_round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let config = SolverConfig {
            master_seed: 3,
            ..SolverConfig::default()
        };
        let path = dir.path().join("solver.cfg");
        write_config(&path, &config).unwrap();
        assert_eq!(read_config(&path).unwrap(), config);

        let missing = read_config(dir.path().join("absent.cfg"));
        assert!(matches!(missing, Err(IoError::File { .. })));
    }
}
