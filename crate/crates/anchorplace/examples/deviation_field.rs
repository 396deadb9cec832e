//! The deviation landscape of a two-trip segment.
//!
//! For observed distances d1 from S and d2 from E, every point c in the
//! plane has a deviation |d1 - |S-c|| + |d2 - |c-E||. The field has two
//! zero-valued wells at the circle intersections (one well, or a ring, in
//! degenerate configurations). This example scans a grid, prints an ASCII
//! rendering, and verifies the wells sit where the closed form says.
//!
//! Run with: cargo run --example deviation_field

use anchorplace::geometry::circle_intersections;
use anchorplace::oracle::{deviation_field, grid_min_deviation};
use anchorplace::Point;

fn main() {
    let s = Point::new(0.0, 0.0);
    let e = Point::new(6.0, 0.0);
    let (d1, d2) = (1.0, 6.0);
    let bbox = (Point::new(-2.0, -2.0), Point::new(2.0, 2.0));
    let resolution = 0.05;

    let ideal = circle_intersections(s, d1, e, d2);
    println!("analytic ideal points:");
    for p in &ideal.points {
        println!("  ({:.4}, {:.4})", p.x, p.y);
    }

    // One grid minimum per half-plane: the field is mirror-symmetric in y.
    for (name, lo, hi) in [
        ("upper", Point::new(bbox.0.x, resolution), bbox.1),
        ("lower", bbox.0, Point::new(bbox.1.x, -resolution)),
    ] {
        let (at, dev) = grid_min_deviation(&s, d1, &e, d2, (lo, hi), resolution);
        println!(
            "{name} grid minimum: ({:.2}, {:.2}) deviation {dev:.4}",
            at.x, at.y
        );
        assert!(dev < resolution, "well depth must beat the grid resolution");
    }

    // Coarse ASCII rendering, darker = higher deviation.
    let coarse = 0.2;
    let cells = deviation_field(&s, d1, &e, d2, bbox, coarse);
    let per_row = ((bbox.1.x - bbox.0.x) / coarse) as usize + 1;
    let shades = [' ', '.', ':', '+', '*', '#'];
    println!("\nfield around S (x in [-2, 2], y in [-2, 2]):");
    for row in cells.chunks(per_row).rev() {
        let line: String = row
            .iter()
            .map(|c| shades[(c.deviation / 1.2).min(5.0) as usize])
            .collect();
        println!("  |{line}|");
    }
}
