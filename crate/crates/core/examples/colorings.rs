//! The space of p-colorings of a knot and its smallest palette.
//!
//!     cargo run --example colorings -- 7

use delune::coloring::{count_colorings, min_palette};
use delune::diagram::parse_diagram;
use delune::invariants::determinant;

fn main() {
    let p: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/diagrams/knot_5_2.json");
    let d = parse_diagram(&std::fs::read_to_string(path).unwrap()).unwrap();
    println!("5_2 has determinant {}", determinant(&d));
    println!("{} colorings mod {p}", count_colorings(&d, p));
    match min_palette(&d, p) {
        Ok(r) => println!(
            "min palette {} (space of dimension {}, {} classes), witness arcs {:?}",
            r.size, r.dimension, r.classes, r.witness.colors
        ),
        Err(e) => println!("no palette: {e}"),
    }
}
