//! Determinant, normalised bracket and recognition of the bundled diagrams.
//!
//!     cargo run --example invariants

use delune::diagram::parse_diagram;
use delune::invariants::{determinant, normalized_f_sweep, ReferenceTable};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/diagrams");
    for name in ["trefoil", "figure_eight", "knot_5_2"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}.json")).expect("bundled diagram");
        let d = parse_diagram(&text).expect("valid diagram");
        let f = normalized_f_sweep(&d);
        println!("{name}: det {}, f = {f}", determinant(&d));
        if let Some(jones) = f.to_jones() {
            println!("  jones (t-exponent, coefficient): {jones:?}");
        }
        println!("  recognised as {}", ReferenceTable::bundled().recognize(&d).label());
    }
}
