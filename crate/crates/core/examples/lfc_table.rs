//! Least crossing number of a lune-free diagram for small knots.
//!
//!     cargo run --release --example lfc_table

use std::time::Instant;

use delune::invariants::ReferenceTable;
use delune::search::{lfc_search, SweepOptions};

fn main() {
    let table = ReferenceTable::bundled();
    for knot in ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_7", "8_18", "8_19", "9_40"] {
        let t = Instant::now();
        let r = lfc_search(table, knot, &SweepOptions::new(10)).expect("knot is bundled");
        let lfc = r.lfc_bound.map_or("none <= 10".to_string(), |n| n.to_string());
        println!("{knot:>5}: LFC = {lfc:>3} ({} hits, {:.2?})", r.hits, t.elapsed());
    }
}
