//! Minimal palettes over lune-free diagrams, with certificates from the
//! rainbow index.
//!
//!     cargo run --release --example algorithm1 -- 5_2 7 9

use delune::invariants::ReferenceTable;
use delune::search::{algorithm1, SweepOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let knot = args.first().map_or("5_2", String::as_str);
    let p: u64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let n_max: usize = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(9);
    let r = algorithm1(ReferenceTable::bundled(), knot, p, &SweepOptions::new(n_max)).expect("valid search");
    println!("{knot} mod {p}: palette {:?}, certificate {}", r.best_palette, r.certificate);
    println!("LFC <= {:?}, LFC_{p} <= {:?}, C_{p} <= {:?}", r.lfc_bound, r.lfc_p_bound, r.c_p_bound);
    if let Some(w) = &r.witness {
        println!("witness: {} crossings, colors {:?}", w.diagram.crossing_count(), w.coloring.colors);
    }
}
