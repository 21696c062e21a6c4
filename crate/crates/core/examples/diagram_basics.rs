//! Parses a PD diagram and lists its faces, lunes and maximal tassels.
//!
//!     cargo run --example diagram_basics -- path/to/diagram.json

use delune::diagram::{detect_lunes, detect_maximal_tassels, faces, parse_diagram};

const FIGURE_EIGHT: &str = "X 4 2 5 1 1\nX 8 6 1 5 1\nX 6 3 7 4 -1\nX 2 7 3 8 -1\n";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => FIGURE_EIGHT.to_string(),
    };
    let d = parse_diagram(&text).expect("valid diagram");
    println!("{} crossings, {} components, writhe {}", d.crossing_count(), d.component_count(), d.writhe());
    let fs = faces(&d);
    let degrees: Vec<usize> = fs.iter().map(|f| f.degree()).collect();
    println!("{} faces with degrees {degrees:?}", fs.len());
    for lune in detect_lunes(&d) {
        println!("lune on crossings {:?}", lune.crossings());
    }
    for site in detect_maximal_tassels(&d) {
        println!("tassel k={} sign {} cyclic {} on {:?}", site.k, site.sign, site.cyclic, site.crossings);
    }
}
