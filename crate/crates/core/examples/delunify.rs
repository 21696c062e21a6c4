//! Removes every lune from a colored diagram with each strategy and prints
//! the template trace.
//!
//!     cargo run --example delunify -- 2 1,1,1,1,1

use delune::coloring::min_palette;
use delune::diagram::{detect_lunes, from_braid, BraidWord};
use delune::rewrite::{delunify, ColoredDiagram, Strategy};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let strands: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(2);
    let word: Vec<i32> = args
        .get(1)
        .map_or("1,1,1,1,1", String::as_str)
        .split(',')
        .map(|x| x.trim().parse().expect("braid letters are integers"))
        .collect();
    let d = from_braid(&BraidWord::new(strands, word).expect("valid braid word")).unwrap();
    let p = [3, 5, 7, 11, 13]
        .into_iter()
        .find(|&p| min_palette(&d, p).is_ok())
        .expect("the closure is p-colorable for a small prime");
    let cd = ColoredDiagram::new(d.clone(), min_palette(&d, p).unwrap().witness).unwrap();
    println!("mod {p}: {} crossings, {} lunes, palette {:?}", d.crossing_count(), detect_lunes(&d).len(), cd.palette());

    for s in Strategy::ALL {
        let out = delunify(&cd, s).expect("delunification succeeds");
        println!(
            "{s:>9}: {} -> {} crossings (bound +{}, within {}), palette {:?}",
            out.crossings_before,
            out.crossings_after,
            out.bound,
            out.within_bound,
            out.result.palette()
        );
        for t in &out.trace {
            println!("           {} on {:?}: {:+}", t.template, t.site, t.delta);
        }
    }
}
