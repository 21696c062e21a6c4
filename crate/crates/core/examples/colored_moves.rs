//! Reidemeister moves that carry a coloring along.
//!
//!     cargo run --example colored_moves

use delune::coloring::min_palette;
use delune::diagram::{faces, BraidWord, from_braid};
use delune::rewrite::{colored_move, ColoredDiagram, Move};

fn show(step: &str, cd: &ColoredDiagram) {
    println!("{step:>10}: {} crossings, palette {:?}", cd.diagram.crossing_count(), cd.palette());
}

fn main() {
    let d = from_braid(&BraidWord::new(2, vec![1, 1, 1]).unwrap()).unwrap();
    let c = min_palette(&d, 3).unwrap().witness;
    let mut cd = ColoredDiagram::new(d, c).unwrap();
    show("trefoil", &cd);

    let edge = cd.diagram.edges()[0];
    cd = colored_move(&cd, Move::R1Add { edge, left: true, positive: false }).unwrap();
    show("kink", &cd);

    let f = faces(&cd.diagram).into_iter().max_by_key(|f| f.degree()).unwrap();
    let (over, under) = (f.incidences[0].edge, f.incidences[1].edge);
    cd = colored_move(&cd, Move::R2Add { over, under }).unwrap();
    show("clasp", &cd);
}
