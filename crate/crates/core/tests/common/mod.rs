#![allow(dead_code)]

use delune::coloring::{min_palette, Coloring};
use delune::diagram::{from_braid, BraidWord, Diagram};
use delune::rewrite::ColoredDiagram;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 0x5e_ed0f_de1e;

/// Fixed seed and no regression files, so every run sees the same cases.
pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// Braid words on 2 to 4 strands with at most `max_len` letters.
pub fn braid_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(move |s| {
        let letter = (1..s as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        (Just(s), prop::collection::vec(letter, 1..=max_len))
    })
}

/// Closures of random braid words; split closures are skipped.
pub fn diagram(max_crossings: usize) -> impl Strategy<Value = Diagram> {
    braid_word(max_crossings)
        .prop_filter_map("split closure", |(s, w)| from_braid(&BraidWord::new(s, w).ok()?).ok())
}

/// The minimal-palette coloring for the first p in 3, 5, 7, 11, 13 that
/// colors the diagram, else the trivial coloring modulo 3.
pub fn colored(d: Diagram) -> ColoredDiagram {
    let c = [3u64, 5, 7, 11, 13]
        .iter()
        .find_map(|&p| min_palette(&d, p).ok().map(|r| r.witness))
        .unwrap_or_else(|| Coloring { modulus: 3, colors: vec![0; d.arcs().len()] });
    ColoredDiagram::new(d, c).expect("witness colorings are valid")
}

pub fn colored_diagram(max_crossings: usize) -> impl Strategy<Value = ColoredDiagram> {
    diagram(max_crossings).prop_map(colored)
}

pub fn braid(strands: usize, word: &[i32]) -> Diagram {
    from_braid(&BraidWord::new(strands, word.to_vec()).unwrap()).unwrap()
}

/// A few knots and links used as seeds for move sequences.
pub fn seed_diagrams() -> Vec<Diagram> {
    vec![
        braid(2, &[1, 1, 1]),
        braid(3, &[1, -2, 1, -2]),
        braid(2, &[1, 1]),
        braid(2, &[1, 1, 1, 1, 1]),
        braid(3, &[1, 1, 1, 2, -1, 2]),
        braid(3, &[1, 1, -2, 1, -2]),
        braid(3, &[1, 2, 1, 2, 1, 2, 1, 2]),
        braid(4, &[1, -2, 3, -2, 1, -2, 3]),
        braid(3, &[-1, 2, -1, 2, -1, 2]),
        braid(4, &[1, 2, 3, 1, 2, 3, -2]),
    ]
}
