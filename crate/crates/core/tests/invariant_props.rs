mod common;

use delune::coloring::{coloring_space, Coloring};
use delune::diagram::{faces, Diagram};
use delune::invariants::{bracket, bracket_sweep, determinant, normalized_f, normalized_f_sweep};
use delune::rewrite::{colored_move, ColoredDiagram, Move};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trivially_colored(d: Diagram) -> ColoredDiagram {
    let c = Coloring { modulus: 3, colors: vec![0; d.arcs().len()] };
    ColoredDiagram::new(d, c).unwrap()
}

/// A random Reidemeister move that applies to `d`, if one is found, with the
/// kind of move (0 to 4) that was used.
fn random_move(cd: &ColoredDiagram, rng: &mut ChaCha8Rng) -> Option<(usize, ColoredDiagram)> {
    let d = &cd.diagram;
    let fs = faces(d);
    for _ in 0..50 {
        let kind = rng.gen_range(0..5);
        let mv = match kind {
            0 => Move::R1Add { edge: *d.edges().choose(rng)?, left: rng.gen(), positive: rng.gen() },
            1 => Move::R1Remove { crossing: rng.gen_range(0..d.crossing_count().max(1)) },
            2 => {
                let f = fs.choose(rng)?;
                let a = f.incidences.choose(rng)?.edge;
                let b = f.incidences.choose(rng)?.edge;
                Move::R2Add { over: a, under: b }
            }
            3 => {
                let n = d.crossing_count().max(1);
                Move::R2Remove { a: rng.gen_range(0..n), b: rng.gen_range(0..n) }
            }
            _ => {
                let tri: Vec<_> = fs.iter().filter(|f| f.degree() == 3).collect();
                let c = tri.choose(rng)?.crossings();
                Move::R3 { crossings: [c[0], c[1], c[2]] }
            }
        };
        if let Ok(next) = colored_move(cd, mv) {
            return Some((kind, next));
        }
    }
    None
}

#[test]
fn normalized_bracket_survives_single_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::SEED);
    let mut total_kinds = [0; 5];
    for d in common::seed_diagrams() {
        let f = normalized_f(&d).unwrap();
        let cd = trivially_colored(d);
        let mut done = 0;
        let mut kinds = [0; 5];
        for _ in 0..2000 {
            if done == 200 {
                break;
            }
            let Some((kind, next)) = random_move(&cd, &mut rng) else { continue };
            kinds[kind] += 1;
            assert_eq!(normalized_f(&next.diagram).unwrap(), f);
            assert_eq!(faces(&next.diagram).len(), next.diagram.crossing_count() + 2);
            done += 1;
        }
        assert_eq!(done, 200);
        // R1 and R2 additions always exist; removals and R3 depend on the seed
        assert!(kinds[0] > 0 && kinds[2] > 0, "{kinds:?}");
        total_kinds.iter_mut().zip(kinds).for_each(|(t, k)| *t += k);
    }
    // the seeds have no kinks or clasps to remove
    assert!(total_kinds[4] > 0, "no R3 move applied: {total_kinds:?}");
}

#[test]
fn normalized_bracket_survives_move_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(common::SEED + 1);
    let mut kinds = [0; 5];
    for d in common::seed_diagrams() {
        let f = normalized_f_sweep(&d);
        let det = determinant(&d);
        let mut cd = trivially_colored(d);
        for _ in 0..40 {
            if let Some((kind, next)) = random_move(&cd, &mut rng) {
                if next.diagram.crossing_count() <= 20 {
                    kinds[kind] += 1;
                    cd = next;
                }
            }
        }
        assert_eq!(normalized_f_sweep(&cd.diagram), f);
        assert_eq!(determinant(&cd.diagram), det);
    }
    assert!(kinds.iter().all(|&k| k > 0), "every move kind is exercised: {kinds:?}");
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn determinant_detects_p_colorability(d in common::diagram(12), i in 0usize..5) {
        let p = [3u64, 5, 7, 11, 13][i];
        let dim = coloring_space(&d, p).unwrap().len();
        prop_assert_eq!(determinant(&d).is_multiple_of(p), dim > 1);
    }

    #[test]
    fn state_sum_and_sweep_agree(d in common::diagram(12)) {
        prop_assert_eq!(bracket(&d).unwrap(), bracket_sweep(&d));
    }
}
