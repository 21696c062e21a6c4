mod common;

use std::collections::BTreeMap;

use delune::coloring::{apply_affine, coloring_space, count_colorings, min_palette, AffineMap, Coloring};
use delune::diagram::{canonical_code, Diagram};
use delune::invariants::determinant;
use num_bigint::BigInt;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Every coloring in the span of the basis, trivial ones included.
fn all_colorings(d: &Diagram, p: u64) -> Vec<Vec<u64>> {
    let basis = coloring_space(d, p).unwrap();
    let arcs = d.arcs().len();
    let mut out = vec![vec![0u64; arcs]];
    for b in &basis {
        out = out
            .iter()
            .flat_map(|v| {
                (0..p).map(move |t| v.iter().zip(b).map(|(x, y)| (x + t * y) % p).collect::<Vec<u64>>())
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(common::config(150))]

    #[test]
    fn count_is_a_power_of_p(d in common::diagram(12), i in 0usize..5) {
        let p = PRIMES[i];
        let dim = coloring_space(&d, p).unwrap().len() as u32;
        prop_assert_eq!(count_colorings(&d, p), BigInt::from(p).pow(dim));
    }

    #[test]
    fn affine_images_are_colorings_with_as_many_colors(
        d in common::diagram(10), i in 0usize..5, mu in 1u64..13, lambda in 0u64..13,
    ) {
        let p = PRIMES[i];
        let (mu, lambda) = (1 + mu % (p - 1), lambda % p);
        let f = AffineMap::new(mu, lambda, p).unwrap();
        for colors in all_colorings(&d, p).into_iter().take(400) {
            let c = Coloring { modulus: p, colors };
            let img = apply_affine(&c, &f).unwrap();
            prop_assert!(img.validate(&d).is_ok());
            prop_assert_eq!(img.palette().len(), c.palette().len());
        }
    }

    #[test]
    fn nontrivial_colorings_leave_the_lower_half(d in common::diagram(10), i in 0usize..5) {
        let p = PRIMES[i];
        prop_assume!(determinant(&d) != 0);
        let k = (p - 1) / 2;
        for colors in all_colorings(&d, p).into_iter().take(2000) {
            let c = Coloring { modulus: p, colors };
            if !c.is_trivial() {
                prop_assert!(c.palette().iter().any(|&x| x > k), "palette {:?} inside the lower half", c.palette());
            }
        }
    }

    #[test]
    fn min_palette_ignores_labels(d in common::diagram(10), i in 0usize..5, shift in 1u32..40) {
        let p = PRIMES[i];
        let r = d.relabeled(|e| e * 3 + shift).permuted(&(0..d.crossing_count()).rev().collect::<Vec<_>>());
        prop_assert_eq!(canonical_code(&r), canonical_code(&d));
        match (min_palette(&d, p), min_palette(&r, p)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.size, b.size);
                prop_assert_eq!(a.dimension, b.dimension);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.map(|x| x.size), b.map(|x| x.size)),
        }
    }

    #[test]
    fn min_palette_is_the_least_over_all_colorings(d in common::diagram(9), i in 0usize..4) {
        let p = PRIMES[i];
        let Ok(r) = min_palette(&d, p) else { return Ok(()) };
        let all = all_colorings(&d, p);
        prop_assume!(all.len() <= 20_000);
        let least = all
            .into_iter()
            .map(|colors| Coloring { modulus: p, colors })
            .filter(|c| !c.is_trivial())
            .map(|c| c.palette().len())
            .min()
            .unwrap();
        prop_assert_eq!(r.size, least);
        let used: BTreeMap<u64, usize> = r.witness.colors.iter().fold(BTreeMap::new(), |mut m, &c| {
            *m.entry(c).or_default() += 1;
            m
        });
        prop_assert_eq!(used.len(), r.size);
    }
}
