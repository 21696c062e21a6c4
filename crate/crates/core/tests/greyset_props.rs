mod common;

use delune::coloring::min_palette;
use delune::greyset::{grey_index, is_grey, is_grey_by_gaps, rainbow_index};
use delune::linalg::inv_mod;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn subsets(p: u64, size: usize) -> Vec<Vec<u64>> {
    fn rec(from: u64, p: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in from..p {
            cur.push(x);
            rec(x + 1, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, p, size, &mut Vec::new(), &mut out);
    out
}

#[test]
fn small_sets_are_grey() {
    for p in PRIMES {
        for s in 1..=2 {
            assert!(subsets(p, s).iter().all(|t| is_grey(t, p).unwrap()), "p={p} size {s}");
        }
        if p >= 5 {
            assert!(subsets(p, 3).iter().all(|t| is_grey(t, p).unwrap()), "p={p} size 3");
        }
    }
}

/// Grey index by scanning every subset of Z/p, without the {0, 1}
/// normalization the library scan relies on.
fn grey_index_unnormalized(p: u64) -> usize {
    (1..=p as usize).take_while(|&s| subsets(p, s).iter().all(|t| is_grey(t, p).unwrap())).last().unwrap()
}

#[test]
fn normalized_scan_matches_the_full_scan() {
    for p in PRIMES {
        assert_eq!(grey_index(p).unwrap().grey_index, grey_index_unnormalized(p), "p={p}");
    }
}

proptest! {
    #![proptest_config(common::config(300))]

    #[test]
    fn greyness_is_affine_invariant(i in 0usize..5, bits in any::<u16>(), a in 0u64..13, b in 1u64..13) {
        let p = PRIMES[i];
        let s: Vec<u64> = (0..p).filter(|x| bits >> x & 1 == 1).collect();
        prop_assume!(s.len() >= 2);
        // send s[0] to 0 and s[1] to 1
        let (x0, x1) = (s[0], s[1]);
        let mu = inv_mod((x1 + p - x0) % p, p);
        let norm: Vec<u64> = s.iter().map(|&x| (x + p - x0) % p * mu % p).collect();
        prop_assert!(norm.contains(&0) && norm.contains(&1));
        prop_assert_eq!(is_grey(&s, p).unwrap(), is_grey(&norm, p).unwrap());
        let (a, b) = (a % p, 1 + b % (p - 1));
        let moved: Vec<u64> = s.iter().map(|&x| (b * x + a) % p).collect();
        prop_assert_eq!(is_grey(&s, p).unwrap(), is_grey(&moved, p).unwrap());
        prop_assert_eq!(is_grey(&s, p).unwrap(), is_grey_by_gaps(&s, p));
    }

    #[test]
    fn minimal_palettes_are_not_grey(d in common::diagram(12), i in 0usize..5) {
        let p = PRIMES[i];
        if let Ok(r) = min_palette(&d, p) {
            let palette: Vec<u64> = r.witness.palette().into_iter().collect();
            prop_assert!(!is_grey(&palette, p).unwrap());
            prop_assert!(rainbow_index(p).unwrap() <= r.size);
        }
    }
}
