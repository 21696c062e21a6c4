//! Grey sets and the rainbow index of small primes.
//!
//!     cargo run --release --example grey_sets -- 23

use delune::greyset::{grey_index, is_grey, is_grey_by_gaps};

fn main() {
    let max: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(19);
    let s = [0, 1, 3];
    println!("{s:?} grey mod 7: {} (gaps route: {})", is_grey(&s, 7).unwrap(), is_grey_by_gaps(&s, 7));
    for p in (3..=max).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        let r = grey_index(p).expect("within the cap");
        println!(
            "p = {p:2}: grey index {}, rainbow index {}, witness {:?} ({} sets scanned)",
            r.grey_index, r.algmincol, r.witness, r.subsets_scanned
        );
    }
}
