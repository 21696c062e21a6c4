//! The lower-half sequence, its closed form and the torus knot bound.
//!
//!     cargo run --example lower_half -- 1000001

use delune::lowerhalf::{closed_form, lh_sequence, torus_bound};

fn main() {
    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_001);
    let r = lh_sequence(n).expect("n is in range");
    println!("n = {n}: sequence {:?}, l = {}, t = {}", r.seq, r.l, r.t);
    println!("closed form (l, t) = {:?}", closed_form(n).expect("n is in range"));
    for p in [11u64, 13, 17, 19, 23, 29, 31, 101, 1009] {
        println!("torus bound for p = {p:2}: {}", torus_bound(p).unwrap());
    }
}
