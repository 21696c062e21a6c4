//! Counts basic polyhedra by crossing number.
//!
//!     cargo run --release --example enum_polyhedra -- 11

use std::time::Instant;

use delune::search::enumerate_basic_polyhedra_with_cap;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    for n in 6..=max {
        let t = Instant::now();
        let polys = enumerate_basic_polyhedra_with_cap(n, 13).expect("within the cap");
        println!("n = {n:2}: {:3} basic polyhedra ({:.2?})", polys.len(), t.elapsed());
    }
}
