//! Crossing budgets of the chunked tassel plan against the Teneva game.
//!
//!     cargo run --example strategies -- 40

use delune::lowerhalf::lh_sequence;
use delune::rewrite::schedule::{cor22_schedule, teneva_full_cost};
use delune::rewrite::{compare_strategies, cor22_extra, teneva_bound, teneva_leaves};

fn main() {
    let max: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(24);
    println!("  n  chunks            plan  game  bound  leaves");
    for n in 6..=max {
        let chunks = cor22_schedule(n as usize).unwrap();
        let (leaves, moves) = teneva_leaves(n as usize);
        println!(
            "{n:3}  {:<16} {:4}  {:4}  {:5}  {:?} after {moves} moves (l = {})",
            format!("{chunks:?}"),
            cor22_extra(n).unwrap(),
            teneva_full_cost(n as usize),
            teneva_bound(n).unwrap(),
            leaves,
            lh_sequence(n).unwrap().l,
        );
    }
    let r = compare_strategies(100_000).unwrap();
    println!("plan within the game bound for n in [12, 100000]: {} checked, {} violations", r.checked, r.violations.len());
}
