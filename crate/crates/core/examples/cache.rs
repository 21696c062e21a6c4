//! The results cache used by the command line tool.
//!
//!     cargo run --example cache

use delune::cache::{request_digest, Cache};
use delune::lowerhalf::lh_sequence;
use serde_json::json;

fn main() {
    let dir = std::env::temp_dir().join(format!("delune-example-{}", std::process::id()));
    let cache = Cache::open(&dir).expect("cache directory");
    let params = json!({ "n": 17 });
    println!("key {}", request_digest("lh", &params));
    for _ in 0..2 {
        let (v, hit) = cache
            .get_or_compute("lh", &params, || serde_json::to_value(lh_sequence(17).map_err(|e| e.to_string())?).map_err(|e| e.to_string()))
            .unwrap();
        println!("{} {v}", if hit { "hit " } else { "miss" });
    }
    cache.clear().unwrap();
    let _ = std::fs::remove_dir(&dir);
}
