pub mod cache;
pub mod coloring;
pub mod diagram;
pub mod invariants;
pub mod linalg;
pub mod greyset;
pub mod lowerhalf;
pub mod search;
pub mod rewrite;
