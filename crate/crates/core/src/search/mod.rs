//! Searches over lune-free diagrams: basic polyhedra, crossing-change orbits,
//! and the least-crossing and minimal-palette sweeps built on them.

mod enumerate;
mod sweep;

pub use enumerate::{
    enumerate_basic_polyhedra, enumerate_basic_polyhedra_with_cap, enumerate_maps, orbit, orbit_classes, EnumError,
    FaceRule, FlatDiagram, DEFAULT_ENUM_CAP,
};
pub use sweep::{
    algorithm1, algorithm2, lfc_search, Alg2Result, SearchError, SearchRecord, SweepOptions, Witness, ALG2_CAP,
    DEFAULT_SWEEP_CAP,
};
