//! Colored local rewriting: Reidemeister moves that carry a coloring, the
//! delunification templates, the crossing-count schedules and the drivers.

pub mod colored;
pub mod discover;
pub mod driver;
pub mod schedule;
pub mod splice;
pub mod tangle;
pub mod templates;

pub use driver::{delunify, teneva_transform, Delunified, StepKind, Strategy, TraceRecord};
pub use colored::{colored_move, transport, ColoredDiagram, Move};
pub use schedule::{compare_strategies, cor22_extra, cor22_schedule, teneva_bound, teneva_leaves, StrategyReport};
pub use splice::{apply_template, placements, Applied, Placement};
pub use tangle::{certify, certify_against, certify_with, BracketRoute, Certificate, CertifyError, Tangle};
pub use templates::{template, teneva_template, SiteShape, Template, TemplateId};

use crate::coloring::ColoringError;
use crate::diagram::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("site mismatch: {0}")]
    SiteMismatch(String),
    #[error("post-check failed: {0}")]
    PostCheck(String),
    #[error("a Teneva transformation needs at least 5 crossings, got {0}")]
    TenevaTooSmall(usize),
    #[error("lune count did not decrease ({before} -> {after}) at site {site}")]
    NoProgress { before: usize, after: usize, site: String },
    #[error("n must be at least {min}, got {n}")]
    TooSmall { n: u64, min: u64 },
}
