//! Sweeps over lune-free diagrams: the least-crossing search for a knot and
//! the minimal-palette search over crossing-change orbits.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_maps, FaceRule, FlatDiagram};
use crate::coloring::{min_palette, Coloring};
use crate::diagram::Diagram;
use crate::greyset::{rainbow_index, GreyError};
use crate::invariants::{determinant, Fingerprint, ReferenceTable};
use crate::linalg::is_prime;

/// Largest crossing number a sweep will enumerate by default.
pub const DEFAULT_SWEEP_CAP: usize = 12;
/// Largest diagram whose full crossing-change orbit algorithm2 will scan.
pub const ALG2_CAP: usize = 16;
const BLOCK: u64 = 1 << 12;

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("knot {0} is not in the reference table")]
    UnknownKnot(String),
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("rainbow index: {0}")]
    Grey(#[from] GreyError),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

/// Best coloring found so far; ordered by palette size, then by position in
/// the sweep, so the merge is independent of scheduling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub palette: usize,
    pub n: usize,
    pub flat: String,
    pub assignment: u64,
    pub diagram: Diagram,
    pub coloring: Coloring,
}

impl Witness {
    fn key(&self) -> (usize, usize, &str, u64) {
        (self.palette, self.n, &self.flat, self.assignment)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub knot: String,
    pub p: Option<u64>,
    pub n_max: usize,
    pub best_palette: Option<usize>,
    pub witness: Option<Witness>,
    /// Least n with a lune-free diagram of the knot.
    pub lfc_bound: Option<usize>,
    /// Least n of a lune-free diagram supporting the best palette.
    pub lfc_p_bound: Option<usize>,
    /// Least n of a diagram supporting a p-minimal coloring; set only when
    /// the palette is certified minimal.
    pub c_p_bound: Option<usize>,
    pub rainbow_index: Option<usize>,
    pub certificate: bool,
    /// The knot shares its fingerprint with another table entry, so hits
    /// are only possibly the target.
    pub possible: bool,
    /// Orbit diagrams recognised as the target.
    pub hits: u64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct Acc {
    lfc: Option<usize>,
    best: Option<Witness>,
    hits: u64,
}

impl Acc {
    fn merge(mut self, o: Acc) -> Acc {
        self.lfc = match (self.lfc, o.lfc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.best = match (self.best, o.best) {
            (Some(a), Some(b)) => Some(if b.key() < a.key() { b } else { a }),
            (a, b) => a.or(b),
        };
        self.hits += o.hits;
        self
    }
}

/// Resume point: the next assignment of the flat diagram with code `flat`
/// at crossing number `n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    knot: String,
    p: Option<u64>,
    n: usize,
    flat: String,
    next: u64,
    acc: Acc,
}

/// Sweep configuration shared by `algorithm1` and `lfc_search`.
#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub n_max: usize,
    pub cap: usize,
    pub checkpoint: Option<PathBuf>,
}

impl SweepOptions {
    pub fn new(n_max: usize) -> Self {
        SweepOptions { n_max, cap: DEFAULT_SWEEP_CAP, checkpoint: None }
    }
}

struct Target<'a> {
    name: &'a str,
    fp: &'a Fingerprint,
    possible: bool,
}

fn target<'a>(table: &'a ReferenceTable, name: &'a str) -> Result<Target<'a>, SearchError> {
    let e = table.get(name).ok_or_else(|| SearchError::UnknownKnot(name.to_string()))?;
    let possible = table.ambiguity_groups().iter().any(|g| g.iter().any(|x| x == name));
    Ok(Target { name, fp: &e.fingerprint, possible })
}

fn matches(d: &Diagram, t: &Target) -> bool {
    // cheap filters before the bracket
    d.component_count() == t.fp.components && determinant(d) == t.fp.det && Fingerprint::of(d) == *t.fp
}

/// Minimal palette sweep: for n ascending, every crossing assignment of every lune-free
/// flat diagram is recognised, and hits of the target are minimally
/// p-colored. Stops after the first n at which the palette reaches the
/// rainbow index.
pub fn algorithm1(table: &ReferenceTable, knot: &str, p: u64, opts: &SweepOptions) -> Result<SearchRecord, SearchError> {
    if p < 3 || !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    let rainbow = rainbow_index(p)?;
    sweep(table, knot, Some((p, rainbow)), opts)
}

/// Least n ≤ n_max with a lune-free diagram of the knot.
pub fn lfc_search(table: &ReferenceTable, knot: &str, opts: &SweepOptions) -> Result<SearchRecord, SearchError> {
    sweep(table, knot, None, opts)
}

fn sweep(
    table: &ReferenceTable,
    knot: &str,
    color: Option<(u64, usize)>,
    opts: &SweepOptions,
) -> Result<SearchRecord, SearchError> {
    if opts.n_max > opts.cap {
        return Err(SearchError::CapExceeded { what: "n_max", value: opts.n_max, cap: opts.cap });
    }
    let t = target(table, knot)?;
    let p = color.map(|c| c.0);
    let mut resume = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, knot, p)?,
        None => None,
    };
    let mut acc = resume.as_ref().map(|c| c.acc.clone()).unwrap_or_default();
    let start_n = resume.as_ref().map_or(1, |c| c.n);
    for n in start_n..=opts.n_max {
        // all lune-free maps, composites included, so the bounds stay sound
        let flats: Vec<FlatDiagram> = enumerate_maps(n, FaceRule::Strict)
            .into_iter()
            .map(|(code, partner)| FlatDiagram { n, partner, code })
            .collect();
        for f in &flats {
            let mut first = 0;
            if let Some(c) = &resume {
                if f.code < c.flat {
                    continue;
                }
                if f.code == c.flat {
                    first = c.next;
                }
            }
            resume = None;
            let total = 1u64 << n;
            let mut a = first;
            while a < total {
                let end = (a + BLOCK).min(total);
                let block = (a..end)
                    .into_par_iter()
                    .map(|x| visit(f, x, &t, color))
                    .reduce(Acc::default, Acc::merge);
                acc = acc.merge(block);
                a = end;
                if let Some(path) = &opts.checkpoint {
                    save_checkpoint(
                        path,
                        &Checkpoint { knot: knot.into(), p, n, flat: f.code.clone(), next: a, acc: acc.clone() },
                    )?;
                }
            }
        }
        let done = match color {
            None => acc.lfc.is_some(),
            Some((_, rainbow)) => acc.best.as_ref().is_some_and(|w| w.palette == rainbow),
        };
        if done {
            break;
        }
    }
    if let Some(path) = &opts.checkpoint {
        let _ = std::fs::remove_file(path);
    }
    let best_palette = acc.best.as_ref().map(|w| w.palette);
    let rainbow = color.map(|c| c.1);
    let certificate = best_palette.is_some() && best_palette == rainbow;
    let lfc_p_bound = acc.best.as_ref().map(|w| w.n);
    Ok(SearchRecord {
        knot: t.name.to_string(),
        p,
        n_max: opts.n_max,
        best_palette,
        lfc_bound: acc.lfc,
        lfc_p_bound,
        c_p_bound: if certificate { lfc_p_bound } else { None },
        rainbow_index: rainbow,
        certificate,
        possible: t.possible,
        hits: acc.hits,
        witness: acc.best,
    })
}

fn visit(f: &FlatDiagram, a: u64, t: &Target, color: Option<(u64, usize)>) -> Acc {
    let d = f.realize(a);
    if !matches(&d, t) {
        return Acc::default();
    }
    let best = color.and_then(|(p, _)| {
        let r = min_palette(&d, p).ok()?;
        Some(Witness {
            palette: r.size,
            n: f.n,
            flat: f.code.clone(),
            assignment: a,
            coloring: r.witness,
            diagram: d,
        })
    });
    Acc { lfc: Some(f.n), best, hits: 1 }
}

fn load_checkpoint(path: &Path, knot: &str, p: Option<u64>) -> Result<Option<Checkpoint>, SearchError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(SearchError::Checkpoint(e.to_string())),
    };
    let c: Checkpoint = serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
    if c.knot != knot || c.p != p {
        return Err(SearchError::Checkpoint(format!("{} belongs to a different sweep", path.display())));
    }
    Ok(Some(c))
}

fn save_checkpoint(path: &Path, c: &Checkpoint) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    let json = serde_json::to_string(c).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
    std::fs::write(&tmp, json).and_then(|_| std::fs::rename(&tmp, path)).map_err(|e| SearchError::Checkpoint(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alg2Result {
    pub knot: String,
    pub p: u64,
    /// Least palette over orbit members recognised as the knot; `None` when
    /// no member is the knot or none is p-colorable.
    pub best_palette: Option<usize>,
    /// Crossings switched (bit i = crossing i) in the best member.
    pub switched: Option<u64>,
    pub coloring: Option<Coloring>,
    pub hits: u64,
}

/// Minimum palette over the crossing-change orbit of `d`.
pub fn algorithm2(table: &ReferenceTable, d: &Diagram, knot: &str, p: u64) -> Result<Alg2Result, SearchError> {
    if p < 3 || !is_prime(p) {
        return Err(SearchError::NotPrime(p));
    }
    let n = d.crossing_count();
    if n > ALG2_CAP {
        return Err(SearchError::CapExceeded { what: "crossings", value: n, cap: ALG2_CAP });
    }
    let t = target(table, knot)?;
    let (hits, best) = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let which: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let e = d.crossing_changed(&which);
            if !matches(&e, &t) {
                return (0u64, None);
            }
            let best = min_palette(&e, p).ok().map(|r| (r.size, mask, r.witness));
            (1, best)
        })
        .reduce(|| (0, None), |a, b| (a.0 + b.0, min_by_key(a.1, b.1)));
    Ok(Alg2Result {
        knot: knot.to_string(),
        p,
        best_palette: best.as_ref().map(|b| b.0),
        switched: best.as_ref().map(|b| b.1),
        coloring: best.map(|b| b.2),
        hits,
    })
}

fn min_by_key(a: Option<(usize, u64, Coloring)>, b: Option<(usize, u64, Coloring)>) -> Option<(usize, u64, Coloring)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if (b.0, b.1) < (a.0, a.1) { b } else { a }),
        (a, b) => a.or(b),
    }
}
