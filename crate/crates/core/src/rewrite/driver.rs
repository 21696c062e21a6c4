//! Strategy drivers: repeatedly pick the largest maximal tassel, rewrite it
//! with the template the strategy calls for, and re-detect, until no lune
//! is left.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::colored::{colored_move, ColoredDiagram, Move};
use super::schedule::{cor22_schedule, direct_cost, teneva_bound, truncated_cost, truncated_splits};
use super::splice::{apply_unchecked, check_invariants, Applied};
use super::templates::{tassel_template, template, teneva_template, TemplateId};
use super::RewriteError;
use crate::diagram::{detect_lunes, detect_maximal_tassels, lune_kind, LuneKind, TasselSite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    /// The main lemma on one lune at a time.
    PerLuneMain,
    /// Chunk plans for whole tassels.
    TasselAware,
    /// Teneva transformations down to tassels of at most 4 crossings.
    TenevaFull,
    /// Teneva transformations only while they are strictly cheaper.
    TenevaTruncated,
}

impl Strategy {
    pub const ALL: [Strategy; 4] =
        [Strategy::PerLuneMain, Strategy::TasselAware, Strategy::TenevaFull, Strategy::TenevaTruncated];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::PerLuneMain => "main",
            Strategy::TasselAware => "tassel",
            Strategy::TenevaFull => "teneva",
            Strategy::TenevaTruncated => "truncated",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "main" | "per_lune_main" => Ok(Strategy::PerLuneMain),
            "tassel" | "tassel_aware" => Ok(Strategy::TasselAware),
            "teneva" | "teneva_full" => Ok(Strategy::TenevaFull),
            "truncated" | "teneva_truncated" => Ok(Strategy::TenevaTruncated),
            _ => Err(format!("unknown strategy {s:?} (main, tassel, teneva, truncated)")),
        }
    }
}

/// What one step did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Template(TemplateId),
    /// A one-crossing curl undone by a type I move.
    R1Remove,
    /// A clasp undone by a type II move.
    R2Remove,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Template(t) => t.fmt(f),
            StepKind::R1Remove => f.write_str("R1_REMOVE"),
            StepKind::R2Remove => f.write_str("R2_REMOVE"),
        }
    }
}

/// One line of the rewrite trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    #[serde(serialize_with = "as_display")]
    pub template: StepKind,
    pub site: Vec<usize>,
    pub delta: i64,
    pub palette_before: Vec<u64>,
    pub palette_after: Vec<u64>,
}

fn as_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct Delunified {
    pub strategy: Strategy,
    pub result: ColoredDiagram,
    pub crossings_before: usize,
    pub crossings_after: usize,
    /// Extra crossings the strategy's accounting allows for the input's sites.
    pub bound: u64,
    pub within_bound: bool,
    pub trace: Vec<TraceRecord>,
}

/// The strategy's planned delta for one maximal site.
fn site_bound(site: &TasselSite, s: Strategy) -> u64 {
    let k = site.k;
    match site.kind {
        LuneKind::Curl => 0,
        LuneKind::Clasp => 0,
        LuneKind::Twist => match s {
            Strategy::PerLuneMain => 8 * site.lunes.len() as u64,
            Strategy::TasselAware => direct_cost(k),
            Strategy::TenevaFull if k >= 5 => teneva_bound(k as u64).expect("k >= 5"),
            Strategy::TenevaFull => direct_cost(k),
            Strategy::TenevaTruncated => truncated_cost(k),
        },
    }
}

/// Rewrites `cd` until it has no lune. Kinks are undone first while lunes
/// remain. Every template step must lower the lune count
/// and keep the palette (the one-color growth FIG3_VARIANT may cause is
/// only accepted when it does not happen); the normalized bracket
/// polynomial, determinant and component count are compared at the end.
pub fn delunify(cd: &ColoredDiagram, s: Strategy) -> Result<Delunified, RewriteError> {
    let sites = detect_maximal_tassels(&cd.diagram);
    // clasp lunes cost at most one clasp template each, wherever they sit
    let clasps = detect_lunes(&cd.diagram).iter().filter(|f| lune_kind(&cd.diagram, f) == LuneKind::Clasp).count();
    let bound: u64 = sites.iter().map(|t| site_bound(t, s)).sum::<u64>() + 5 * clasps as u64;
    let mut cur = cd.clone();
    let mut trace = Vec::new();
    loop {
        let lunes = detect_lunes(&cur.diagram).len();
        if lunes == 0 {
            break;
        }
        // kinks first: a curl at the end of a tassel would turn into a lune
        if let Some((next, r)) = remove_kink(&cur, lunes) {
            trace.push(r);
            cur = next;
            continue;
        }
        let sites = detect_maximal_tassels(&cur.diagram);
        let site = &sites[0];
        let (next, record) = step(&cur, site, s)?;
        let after = detect_lunes(&next.diagram).len();
        if after >= lunes {
            return Err(RewriteError::NoProgress { before: lunes, after, site: format!("{site:?}") });
        }
        trace.push(record);
        cur = next;
    }
    check_invariants(&cd.diagram, &cur.diagram)?;
    let delta = cur.diagram.crossing_count() as i64 - cd.diagram.crossing_count() as i64;
    Ok(Delunified {
        strategy: s,
        crossings_before: cd.diagram.crossing_count(),
        crossings_after: cur.diagram.crossing_count(),
        bound,
        within_bound: delta <= bound as i64,
        result: cur,
        trace,
    })
}

/// Undoes the first kink whose removal keeps the palette and does not add
/// lunes.
fn remove_kink(cd: &ColoredDiagram, lunes: usize) -> Option<(ColoredDiagram, TraceRecord)> {
    let d = &cd.diagram;
    (0..d.crossing_count())
        .filter(|&c| {
            let e = d.crossings()[c].edges;
            (0..4).any(|s| e[s] == e[(s + 1) % 4])
        })
        .find_map(|c| {
            let next = colored_move(cd, Move::R1Remove { crossing: c }).ok()?;
            let ok = next.palette() == cd.palette() && detect_lunes(&next.diagram).len() <= lunes;
            ok.then(|| {
                let r = record(cd, &next, StepKind::R1Remove, &[c]);
                (next, r)
            })
        })
}

fn record(before: &ColoredDiagram, after: &ColoredDiagram, kind: StepKind, site: &[usize]) -> TraceRecord {
    TraceRecord {
        template: kind,
        site: site.to_vec(),
        delta: after.diagram.crossing_count() as i64 - before.diagram.crossing_count() as i64,
        palette_before: before.palette().into_iter().collect(),
        palette_after: after.palette().into_iter().collect(),
    }
}

fn step(cd: &ColoredDiagram, site: &TasselSite, s: Strategy) -> Result<(ColoredDiagram, TraceRecord), RewriteError> {
    let cr = &site.crossings;
    let finish = |a: Applied, id: TemplateId, chain: &[usize]| {
        let r = record(cd, &a.cd, StepKind::Template(id), chain);
        (a.cd, r)
    };
    match site.kind {
        LuneKind::Curl => {
            let next = colored_move(cd, Move::R1Remove { crossing: cr[0] })?;
            let r = record(cd, &next, StepKind::R1Remove, cr);
            Ok((next, r))
        }
        LuneKind::Clasp => {
            // undoing the clasp is free when no color lives only on its middle arc
            let lunes = detect_lunes(&cd.diagram).len();
            if let Ok(next) = colored_move(cd, Move::R2Remove { a: cr[0], b: cr[1] }) {
                if next.palette() == cd.palette() && detect_lunes(&next.diagram).len() < lunes {
                    let r = record(cd, &next, StepKind::R2Remove, &cr[..2]);
                    return Ok((next, r));
                }
            }
            let t = template(TemplateId::Clasp);
            let a = apply_unchecked(cd, &cr[..2], t, &cr[2..])?;
            Ok(finish(a, t.id, &cr[..2]))
        }
        LuneKind::Twist => {
            let k = site.k;
            let teneva = match s {
                Strategy::TenevaFull => k >= 5,
                Strategy::TenevaTruncated => truncated_splits(k),
                _ => false,
            };
            if teneva {
                let t = teneva_template(k).expect("k >= 5");
                let a = apply_unchecked(cd, cr, &t, &[])?;
                return Ok(finish(a, t.id, cr));
            }
            let chunk = match s {
                Strategy::PerLuneMain => 2,
                _ => cor22_schedule(k)?[0],
            };
            let (chain, rest) = cr.split_at(chunk);
            if chunk == 2 && s != Strategy::PerLuneMain {
                // the cheaper variant, unless it adds a color or leaves more lunes
                let fig3 = template(TemplateId::Fig3Variant);
                let main = template(TemplateId::MainLemma);
                let m = apply_unchecked(cd, chain, main, rest)?;
                if let Ok(f) = apply_unchecked(cd, chain, fig3, rest) {
                    if f.cd.palette() == cd.palette() && f.stray_lunes(rest) <= m.stray_lunes(rest) {
                        return Ok(finish(f, fig3.id, chain));
                    }
                }
                return Ok(finish(m, main.id, chain));
            }
            let t = tassel_template(chunk).expect("chunks have 2..=6 crossings");
            let a = apply_unchecked(cd, chain, t, rest)?;
            Ok(finish(a, t.id, chain))
        }
    }
}

/// One Teneva transformation of a maximal tassel with at least 5 crossings.
pub fn teneva_transform(cd: &ColoredDiagram, site: &TasselSite) -> Result<Applied, RewriteError> {
    if site.k < 5 || site.kind != LuneKind::Twist {
        return Err(RewriteError::TenevaTooSmall(site.k));
    }
    let t = teneva_template(site.k).expect("k >= 5");
    let a = apply_unchecked(cd, &site.crossings, &t, &[])?;
    check_invariants(&cd.diagram, &a.cd.diagram)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::min_palette;
    use crate::diagram::fixtures::*;
    use crate::diagram::Diagram;

    fn colored(d: Diagram, p: u64) -> ColoredDiagram {
        let c = min_palette(&d, p).unwrap().witness;
        ColoredDiagram::new(d, c).unwrap()
    }

    #[test]
    fn trefoil_becomes_eight_crossings() {
        let out = delunify(&colored(trefoil(), 3), Strategy::TasselAware).unwrap();
        assert_eq!(out.crossings_after, 8);
        assert_eq!(out.result.palette().len(), 3);
        assert!(out.within_bound);
    }

    #[test]
    fn every_strategy_clears_torus_links() {
        for n in [2, 3, 4, 5, 7, 9] {
            for s in Strategy::ALL {
                let d = torus2(n);
                let p = [3, 5, 7, 11, 13].into_iter().find(|&p| min_palette(&d, p).is_ok());
                let Some(p) = p else { continue };
                let out = delunify(&colored(d, p), s).unwrap_or_else(|e| panic!("n={n} {s}: {e}"));
                assert!(detect_lunes(&out.result.diagram).is_empty());
            }
        }
    }

    #[test]
    fn lune_free_input_is_a_fixed_point() {
        let cd = colored(trefoil(), 3);
        let once = delunify(&cd, Strategy::TasselAware).unwrap().result;
        let twice = delunify(&once, Strategy::TasselAware).unwrap();
        assert_eq!(twice.result, once);
        assert!(twice.trace.is_empty());
    }

    #[test]
    fn teneva_step_splits_a_seven_tassel() {
        let cd = colored(torus2(7), 7);
        let site = &detect_maximal_tassels(&cd.diagram)[0];
        let a = teneva_transform(&cd, site).unwrap();
        assert_eq!(a.cd.diagram.crossing_count(), 8);
        let mut ks: Vec<usize> = detect_maximal_tassels(&a.cd.diagram).iter().map(|s| s.k).collect();
        ks.sort_unstable();
        assert_eq!(ks, vec![3, 3]);
        assert!(teneva_transform(&colored(torus2(3), 3), &detect_maximal_tassels(&torus2(3))[0]).is_err());
    }
}
