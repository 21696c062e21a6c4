//! Template application. A chain of crossings is cut out of the diagram as a
//! four-ended tangle, matched against the template's site up to boundary
//! relabeling, and the replacement is glued in. Colors of the new arcs come
//! from the replacement's forced formal coloring; nothing is chosen.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use super::colored::ColoredDiagram;
use super::tangle::Tangle;
use super::templates::{SiteShape, Template, TemplateId};
use super::RewriteError;
use crate::coloring::Coloring;
use crate::diagram::raw::{orient, OrientHint};
use crate::diagram::{dart, detect_lunes, Dart, Diagram, EdgeId, RawCrossing};
use crate::invariants::{determinant, normalized_f_sweep};

/// One way of seeing the site as the template's reference tangle: the dart
/// carrying each boundary label (BL, BR, TR, TL), and the twist sense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub labels: [Dart; 4],
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct Applied {
    pub cd: ColoredDiagram,
    /// New index of each old crossing, `None` for the replaced ones.
    pub kept: Vec<Option<usize>>,
    /// Indices of the replacement crossings in the new diagram.
    pub replacement: Range<usize>,
    pub placement: Placement,
}

impl Applied {
    /// Lunes of the result with no corner at the survivors of the old
    /// crossings `protected`.
    pub fn stray_lunes(&self, protected: &[usize]) -> usize {
        let prot: BTreeSet<usize> = protected.iter().filter_map(|&c| self.kept.get(c).copied().flatten()).collect();
        stray_lunes(&self.cd.diagram, &prot)
    }
}

/// Darts on the bigons joining consecutive crossings of `chain`, one bigon
/// per pair; several choices only arise when two crossings share two bigons.
fn internal_choices(d: &Diagram, chain: &[usize]) -> Vec<Vec<[Dart; 4]>> {
    let lunes = detect_lunes(d);
    chain
        .windows(2)
        .map(|w| {
            lunes
                .iter()
                .filter(|f| {
                    let c = f.crossings();
                    c[0] != c[1] && c.contains(&w[0]) && c.contains(&w[1])
                })
                .map(|f| {
                    let (x, y) = (f.darts[0], f.darts[1]);
                    [x, d.partner(x), y, d.partner(y)]
                })
                .collect()
        })
        .collect()
}

/// The site tangle for a labeling of its four boundary darts.
fn site_tangle(d: &Diagram, chain: &[usize], labels: &[Dart; 4]) -> Tangle {
    let mut ids: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let crossings = chain
        .iter()
        .map(|&c| {
            let mut edges = [0; 4];
            for (s, e) in edges.iter_mut().enumerate() {
                let x = dart(c, s);
                *e = match labels.iter().position(|&l| l == x) {
                    Some(i) => i as EdgeId + 1,
                    None => {
                        let next = ids.len() as EdgeId + 5;
                        *ids.entry(d.edge_at(x)).or_insert(next)
                    }
                };
            }
            RawCrossing { edges, under_even: true }
        })
        .collect();
    Tangle { crossings }
}

/// Every labeling under which `chain` is the site of `shape`.
pub fn placements(d: &Diagram, chain: &[usize], shape: SiteShape) -> Vec<Placement> {
    if chain.len() != shape.crossings() || chain.iter().collect::<BTreeSet<_>>().len() != chain.len() {
        return Vec::new();
    }
    if chain.iter().any(|&c| c >= d.crossing_count()) {
        return Vec::new();
    }
    let refs: Vec<(Tangle, i64)> = match shape {
        SiteShape::Twist(_) => vec![(shape.reference(1), 1), (shape.reference(-1), -1)],
        SiteShape::Clasp => vec![(shape.reference(1), 1)],
    };
    let choices = internal_choices(d, chain);
    if choices.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let internal: BTreeSet<Dart> = pick.iter().zip(&choices).flat_map(|(&i, c)| c[i]).collect();
        let boundary: Vec<Dart> =
            chain.iter().flat_map(|&c| (0..4).map(move |s| dart(c, s))).filter(|x| !internal.contains(x)).collect();
        if boundary.len() == 4 {
            for perm in permutations4() {
                let labels = perm.map(|i| boundary[i]);
                let t = site_tangle(d, chain, &labels);
                for (r, sign) in &refs {
                    let p = Placement { labels, sign: *sign };
                    if t.isomorphic(r) && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        // next combination of bigon choices
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    out
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || a == c || b == c {
                    continue;
                }
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// Glues `rep` in place of `chain` under `placement`.
fn splice(cd: &ColoredDiagram, chain: &[usize], rep: &Tangle, placement: &Placement) -> Result<Applied, RewriteError> {
    let d = &cd.diagram;
    let m = cd.modulus();
    let colors = cd.edge_colors();
    let n = d.crossing_count();
    let in_site: BTreeSet<usize> = chain.iter().copied().collect();
    let mut kept = vec![None; n];
    let mut raw = Vec::with_capacity(n - chain.len() + rep.len());
    for c in 0..n {
        if !in_site.contains(&c) {
            kept[c] = Some(raw.len());
            raw.push(RawCrossing::from_pd(&d.crossings()[c]));
        }
    }
    let n_out = raw.len();
    let boundary_edge = |l: EdgeId| d.edge_at(placement.labels[l as usize - 1]);
    let mut next = d.max_edge();
    let mut ids: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for x in &rep.crossings {
        let edges = x.edges.map(|e| {
            if e <= 4 {
                boundary_edge(e)
            } else {
                *ids.entry(e).or_insert_with(|| {
                    next += 1;
                    next
                })
            }
        });
        raw.push(RawCrossing { edges, under_even: x.under_even });
    }
    let mut hints: Vec<OrientHint> = (0..n_out).map(|c| (c, 0, true)).collect();
    for (c, x) in rep.crossings.iter().enumerate() {
        for (s, &e) in x.edges.iter().enumerate() {
            if e <= 4 {
                hints.push((n_out + c, s, d.dart_incoming(placement.labels[e as usize - 1])));
            }
        }
    }
    let diagram = orient(&raw, &hints)?;

    // a + j (b - a) for the formal color j
    let formal = rep
        .formal_colors()
        .ok_or_else(|| RewriteError::PostCheck("replacement has no forced coloring".into()))?;
    let (a, b) = (colors[&boundary_edge(1)], colors[&boundary_edge(2)]);
    let affine = |j: i64| {
        let step = (b + m - a) % m;
        ((a as i128 + j as i128 * step as i128).rem_euclid(m as i128)) as u64
    };
    let mut known: BTreeMap<EdgeId, u64> = BTreeMap::new();
    for c in diagram.crossings() {
        for &e in &c.edges {
            if let Some(&col) = colors.get(&e) {
                known.insert(e, col);
            }
        }
    }
    for (&e, &j) in &formal {
        let col = affine(j);
        if e <= 4 {
            if col != colors[&boundary_edge(e)] {
                return Err(RewriteError::PostCheck(format!("boundary color mismatch at label {e}")));
            }
        } else {
            known.insert(ids[&e], col);
        }
    }
    let coloring = Coloring::from_edge_colors(&diagram, m, &known)?;
    Ok(Applied {
        cd: ColoredDiagram { diagram, coloring },
        kept,
        replacement: n_out..n_out + rep.len(),
        placement: placement.clone(),
    })
}

/// Lunes with no corner at a protected crossing.
fn stray_lunes(d: &Diagram, protected: &BTreeSet<usize>) -> usize {
    detect_lunes(d).iter().filter(|f| f.crossings().iter().all(|c| !protected.contains(c))).count()
}

/// Applies `t` to the chain of crossings `chain` (listed along the chain).
/// Among the matching placements the one adding the fewest colors, then
/// leaving the fewest lunes away from `protected` (old indices of crossings
/// that will be rewritten later), then the fewest lunes overall, wins.
/// Checks the color and lune post-conditions; invariants are checked by
/// [`apply_template`].
pub fn apply_unchecked(
    cd: &ColoredDiagram,
    chain: &[usize],
    t: &Template,
    protected: &[usize],
) -> Result<Applied, RewriteError> {
    let d = &cd.diagram;
    let found = placements(d, chain, t.shape);
    if found.is_empty() {
        return Err(RewriteError::SiteMismatch(format!("crossings {chain:?} are not a {:?} site", t.shape)));
    }
    let before = cd.palette();
    let mut best: Option<((usize, usize, usize), Applied)> = None;
    for p in &found {
        let rep = t.tangle_for(p.sign);
        let a = splice(cd, chain, &rep, p)?;
        let grown = a.cd.palette().difference(&before).count();
        let key = (grown, a.stray_lunes(protected), detect_lunes(&a.cd.diagram).len());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, a));
        }
    }
    let (_, applied) = best.expect("at least one placement");
    let after = applied.cd.palette();
    let grown = after.difference(&before).count();
    let allowed = usize::from(t.id == TemplateId::Fig3Variant);
    if grown > allowed {
        return Err(RewriteError::PostCheck(format!("{} added {grown} colors", t.id)));
    }
    if t.id != TemplateId::Fig3Variant && after != before {
        return Err(RewriteError::PostCheck(format!("{} changed the palette", t.id)));
    }
    let n_after = applied.cd.diagram.crossing_count() as i64;
    if n_after - d.crossing_count() as i64 != t.delta {
        return Err(RewriteError::PostCheck(format!("{}: crossing delta is not {}", t.id, t.delta)));
    }
    Ok(applied)
}

/// [`apply_unchecked`] followed by the invariant checks: normalized bracket
/// polynomial and determinant unchanged.
pub fn apply_template(cd: &ColoredDiagram, chain: &[usize], t: &Template) -> Result<Applied, RewriteError> {
    let a = apply_unchecked(cd, chain, t, &[])?;
    check_invariants(&cd.diagram, &a.cd.diagram)?;
    Ok(a)
}

pub(crate) fn check_invariants(before: &Diagram, after: &Diagram) -> Result<(), RewriteError> {
    if determinant(before) != determinant(after) {
        return Err(RewriteError::PostCheck("determinant changed".into()));
    }
    if normalized_f_sweep(before) != normalized_f_sweep(after) {
        return Err(RewriteError::PostCheck("normalized bracket changed".into()));
    }
    if before.component_count() != after.component_count() {
        return Err(RewriteError::PostCheck("component count changed".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::min_palette;
    use crate::diagram::fixtures::*;
    use crate::diagram::{detect_maximal_tassels, from_braid, BraidWord};
    use crate::rewrite::templates::{template, teneva_template};

    fn colored(d: Diagram, p: u64) -> ColoredDiagram {
        let c = min_palette(&d, p).unwrap().witness;
        ColoredDiagram::new(d, c).unwrap()
    }

    #[test]
    fn trefoil_as_a_three_tassel() {
        let cd = colored(trefoil(), 3);
        let site = &detect_maximal_tassels(&cd.diagram)[0];
        let a = apply_template(&cd, &site.crossings, template(TemplateId::Tassel3)).unwrap();
        assert_eq!(a.cd.diagram.crossing_count(), 8);
        assert!(detect_lunes(&a.cd.diagram).is_empty());
        assert_eq!(a.cd.palette(), cd.palette());
    }

    #[test]
    fn isolated_lune_gets_ten_crossings() {
        let cd = colored(figure_eight(), 5);
        let site = &detect_maximal_tassels(&cd.diagram)[0];
        let a = apply_template(&cd, &site.crossings, template(TemplateId::MainLemma)).unwrap();
        assert_eq!(a.replacement.len(), 10);
        assert_eq!(a.cd.palette(), cd.palette());
    }

    #[test]
    fn both_twist_senses_match() {
        for sign in [1, -1] {
            let d = from_braid(&BraidWord::new(3, vec![sign, sign, sign, sign, 2 * sign, -sign, 2 * sign]).unwrap())
                .unwrap();
            let p = [3, 5, 7, 11, 13, 17].into_iter().find(|&p| min_palette(&d, p).is_ok()).unwrap();
            let cd = colored(d, p);
            let site = detect_maximal_tassels(&cd.diagram).into_iter().find(|s| s.k == 4).unwrap();
            let a = apply_template(&cd, &site.crossings, template(TemplateId::Tassel4)).unwrap();
            assert_eq!(a.cd.diagram.crossing_count(), cd.diagram.crossing_count() + 5);
            let t = apply_template(&cd, &site.crossings, &teneva_template(5).unwrap());
            assert!(t.is_err(), "a 4-chain is not a 5-site");
        }
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let cd = colored(trefoil(), 3);
        let e = apply_template(&cd, &[0, 1], template(TemplateId::Tassel3));
        assert!(matches!(e, Err(RewriteError::SiteMismatch(_))));
    }
}
