//! Diagrams carrying a Fox coloring, and Reidemeister moves that carry the
//! coloring along. New arcs get the unique colors the crossing relations
//! force; arcs away from the move keep theirs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::RewriteError;
use crate::coloring::Coloring;
use crate::diagram::raw::{orient, OrientHint};
use crate::diagram::{dart_crossing, dart_slot, faces, opposite, Diagram, EdgeId, LuneKind, RawCrossing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredDiagram {
    pub diagram: Diagram,
    pub coloring: Coloring,
}

impl ColoredDiagram {
    pub fn new(diagram: Diagram, coloring: Coloring) -> Result<Self, RewriteError> {
        if coloring.colors.len() != diagram.arcs().len() {
            return Err(RewriteError::Coloring(crate::coloring::ColoringError::ModulusMismatch));
        }
        coloring.validate(&diagram)?;
        Ok(ColoredDiagram { diagram, coloring })
    }

    pub fn modulus(&self) -> u64 {
        self.coloring.modulus
    }

    pub fn palette(&self) -> BTreeSet<u64> {
        self.coloring.palette()
    }

    pub fn edge_colors(&self) -> BTreeMap<EdgeId, u64> {
        self.coloring.edge_colors(&self.diagram)
    }
}

/// Completes a coloring from the colors of some edges by applying the
/// crossing relation until nothing changes. Fails unless every arc ends up
/// colored and the result is valid.
pub fn transport(d: &Diagram, m: u64, known: &BTreeMap<EdgeId, u64>) -> Result<Coloring, RewriteError> {
    let arc = d.arc_of_edge();
    let n_arcs = d.arcs().len();
    let mut color: Vec<Option<u64>> = vec![None; n_arcs];
    for (e, &c) in known {
        if let Some(&a) = arc.get(e) {
            match color[a] {
                Some(x) if x != c % m => return Err(RewriteError::PostCheck(format!("edge {e}: conflicting colors"))),
                _ => color[a] = Some(c % m),
            }
        }
    }
    // 2 is a unit for odd m
    let half = m.div_ceil(2);
    loop {
        let mut changed = false;
        for c in d.crossings() {
            let (u1, o, u2) = (arc[&c.edges[0]], arc[&c.edges[1]], arc[&c.edges[2]]);
            match (color[u1], color[o], color[u2]) {
                (Some(a), Some(b), None) => {
                    color[u2] = Some((2 * b + m - a) % m);
                    changed = true;
                }
                (None, Some(b), Some(c)) => {
                    color[u1] = Some((2 * b + m - c) % m);
                    changed = true;
                }
                (Some(a), None, Some(c)) if m % 2 == 1 => {
                    color[o] = Some((a + c) % m * half % m);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let colors: Option<Vec<u64>> = color.into_iter().collect();
    let colors = colors.ok_or_else(|| RewriteError::PostCheck("coloring not forced by the known edges".into()))?;
    let col = Coloring { modulus: m, colors };
    col.validate(d)?;
    Ok(col)
}

/// A Reidemeister move at a specific place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Adds a kink on `edge`, with the new crossing of sign `positive`;
    /// `left` picks the side of the edge the loop lies on.
    R1Add { edge: EdgeId, left: bool, positive: bool },
    /// Removes the kink at `crossing`.
    R1Remove { crossing: usize },
    /// Pushes `over` across `under` through a face they share.
    R2Add { over: EdgeId, under: EdgeId },
    /// Removes the clasp formed by crossings `a` and `b`.
    R2Remove { a: usize, b: usize },
    /// Slides a strand across the crossing opposite it in the triangular face
    /// on these three crossings.
    R3 { crossings: [usize; 3] },
}

fn raw_of(d: &Diagram) -> Vec<RawCrossing> {
    d.crossings().iter().map(RawCrossing::from_pd).collect()
}

fn pd_hints(n: usize) -> Vec<OrientHint> {
    (0..n).map(|c| (c, 0, true)).collect()
}

fn fresh(d: &Diagram) -> impl FnMut() -> EdgeId {
    let mut next = d.max_edge();
    move || {
        next += 1;
        next
    }
}

fn rename(raw: &mut [RawCrossing], from: EdgeId, to: EdgeId) {
    for r in raw.iter_mut() {
        for e in r.edges.iter_mut() {
            if *e == from {
                *e = to;
            }
        }
    }
}

fn mismatch(msg: impl Into<String>) -> RewriteError {
    RewriteError::SiteMismatch(msg.into())
}

/// Applies `mv`, returning the new colored diagram.
pub fn colored_move(cd: &ColoredDiagram, mv: Move) -> Result<ColoredDiagram, RewriteError> {
    let d = &cd.diagram;
    let m = cd.modulus();
    let colors = cd.edge_colors();
    let n = d.crossing_count();
    let check_crossing = |c: usize| if c < n { Ok(()) } else { Err(mismatch(format!("no crossing {c}"))) };
    let (raw, hints, known): (Vec<RawCrossing>, Vec<OrientHint>, BTreeMap<EdgeId, u64>) = match mv {
        Move::R1Add { edge, left, positive } => {
            let (_, d1) = d.edge_darts(edge).ok_or_else(|| mismatch(format!("no edge {edge}")))?;
            let mut next = fresh(d);
            let (e2, loop_edge) = (next(), next());
            let mut raw = raw_of(d);
            raw[dart_crossing(d1)].edges[dart_slot(d1)] = e2;
            let edges = if left { [edge, loop_edge, loop_edge, e2] } else { [edge, e2, loop_edge, loop_edge] };
            raw.push(RawCrossing { edges, under_even: true });
            let hints = pd_hints(n);
            let trial = orient(&raw, &hints)?;
            if (trial.crossings()[n].sign.as_int() > 0) != positive {
                raw[n].under_even = false;
            }
            let c = colors[&edge];
            let mut known = colors.clone();
            known.insert(e2, c);
            known.insert(loop_edge, c);
            (raw, hints, known)
        }
        Move::R1Remove { crossing } => {
            check_crossing(crossing)?;
            let e = d.crossings()[crossing].edges;
            let s = (0..4).find(|&s| e[s] == e[(s + 1) % 4]).ok_or_else(|| mismatch("crossing has no kink"))?;
            let (p, q) = (e[(s + 2) % 4], e[(s + 3) % 4]);
            let mut raw = raw_of(d);
            raw.remove(crossing);
            if p != q {
                rename(&mut raw, q, p);
            }
            let hints = pd_hints(n - 1);
            (raw, hints, colors.clone())
        }
        Move::R2Add { over, under } => {
            if over == under {
                return Err(mismatch("R2 needs two distinct edges"));
            }
            let fs = faces(d);
            let pick = fs.iter().find_map(|f| {
                let du = f.darts.iter().copied().find(|&x| d.edge_at(x) == under)?;
                let dov = f.darts.iter().copied().find(|&x| d.edge_at(x) == over)?;
                Some((du, dov))
            });
            let (du, dov) = pick.ok_or_else(|| mismatch("edges share no face"))?;
            let pu = d.partner(du);
            let mut next = fresh(d);
            let (u2, u3, o2, o3) = (next(), next(), next(), next());
            let mut raw = raw_of(d);
            raw[dart_crossing(pu)].edges[dart_slot(pu)] = u3;
            raw[dart_crossing(dov)].edges[dart_slot(dov)] = o3;
            raw.push(RawCrossing { edges: [u2, over, under, o2], under_even: true });
            raw.push(RawCrossing { edges: [u3, o3, u2, o2], under_even: true });
            let mut known = colors.clone();
            known.insert(u3, colors[&under]);
            known.insert(o2, colors[&over]);
            known.insert(o3, colors[&over]);
            (raw, pd_hints(n), known)
        }
        Move::R2Remove { a, b } => {
            check_crossing(a)?;
            check_crossing(b)?;
            let fs = faces(d);
            let f = fs
                .iter()
                .find(|f| {
                    f.degree() == 2 && {
                        let mut c = f.crossings();
                        c.sort_unstable();
                        c == [a.min(b), a.max(b)]
                    }
                })
                .ok_or_else(|| mismatch("no bigon between the crossings"))?;
            if crate::diagram::lune_kind(d, f) != LuneKind::Clasp {
                return Err(mismatch("bigon is not a clasp"));
            }
            let mut raw = raw_of(d);
            let mut merges = Vec::new();
            for &x in &f.darts {
                let y = d.partner(x);
                let (ex, ey) = (d.edge_at(opposite(x)), d.edge_at(opposite(y)));
                if ex == ey {
                    return Err(mismatch("removing the clasp would leave a crossingless loop"));
                }
                merges.push((ey, ex));
            }
            let (hi, lo) = (a.max(b), a.min(b));
            raw.remove(hi);
            raw.remove(lo);
            for (from, to) in merges {
                rename(&mut raw, from, to);
            }
            let known: BTreeMap<EdgeId, u64> =
                raw.iter().flat_map(|r| r.edges).map(|e| (e, colors[&e])).collect();
            (raw, pd_hints(n - 2), known)
        }
        Move::R3 { crossings } => {
            for c in crossings {
                check_crossing(c)?;
            }
            let mut want = crossings;
            want.sort_unstable();
            let fs = faces(d);
            let f = fs
                .iter()
                .find(|f| {
                    let mut c = f.crossings();
                    c.sort_unstable();
                    f.degree() == 3 && c == want && c[0] != c[1] && c[1] != c[2]
                })
                .ok_or_else(|| mismatch("no triangle on these crossings"))?;
            // each triangle edge is a line through two of the crossings
            let lines: Vec<(usize, usize)> = f.darts.iter().map(|&x| (x, d.partner(x))).collect();
            let over = |x: usize| dart_slot(x) % 2 == 1;
            if lines.iter().all(|&(x, y)| over(x) != over(y)) {
                return Err(mismatch("the three strands are cyclically stacked"));
            }
            let mut raw = raw_of(d);
            let orig = raw.clone();
            let mut next = fresh(d);
            let mut known = colors.clone();
            for &(x, y) in &lines {
                known.remove(&d.edge_at(x));
                let g = next();
                for (p, q) in [(x, y), (y, x)] {
                    let outer_q = orig[dart_crossing(q)].edges[dart_slot(opposite(q))];
                    raw[dart_crossing(p)].edges[dart_slot(p)] = outer_q;
                    raw[dart_crossing(p)].edges[dart_slot(opposite(p))] = g;
                }
            }
            (raw, pd_hints(n), known)
        }
    };
    let diagram = orient(&raw, &hints)?;
    if diagram.crossing_count() == 0 {
        // a lone circle keeps the color of the last arc
        let c = cd.coloring.colors.first().copied().unwrap_or(0);
        let coloring = Coloring { modulus: m, colors: vec![c; diagram.arcs().len()] };
        return Ok(ColoredDiagram { diagram, coloring });
    }
    let coloring = transport(&diagram, m, &known)?;
    Ok(ColoredDiagram { diagram, coloring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::min_palette;
    use crate::diagram::fixtures::*;
    use crate::diagram::from_braid;
    use crate::diagram::BraidWord;
    use crate::invariants::normalized_f;

    fn colored_trefoil() -> ColoredDiagram {
        let d = trefoil();
        let c = min_palette(&d, 3).unwrap().witness;
        ColoredDiagram::new(d, c).unwrap()
    }

    #[test]
    fn r1_round_trip() {
        let cd = colored_trefoil();
        let e = cd.diagram.edges()[0];
        for left in [false, true] {
            for positive in [false, true] {
                let k = colored_move(&cd, Move::R1Add { edge: e, left, positive }).unwrap();
                assert_eq!(k.diagram.crossing_count(), 4);
                assert_eq!(k.diagram.crossings()[3].sign.as_int() > 0, positive);
                assert_eq!(k.palette(), cd.palette());
                assert_eq!(normalized_f(&k.diagram).unwrap(), normalized_f(&cd.diagram).unwrap());
                let back = colored_move(&k, Move::R1Remove { crossing: 3 }).unwrap();
                assert_eq!(normalized_f(&back.diagram).unwrap(), normalized_f(&cd.diagram).unwrap());
                assert_eq!(back.diagram.crossing_count(), 3);
            }
        }
    }

    #[test]
    fn r2_push_colors_the_middle_arc() {
        let cd = colored_trefoil();
        let f = faces(&cd.diagram).into_iter().find(|f| f.degree() == 3).unwrap();
        let (o, u) = (f.incidences[0].edge, f.incidences[1].edge);
        let r2 = colored_move(&cd, Move::R2Add { over: o, under: u }).unwrap();
        assert_eq!(r2.diagram.crossing_count(), 5);
        assert_eq!(normalized_f(&r2.diagram).unwrap(), normalized_f(&cd.diagram).unwrap());
        let (a, b) = (cd.edge_colors()[&u], cd.edge_colors()[&o]);
        let m = cd.modulus();
        assert!(r2.palette().contains(&((2 * b + m - a) % m)));
        let back = colored_move(&r2, Move::R2Remove { a: 3, b: 4 }).unwrap();
        assert_eq!(back.diagram.crossing_count(), 3);
        assert_eq!(normalized_f(&back.diagram).unwrap(), normalized_f(&cd.diagram).unwrap());
    }

    #[test]
    fn r3_keeps_boundary_colors() {
        // the closure of σ1 σ2 σ1 σ1 is a trefoil with a movable triangle
        let d = from_braid(&BraidWord::new(3, vec![1, 2, 1, 1]).unwrap()).unwrap();
        let c = min_palette(&d, 3).unwrap().witness;
        let cd = ColoredDiagram::new(d, c).unwrap();
        let moved = faces(&cd.diagram)
            .into_iter()
            .filter_map(|f| {
                let mut c = f.crossings();
                c.sort_unstable();
                c.dedup();
                (f.degree() == 3 && c.len() == 3).then(|| [c[0], c[1], c[2]])
            })
            .find_map(|tri| colored_move(&cd, Move::R3 { crossings: tri }).ok())
            .unwrap();
        assert_eq!(moved.palette(), cd.palette());
        assert_eq!(moved.diagram.crossing_count(), cd.diagram.crossing_count());
        assert_eq!(normalized_f(&moved.diagram).unwrap(), normalized_f(&cd.diagram).unwrap());
        assert_ne!(moved.diagram, cd.diagram);
    }
}
