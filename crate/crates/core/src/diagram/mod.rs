//! Link diagrams as 4-valent plane graphs with crossing data.
//!
//! A [`Diagram`] is stored as a planar-diagram (PD) code: every crossing is a
//! 4-tuple of edge identifiers listed counterclockwise, starting at the
//! incoming under-strand. Everything else (faces, lunes, tassels, arcs,
//! components) is derived from that rotation system.

mod braid;
mod canon;
mod faces;
mod io;
pub(crate) mod raw;
mod tassel;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use braid::{from_braid, BraidLetter, BraidWord};
pub use canon::{canonical_code, canonical_code_marked, canonical_code_of_map};
pub use faces::{detect_lunes, faces, Face, Incidence};
pub use io::{parse_diagram, parse_json, parse_text, DiagramDoc};
pub(crate) use faces::face_cycles;
pub use raw::RawCrossing;
pub use tassel::{detect_maximal_tassels, LuneKind, TasselSite};
pub(crate) use tassel::lune_kind;

/// Edge identifier as it appears in a PD code.
pub type EdgeId = u32;

/// A dart is one end of an edge at a crossing: `4 * crossing + slot`.
pub type Dart = usize;

#[inline]
pub(crate) fn dart(crossing: usize, slot: usize) -> Dart {
    4 * crossing + slot
}

#[inline]
pub(crate) fn dart_crossing(d: Dart) -> usize {
    d / 4
}

#[inline]
pub(crate) fn dart_slot(d: Dart) -> usize {
    d % 4
}

/// Next dart clockwise around the same crossing.
#[inline]
pub(crate) fn rot_cw(d: Dart) -> Dart {
    (d & !3) | ((d + 3) & 3)
}

/// The dart straight across the crossing (same strand).
#[inline]
pub(crate) fn opposite(d: Dart) -> Dart {
    (d & !3) | ((d + 2) & 3)
}

/// Crossing sign. The over-strand runs from slot 3 to slot 1 on a positive
/// crossing and from slot 1 to slot 3 on a negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [EdgeId; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Whether the edge at `slot` enters this crossing (w.r.t. orientation).
    #[inline]
    pub fn incoming(&self, slot: usize) -> bool {
        match (slot, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (3, Sign::Positive) | (1, Sign::Negative) => true,
            _ => false,
        }
    }

    #[inline]
    pub fn is_over_slot(slot: usize) -> bool {
        slot % 2 == 1
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("edge multiplicity: edge {edge} is used {count} times (crossing {crossing})")]
    EdgeMultiplicity { edge: EdgeId, count: usize, crossing: usize },
    #[error("inconsistent orientation on edge {edge}")]
    Orientation { edge: EdgeId },
    #[error("face trace fails genus-0 check: {faces} faces for {crossings} crossings (expected {expected}), first failure near crossing {crossing}")]
    Genus { faces: usize, crossings: usize, expected: usize, crossing: usize },
    #[error("split diagram: {pieces} connected pieces (distant unions are not supported)")]
    Split { pieces: usize },
    #[error("no crossings")]
    NoCrossings,
    #[error("invalid braid word: {0}")]
    Braid(String),
}

/// A connected link diagram with at least one crossing, or the crossingless
/// unknot (empty crossing list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    partner: Vec<Dart>,
}

impl Diagram {
    /// Builds and validates a diagram from PD crossings.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let partner = partner_table(&crossings)?;
        let d = Diagram { crossings, partner };
        d.check_orientation()?;
        d.check_planar()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        Diagram { crossings: Vec::new(), partner: Vec::new() }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    #[inline]
    pub(crate) fn partner(&self, d: Dart) -> Dart {
        self.partner[d]
    }

    pub(crate) fn partners(&self) -> &[Dart] {
        &self.partner
    }

    #[inline]
    pub fn edge_at(&self, d: Dart) -> EdgeId {
        self.crossings[dart_crossing(d)].edges[dart_slot(d)]
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut e: Vec<EdgeId> = self.crossings.iter().flat_map(|c| c.edges).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn max_edge(&self) -> EdgeId {
        self.crossings.iter().flat_map(|c| c.edges).max().unwrap_or(0)
    }

    /// The two darts carrying `edge`, in crossing/slot order.
    pub fn edge_darts(&self, edge: EdgeId) -> Option<(Dart, Dart)> {
        let mut found = None;
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.edges[s] == edge {
                    let d = dart(i, s);
                    return Some((d, self.partner[d]));
                }
            }
        }
        found.take()
    }

    #[inline]
    pub(crate) fn dart_incoming(&self, d: Dart) -> bool {
        self.crossings[dart_crossing(d)].incoming(dart_slot(d))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_int()).sum()
    }

    /// Number of link components.
    pub fn component_count(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        self.components().len()
    }

    /// Components as cyclic sequences of darts, each dart being the outgoing
    /// end of an edge, following the orientation.
    pub fn components(&self) -> Vec<Vec<Dart>> {
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.dart_incoming(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                comp.push(d);
                let arrive = self.partner[d];
                seen[arrive] = true;
                d = opposite(arrive);
                if d == start {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    /// Arcs: maximal runs of edges joined through over-slots. Returned as
    /// sorted edge lists, ordered by their smallest edge.
    pub fn arcs(&self) -> Vec<Vec<EdgeId>> {
        if self.crossings.is_empty() {
            return vec![Vec::new()];
        }
        let edges = self.edges();
        let index: BTreeMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut uf = UnionFind::new(edges.len());
        for c in &self.crossings {
            uf.union(index[&c.edges[1]], index[&c.edges[3]]);
        }
        let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(*e);
        }
        let mut arcs: Vec<Vec<EdgeId>> = groups.into_values().collect();
        for a in arcs.iter_mut() {
            a.sort_unstable();
        }
        arcs.sort();
        arcs
    }

    /// Map from edge to arc index (arc order as in [`Diagram::arcs`]).
    pub fn arc_of_edge(&self) -> BTreeMap<EdgeId, usize> {
        let mut m = BTreeMap::new();
        for (i, arc) in self.arcs().iter().enumerate() {
            for e in arc {
                m.insert(*e, i);
            }
        }
        m
    }

    /// Same diagram with every crossing switched (over <-> under).
    pub fn crossing_changed(&self, which: &[usize]) -> Diagram {
        let mut cs = self.crossings.clone();
        for &i in which {
            cs[i] = switch_crossing(cs[i]);
        }
        let partner = partner_table(&cs).expect("switching preserves edges");
        Diagram { crossings: cs, partner }
    }

    /// Mirror image obtained by switching all crossings.
    pub fn mirror(&self) -> Diagram {
        let all: Vec<usize> = (0..self.crossings.len()).collect();
        self.crossing_changed(&all)
    }

    /// Relabels edges through `f` (must be injective).
    pub fn relabeled(&self, f: impl Fn(EdgeId) -> EdgeId) -> Diagram {
        let cs: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing { edges: c.edges.map(&f), sign: c.sign })
            .collect();
        let partner = partner_table(&cs).expect("relabeling must be injective");
        Diagram { crossings: cs, partner }
    }

    /// Reorders crossings by `perm` (new position i holds old crossing perm[i]).
    pub fn permuted(&self, perm: &[usize]) -> Diagram {
        let cs: Vec<Crossing> = perm.iter().map(|&i| self.crossings[i]).collect();
        let partner = partner_table(&cs).expect("permutation keeps edges");
        Diagram { crossings: cs, partner }
    }

    /// Edge labels renumbered 1..=2n in order of first appearance.
    pub fn normalized_labels(&self) -> Diagram {
        let mut map = BTreeMap::new();
        let mut next = 1;
        for c in &self.crossings {
            for e in c.edges {
                map.entry(e).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
            }
        }
        self.relabeled(|e| map[&e])
    }

    fn check_orientation(&self) -> Result<(), DiagramError> {
        for d in 0..self.partner.len() {
            let p = self.partner[d];
            if self.dart_incoming(d) == self.dart_incoming(p) {
                return Err(DiagramError::Orientation { edge: self.edge_at(d) });
            }
        }
        Ok(())
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let v = self.crossings.len();
        if v == 0 {
            return Ok(());
        }
        let pieces = connected_pieces(&self.partner);
        if pieces > 1 {
            return Err(DiagramError::Split { pieces });
        }
        let f = faces::face_cycles(&self.partner).len();
        if f != v + 2 {
            return Err(DiagramError::Genus { faces: f, crossings: v, expected: v + 2, crossing: 0 });
        }
        Ok(())
    }
}

/// Switches over and under at one crossing, keeping orientation.
pub(crate) fn switch_crossing(c: Crossing) -> Crossing {
    let e = c.edges;
    // the new incoming under-strand is the old incoming over-strand
    match c.sign {
        Sign::Positive => Crossing { edges: [e[3], e[0], e[1], e[2]], sign: Sign::Negative },
        Sign::Negative => Crossing { edges: [e[1], e[2], e[3], e[0]], sign: Sign::Positive },
    }
}

pub(crate) fn partner_table(crossings: &[Crossing]) -> Result<Vec<Dart>, DiagramError> {
    let mut first: BTreeMap<EdgeId, Dart> = BTreeMap::new();
    let mut partner = vec![usize::MAX; 4 * crossings.len()];
    let mut count: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
    for (i, c) in crossings.iter().enumerate() {
        for s in 0..4 {
            let e = c.edges[s];
            let entry = count.entry(e).or_insert((0, i));
            entry.0 += 1;
            entry.1 = i;
            if entry.0 > 2 {
                return Err(DiagramError::EdgeMultiplicity { edge: e, count: entry.0, crossing: i });
            }
            let d = dart(i, s);
            if let Some(&o) = first.get(&e) {
                partner[d] = o;
                partner[o] = d;
            } else {
                first.insert(e, d);
            }
        }
    }
    for (e, (n, i)) in count {
        if n != 2 {
            return Err(DiagramError::EdgeMultiplicity { edge: e, count: n, crossing: i });
        }
    }
    Ok(partner)
}

pub(crate) fn connected_pieces(partner: &[Dart]) -> usize {
    let v = partner.len() / 4;
    if v == 0 {
        return 0;
    }
    let mut uf = UnionFind::new(v);
    for d in 0..partner.len() {
        uf.union(dart_crossing(d), dart_crossing(partner[d]));
    }
    (0..v).filter(|&i| uf.find(i) == i).count()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&io::to_text(self))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn edge_used_three_times_is_rejected() {
        let err = Diagram::new(vec![
            Crossing::new([1, 2, 1, 1], Sign::Positive),
        ])
        .unwrap_err();
        assert!(matches!(err, DiagramError::EdgeMultiplicity { edge: 1, .. }), "{err}");
    }

    #[test]
    fn switching_twice_is_identity() {
        let d = figure_eight();
        for i in 0..4 {
            let c = d.crossings()[i];
            assert_eq!(switch_crossing(switch_crossing(c)), c);
        }
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn components_and_arcs() {
        assert_eq!(trefoil().component_count(), 1);
        assert_eq!(hopf().component_count(), 2);
        assert_eq!(trefoil().arcs().len(), 3);
        assert_eq!(figure_eight().arcs().len(), 4);
        assert_eq!(kink().component_count(), 1);
        assert_eq!(Diagram::unknot().component_count(), 1);
    }

    #[test]
    fn split_union_rejected() {
        let mut cs = trefoil().crossings().to_vec();
        let shift = trefoil().max_edge() + 10;
        cs.extend(trefoil().crossings().iter().map(|c| Crossing::new(c.edges.map(|e| e + shift), c.sign)));
        assert!(matches!(Diagram::new(cs), Err(DiagramError::Split { pieces: 2 })));
    }
}
