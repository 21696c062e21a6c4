//! Enumeration of 4-regular plane maps without small faces, by growing a
//! connected rotation system one edge at a time inside its partial faces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::raw::{orient, RawCrossing};
use crate::diagram::{canonical_code_marked, canonical_code_of_map, Diagram};

const OPEN: usize = usize::MAX;

pub const DEFAULT_ENUM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("n must be at least 1")]
    TooSmall,
}

/// A 4-regular plane map as a rotation system: `partner[4v + s]` is the
/// dart joined to slot s of vertex v (slots counterclockwise).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatDiagram {
    pub n: usize,
    #[serde(skip)]
    pub partner: Vec<usize>,
    pub code: String,
}

impl FlatDiagram {
    pub fn from_partner(partner: Vec<usize>) -> FlatDiagram {
        let code = canonical_code_of_map(&partner, None);
        FlatDiagram { n: partner.len() / 4, partner, code }
    }

    /// Edge ids (1-based) in slot order, plus per-vertex edge tuples.
    pub fn edge_tuples(&self) -> Vec<[u32; 4]> {
        let mut id = vec![0u32; self.partner.len()];
        let mut next = 1;
        for d in 0..self.partner.len() {
            if id[d] == 0 {
                id[d] = next;
                id[self.partner[d]] = next;
                next += 1;
            }
        }
        (0..self.n).map(|v| [id[4 * v], id[4 * v + 1], id[4 * v + 2], id[4 * v + 3]]).collect()
    }

    /// Diagram for one over/under assignment: bit v set puts vertex v's
    /// under-strand on its odd slots. Orientation is the default one.
    pub fn realize(&self, assignment: u64) -> Diagram {
        let raw: Vec<RawCrossing> = self
            .edge_tuples()
            .into_iter()
            .enumerate()
            .map(|(v, edges)| RawCrossing { edges, under_even: assignment >> v & 1 == 0 })
            .collect();
        orient(&raw, &[]).expect("plane maps realise as valid diagrams")
    }

    /// Face degrees, as a sorted list.
    pub fn face_degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = face_cycles(&self.partner).iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

/// Which faces may be bigons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceRule {
    /// Every face has degree at least 3.
    Strict,
    /// Faces through vertex 0 may have degree 2; vertex 0 stays marked and
    /// isomorphisms must fix it.
    MarkedBigons,
    /// Any face of degree at least 2 (no curls).
    NoCurls,
}

/// All basic polyhedra with n vertices, sorted by canonical code.
pub fn enumerate_basic_polyhedra(n: usize) -> Result<Vec<FlatDiagram>, EnumError> {
    enumerate_basic_polyhedra_with_cap(n, DEFAULT_ENUM_CAP)
}

pub fn enumerate_basic_polyhedra_with_cap(n: usize, cap: usize) -> Result<Vec<FlatDiagram>, EnumError> {
    if n > cap {
        return Err(EnumError::CapExceeded { n, cap });
    }
    Ok(enumerate_maps(n, FaceRule::Strict)
        .into_iter()
        .filter(|(_, partner)| !has_two_edge_cut(partner))
        .map(|(code, partner)| FlatDiagram { n, partner, code })
        .collect())
}

/// Maps with n vertices under `rule`, keyed by canonical code.
pub fn enumerate_maps(n: usize, rule: FaceRule) -> BTreeMap<String, Vec<usize>> {
    if n == 0 {
        return BTreeMap::new();
    }
    let root = State { partner: vec![OPEN; 4 * n], used: 1, n, rule };
    // fan out over the first few levels, then search subtrees in parallel
    let mut frontier = vec![root];
    for _ in 0..4 {
        let mut next = Vec::new();
        for mut s in frontier {
            if s.complete() {
                next.push(s);
            } else {
                s.expand(&mut |c| next.push(c.clone()));
            }
        }
        frontier = next;
    }
    frontier
        .into_par_iter()
        .map(|mut s| {
            let mut out = BTreeMap::new();
            s.search(&mut out);
            out
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// True when removing some pair of edges disconnects the map, i.e. the
/// map is a connected sum and not a basic polyhedron.
pub(crate) fn has_two_edge_cut(partner: &[usize]) -> bool {
    let n = partner.len() / 4;
    let edges: Vec<(usize, usize)> = (0..partner.len()).filter(|&d| d < partner[d]).map(|d| (d, partner[d])).collect();
    let connected_without = |a: usize, b: usize| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for d in 4 * v..4 * v + 4 {
                let e = partner[d];
                if [edges[a].0, edges[a].1, edges[b].0, edges[b].1].contains(&d) {
                    continue;
                }
                if !seen[e / 4] {
                    seen[e / 4] = true;
                    stack.push(e / 4);
                }
            }
        }
        seen.iter().all(|&x| x)
    };
    (0..edges.len()).any(|a| (a + 1..edges.len()).any(|b| !connected_without(a, b)))
}

#[derive(Clone)]
struct State {
    partner: Vec<usize>,
    used: usize,
    n: usize,
    rule: FaceRule,
}

#[inline]
fn rot_cw(d: usize) -> usize {
    (d & !3) | ((d + 3) & 3)
}

/// Next dart along a partial face; an open dart turns back at its free end.
#[inline]
fn next(partner: &[usize], d: usize) -> usize {
    let p = partner[d];
    if p == OPEN {
        rot_cw(d)
    } else {
        rot_cw(p)
    }
}

fn face_cycles(partner: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; partner.len()];
    let mut out = Vec::new();
    for s in 0..partner.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            cyc.push(d);
            d = next(partner, d);
        }
        out.push(cyc);
    }
    out
}

impl State {
    fn active_len(&self) -> usize {
        4 * self.used
    }

    fn cycle(&self, start: usize) -> Vec<usize> {
        let mut cyc = vec![start];
        let mut d = next(&self.partner, start);
        while d != start {
            cyc.push(d);
            d = next(&self.partner, d);
        }
        cyc
    }

    fn face_ok(&self, cyc: &[usize]) -> bool {
        if cyc.iter().any(|&d| self.partner[d] == OPEN) {
            return true;
        }
        match self.rule {
            FaceRule::Strict => cyc.len() >= 3,
            FaceRule::MarkedBigons => cyc.len() >= 3 || (cyc.len() == 2 && cyc.iter().any(|&d| d < 4)),
            FaceRule::NoCurls => cyc.len() >= 2,
        }
    }

    /// Partial faces with their open darts.
    fn open_faces(&self) -> Vec<Vec<usize>> {
        let m = self.active_len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] || self.partner[s] != OPEN {
                continue;
            }
            let cyc = self.cycle(s);
            for &d in &cyc {
                seen[d] = true;
            }
            out.push(cyc.into_iter().filter(|&d| self.partner[d] == OPEN).collect());
        }
        out
    }

    fn join(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
    }

    fn unjoin(&mut self, a: usize, b: usize) {
        self.partner[a] = OPEN;
        self.partner[b] = OPEN;
    }

    fn complete(&self) -> bool {
        self.used == self.n && self.partner.iter().all(|&p| p != OPEN)
    }

    fn search(&mut self, out: &mut BTreeMap<String, Vec<usize>>) {
        let mut leaf = |st: &State| {
            let code = match st.rule {
                FaceRule::Strict => canonical_code_of_map(&st.partner, None),
                FaceRule::MarkedBigons | FaceRule::NoCurls => canonical_code_marked(&st.partner, None, 0),
            };
            out.entry(code).or_insert_with(|| st.partner.clone());
        };
        self.dfs(&mut leaf);
    }

    fn dfs(&mut self, leaf: &mut dyn FnMut(&State)) {
        if self.complete() {
            leaf(self);
            return;
        }
        self.expand(&mut |st| st.dfs(leaf));
    }

    /// Applies each one-edge extension that passes the face filters and
    /// hands the extended state to `f`, restoring `self` afterwards.
    fn expand(&mut self, f: &mut dyn FnMut(&mut State)) {
        let faces = self.open_faces();
        let remaining = self.n - self.used;
        if remaining == 0 && faces.iter().any(|fc| fc.len() % 2 == 1) {
            return;
        }
        let Some(face) = faces.iter().min_by_key(|fc| (fc.len(), fc[0])) else { return };
        if face.len() == 1 && remaining == 0 {
            return;
        }
        let d = face[0];
        for &e in &face[1..] {
            self.join(d, e);
            let ok = self.face_ok(&self.cycle(d)) && self.face_ok(&self.cycle(e));
            if ok {
                f(self);
            }
            self.unjoin(d, e);
        }
        if remaining > 0 {
            let v = self.used;
            self.used += 1;
            self.join(d, 4 * v);
            let ok = self.face_ok(&self.cycle(d));
            if ok {
                f(self);
            }
            self.unjoin(d, 4 * v);
            self.used -= 1;
        }
    }
}

/// Crossing-change orbit of a flat diagram, in binary-counter order.
pub fn orbit(f: &FlatDiagram) -> impl Iterator<Item = Diagram> + '_ {
    (0..1u64 << f.n).map(move |a| f.realize(a))
}

/// Orbit with duplicates (up to canonical code) removed.
pub fn orbit_classes(f: &FlatDiagram) -> Vec<(u64, Diagram)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..1u64 << f.n {
        let d = f.realize(a);
        if seen.insert(crate::diagram::canonical_code(&d)) {
            out.push((a, d));
        }
    }
    out
}
