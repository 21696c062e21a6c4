//! Four-ended tangles in unoriented crossing form, with the checks that
//! certify a replacement for a twist region: formal colorings, the bracket
//! pair, writhe bookkeeping and the degrees of the faces along the boundary.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::diagram::raw::orient;
use crate::diagram::{Diagram, DiagramError, EdgeId, RawCrossing};
use crate::invariants::{bracket_sweep, LaurentPoly};

/// Boundary edges are 1..=4 at the positions bottom-left, bottom-right,
/// top-right and top-left (counterclockwise). Every other edge occurs twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tangle {
    pub crossings: Vec<RawCrossing>,
}

pub const BL: EdgeId = 1;
pub const BR: EdgeId = 2;
pub const TR: EdgeId = 3;
pub const TL: EdgeId = 4;

/// Side names for the boundary faces, by the two ends they run between.
pub const SIDES: [&str; 4] = ["bottom", "right", "top", "left"];

/// Strand structure of a tangle whose two strands enter at BL and BR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strands {
    /// Exit edge of the strand entering at BL, and of the one entering at BR.
    pub exits: [EdgeId; 2],
    /// Per crossing: incoming flag for each slot.
    pub incoming: Vec<[bool; 4]>,
    /// Per crossing: which strand (0 from BL, 1 from BR) runs under, over.
    pub under_over: Vec<(usize, usize)>,
}

/// Rational number with i128 parts, kept reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Q(i128, i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Q {
    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1) * d.signum();
        Q(n / g, d / g)
    }
    fn zero(self) -> bool {
        self.0 == 0
    }
    fn sub(self, o: Q) -> Q {
        Q::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Q) -> Q {
        Q::new(self.0 * o.1, self.1 * o.0)
    }
}

impl Tangle {
    /// σ1^k as a vertical braid, both strands running upwards; negative k
    /// gives the mirror.
    pub fn twist(k: i64) -> Tangle {
        let n = k.unsigned_abs() as u32;
        assert!(n >= 1, "a twist region has at least one crossing");
        // crossing i: slots counterclockwise from bottom-left
        let left = |i: u32| if i == 0 { BL } else { 4 + 2 * i - 1 };
        let right = |i: u32| if i == 0 { BR } else { 4 + 2 * i };
        let crossings = (0..n)
            .map(|i| {
                let (nl, nr) = if i + 1 == n { (TL, TR) } else { (left(i + 1), right(i + 1)) };
                // positive σ1: the strand from bottom-right passes under
                RawCrossing { edges: [left(i), right(i), nr, nl], under_even: k < 0 }
            })
            .collect();
        Tangle { crossings }
    }

    /// σ1 σ1^-1: the strand entering at BR passes under both crossings.
    pub fn clasp() -> Tangle {
        Tangle {
            crossings: vec![
                RawCrossing { edges: [BL, BR, 6, 5], under_even: false },
                RawCrossing { edges: [5, 6, TR, TL], under_even: true },
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn mirror(&self) -> Tangle {
        let crossings =
            self.crossings.iter().map(|c| RawCrossing { edges: c.edges, under_even: !c.under_even }).collect();
        Tangle { crossings }
    }

    /// Darts of each edge as (crossing, slot).
    fn edge_darts(&self) -> HashMap<EdgeId, Vec<(usize, usize)>> {
        let mut m: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.edges.iter().enumerate() {
                m.entry(e).or_default().push((c, s));
            }
        }
        m
    }

    /// Checks the edge multiset: boundary edges once, others twice.
    pub fn well_formed(&self) -> bool {
        let m = self.edge_darts();
        (1..=4).all(|e| m.get(&e).map(Vec::len) == Some(1))
            && m.iter().all(|(&e, v)| (1..=4).contains(&e) || v.len() == 2)
    }

    /// Walks both strands from the bottom. `None` when a strand returns to
    /// the bottom or a closed loop is left over.
    pub fn strands(&self) -> Option<Strands> {
        let m = self.edge_darts();
        let n = self.len();
        let mut incoming = vec![[false; 4]; n];
        let mut seen = vec![[false; 4]; n];
        let mut under_over = vec![(usize::MAX, usize::MAX); n];
        let mut exits = [0; 2];
        for (strand, start) in [BL, BR].into_iter().enumerate() {
            let (mut c, mut s) = m[&start][0];
            loop {
                if seen[c][s] {
                    return None;
                }
                seen[c][s] = true;
                seen[c][(s + 2) % 4] = true;
                incoming[c][s] = true;
                let under = (s % 2 == 0) == self.crossings[c].under_even;
                if under {
                    under_over[c].0 = strand;
                } else {
                    under_over[c].1 = strand;
                }
                let e = self.crossings[c].edges[(s + 2) % 4];
                if (1..=4).contains(&e) {
                    exits[strand] = e;
                    break;
                }
                let ds = &m[&e];
                let next = if ds[0] == (c, (s + 2) % 4) { ds[1] } else { ds[0] };
                (c, s) = next;
            }
        }
        if exits.iter().any(|&e| e == BL || e == BR) || seen.iter().any(|x| x.iter().any(|&b| !b)) {
            return None;
        }
        Some(Strands { exits, incoming, under_over })
    }

    /// (writhe of self-crossings, writhe of crossings between the strands),
    /// with both strands oriented upwards.
    pub fn writhe_split(&self, st: &Strands) -> (i64, i64) {
        let mut w = (0, 0);
        for (c, x) in self.crossings.iter().enumerate() {
            let u = if x.under_even { [0, 2] } else { [1, 3] };
            let u_in = if st.incoming[c][u[0]] { u[0] } else { u[1] };
            let sign = if st.incoming[c][(u_in + 3) % 4] { 1 } else { -1 };
            let (a, b) = st.under_over[c];
            if a == b {
                w.0 += sign;
            } else {
                w.1 += sign;
            }
        }
        w
    }

    /// Edge → arc index, arcs joining the over-strand edges at each crossing.
    pub fn arcs(&self) -> BTreeMap<EdgeId, usize> {
        let mut parent: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        fn find(p: &mut BTreeMap<EdgeId, EdgeId>, e: EdgeId) -> EdgeId {
            let q = *p.entry(e).or_insert(e);
            if q == e {
                e
            } else {
                let r = find(p, q);
                p.insert(e, r);
                r
            }
        }
        for x in &self.crossings {
            for &e in &x.edges {
                find(&mut parent, e);
            }
            let o = if x.under_even { [1, 3] } else { [0, 2] };
            let (a, b) = (find(&mut parent, x.edges[o[0]]), find(&mut parent, x.edges[o[1]]));
            if a != b {
                parent.insert(a, b);
            }
        }
        let edges: Vec<EdgeId> = parent.keys().copied().collect();
        let mut index = BTreeMap::new();
        let mut out = BTreeMap::new();
        for e in edges {
            let r = find(&mut parent, e);
            let next = index.len();
            let i = *index.entry(r).or_insert(next);
            out.insert(e, i);
        }
        out
    }

    /// The coloring over the rationals with BL colored 0 and BR colored 1,
    /// as integers per edge. `None` unless it exists, is unique and integral.
    pub fn formal_colors(&self) -> Option<BTreeMap<EdgeId, i64>> {
        let arc = self.arcs();
        let a = arc.values().max().map_or(0, |m| m + 1);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for x in &self.crossings {
            let mut r = vec![Q(0, 1); a + 1];
            let (u, o) = if x.under_even { ([0, 2], 1) } else { ([1, 3], 0) };
            for s in u {
                let i = arc[&x.edges[s]];
                r[i] = r[i].sub(Q(-1, 1));
            }
            let i = arc[&x.edges[o]];
            r[i] = r[i].sub(Q(2, 1));
            rows.push(r);
        }
        for (e, v) in [(BL, 0), (BR, 1)] {
            let mut r = vec![Q(0, 1); a + 1];
            r[arc[&e]] = Q(1, 1);
            r[a] = Q(v, 1);
            rows.push(r);
        }
        // Gauss-Jordan
        let mut piv = Vec::new();
        let mut row = 0;
        for col in 0..a {
            let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].zero()) else { return None };
            rows.swap(row, p);
            let lead = rows[row][col];
            for j in col..=a {
                rows[row][j] = rows[row][j].div(lead);
            }
            for i in 0..rows.len() {
                if i != row && !rows[i][col].zero() {
                    let f = rows[i][col];
                    for j in col..=a {
                        let t = rows[row][j].mul(f);
                        rows[i][j] = rows[i][j].sub(t);
                    }
                }
            }
            piv.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| !r[a].zero()) {
            return None;
        }
        let mut val = vec![0i64; a];
        for (i, &c) in piv.iter().enumerate() {
            let q = rows[i][a];
            if q.1 != 1 {
                return None;
            }
            val[c] = q.0 as i64;
        }
        Some(arc.iter().map(|(&e, &i)| (e, val[i])).collect())
    }

    /// Bracket pair (α, β): the tangle's bracket is α times the tangle
    /// pairing BL–BR and TL–TR plus β times the one pairing BL–TL and BR–TR.
    pub fn bracket_pair(&self) -> (LaurentPoly, LaurentPoly) {
        let mut ids: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for x in &self.crossings {
            for &e in &x.edges {
                let next = ids.len();
                ids.entry(e).or_insert(next);
            }
        }
        let n = self.len();
        let m = ids.len();
        let edges: Vec<[usize; 4]> = self.crossings.iter().map(|x| x.edges.map(|e| ids[&e])).collect();
        let shift: Vec<usize> = self.crossings.iter().map(|x| usize::from(!x.under_even)).collect();
        let (bl, br, tl) = (ids[&BL], ids[&BR], ids[&TL]);
        let mut counts: HashMap<(i32, u32, bool), i64> = HashMap::new();
        let mut parent = vec![0usize; m];
        for state in 0u64..1 << n {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut a = 0i32;
            for c in 0..n {
                let e = &edges[c];
                let r = shift[c];
                let b = state >> c & 1 == 1;
                // A joins slots (r, r+1) and (r+2, r+3); B the other pairing
                let (p, q) = if b { ((r + 3) % 4, (r + 1) % 4) } else { ((r + 1) % 4, (r + 3) % 4) };
                union(&mut parent, e[r], e[p]);
                union(&mut parent, e[(r + 2) % 4], e[q]);
                a += if b { -1 } else { 1 };
            }
            let mut roots = BTreeSet::new();
            for i in 0..m {
                roots.insert(find(&mut parent, i));
            }
            let loops = roots.len() as u32 - 2;
            let horizontal = find(&mut parent, bl) == find(&mut parent, br);
            debug_assert!(horizontal || find(&mut parent, bl) == find(&mut parent, tl));
            *counts.entry((a, loops, horizontal)).or_insert(0) += 1;
        }
        let mut alpha = LaurentPoly::zero();
        let mut beta = LaurentPoly::zero();
        let delta = LaurentPoly::delta();
        for ((a, loops, h), c) in counts {
            let t = &LaurentPoly::monomial(c, a) * &delta.pow(loops);
            if h {
                alpha = alpha + t;
            } else {
                beta = beta + t;
            }
        }
        (alpha, beta)
    }

    /// Face degrees inside the tangle along each side (bottom, right, top,
    /// left), counting crossing corners; `None` when a boundary face meets
    /// the boundary on two sides.
    pub fn side_counts(&self) -> Option<[usize; 4]> {
        let (partner, _) = self.closed_map();
        let faces = crate::diagram::face_cycles(&partner);
        let mut out = [0; 4];
        for f in faces {
            let at_v: Vec<usize> = f.iter().copied().filter(|&d| d < 4).collect();
            match at_v.len() {
                0 => {}
                // the face enters vertex 0 at slot s + 1 and leaves at s
                1 => out[(7 - at_v[0]) % 4] = f.len() - 1,
                _ => return None,
            }
        }
        Some(out)
    }

    /// Degrees of the faces not touching the boundary.
    pub fn interior_face_degrees(&self) -> Vec<usize> {
        let (partner, _) = self.closed_map();
        let mut v: Vec<usize> = crate::diagram::face_cycles(&partner)
            .into_iter()
            .filter(|f| f.iter().all(|&d| d >= 4))
            .map(|f| f.len())
            .collect();
        v.sort_unstable();
        v
    }

    /// Rotation system with the outside collapsed to vertex 0 (slots BL, TL,
    /// TR, BR); crossing i is vertex i + 1.
    pub fn closed_map(&self) -> (Vec<usize>, Vec<bool>) {
        let mut at: HashMap<EdgeId, Vec<usize>> = HashMap::new();
        // seen from outside, the ends run clockwise
        for e in 1..=4u32 {
            at.entry(e).or_default().push((5 - e as usize) % 4);
        }
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.edges.iter().enumerate() {
                at.entry(e).or_default().push(4 * (c + 1) + s);
            }
        }
        let mut partner = vec![usize::MAX; 4 * (self.len() + 1)];
        for v in at.values() {
            partner[v[0]] = v[1];
            partner[v[1]] = v[0];
        }
        let mut under = vec![true];
        under.extend(self.crossings.iter().map(|x| x.under_even));
        (partner, under)
    }

    /// Tangle from a rotation system whose vertex 0 is the outside, with
    /// `rot` choosing which slot of vertex 0 is BL and bit i of `assignment`
    /// putting vertex i + 1's under-strand on its odd slots.
    pub fn from_closed_map(partner: &[usize], rot: usize, assignment: u64) -> Option<Tangle> {
        let n = partner.len() / 4 - 1;
        let mut id = vec![0 as EdgeId; partner.len()];
        for s in 0..4 {
            let d = partner[s];
            if d < 4 {
                return None;
            }
            id[d] = ((rot + 4 - s) % 4 + 1) as EdgeId;
        }
        let mut next = 5;
        for d in 4..partner.len() {
            if id[d] == 0 {
                id[d] = next;
                id[partner[d]] = next;
                next += 1;
            }
        }
        let crossings = (0..n)
            .map(|c| RawCrossing {
                edges: [id[4 * c + 4], id[4 * c + 5], id[4 * c + 6], id[4 * c + 7]],
                under_even: assignment >> c & 1 == 0,
            })
            .collect();
        Some(Tangle { crossings })
    }

    /// Adjacent slots (s, s + 1) at crossing `a` whose edges both run to
    /// crossing `b`, i.e. the corner of a bigon between them.
    pub fn bigon_corner(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (&self.crossings[a].edges, &self.crossings[b].edges);
        (0..4).find(|&s| {
            let (e, f) = (x[s], x[(s + 1) % 4]);
            e > 4 && f > 4 && (0..4).any(|t| y[t] == f && y[(t + 1) % 4] == e)
        })
    }

    /// Lengthens the twist region through the bigon between crossings `a`
    /// and `b` by one crossing of the same sense. The new crossing is last.
    pub fn grow_chain(&self, a: usize, b: usize) -> Option<Tangle> {
        let s = self.bigon_corner(a, b)?;
        let x = self.crossings[a];
        let (e, f) = (x.edges[s], x.edges[(s + 1) % 4]);
        let top = self.crossings.iter().flat_map(|c| c.edges).max().unwrap_or(4).max(4);
        let (g, h) = (top + 1, top + 2);
        let mut out = self.clone();
        let y = &mut out.crossings[b].edges;
        let t = (0..4).find(|&t| y[t] == f && y[(t + 1) % 4] == e)?;
        y[t] = h;
        y[(t + 1) % 4] = g;
        // same slot parity as the twist pattern when the corner is even
        let under_even = if s % 2 == 0 { x.under_even } else { !x.under_even };
        out.crossings.push(RawCrossing { edges: [f, e, g, h], under_even });
        Some(out)
    }

    /// Inverse of [`Tangle::grow_chain`]: merges crossings `a` and `b`
    /// across their bigon into one crossing, which takes `a`'s place.
    pub fn contract_bigon(&self, a: usize, b: usize) -> Option<Tangle> {
        let s = self.bigon_corner(a, b)?;
        let x = self.crossings[a];
        let y = self.crossings[b];
        let (e, f) = (x.edges[s], x.edges[(s + 1) % 4]);
        let t = (0..4).find(|&t| y.edges[t] == f && y.edges[(t + 1) % 4] == e)?;
        let edges = [x.edges[(s + 2) % 4], x.edges[(s + 3) % 4], y.edges[(t + 2) % 4], y.edges[(t + 3) % 4]];
        let under_even = if s % 2 == 0 { x.under_even } else { !x.under_even };
        let mut out = self.clone();
        out.crossings[a] = RawCrossing { edges, under_even };
        out.crossings.remove(b);
        Some(out)
    }

    /// Numerator closure (BL–BR and TL–TR joined) and denominator closure
    /// (BL–TL and BR–TR joined), as diagrams.
    pub fn closures(&self) -> Result<(Diagram, Diagram), DiagramError> {
        let close = |f: &dyn Fn(EdgeId) -> EdgeId| {
            let raw: Vec<RawCrossing> =
                self.crossings.iter().map(|x| RawCrossing { edges: x.edges.map(f), under_even: x.under_even }).collect();
            orient(&raw, &[])
        };
        let num = close(&|e| match e {
            BR => BL,
            TR => TL,
            e => e,
        })?;
        let den = close(&|e| match e {
            TL => BL,
            TR => BR,
            e => e,
        })?;
        Ok((num, den))
    }

    /// Isomorphism fixing the boundary labels and the orientation of the
    /// plane; crossing order and interior edge ids are ignored.
    pub fn isomorphic(&self, other: &Tangle) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let (a, b) = (self.edge_darts(), other.edge_darts());
        let (Some(da), Some(db)) = (a.get(&BL), b.get(&BL)) else { return n == 0 };
        let ((ca, sa), (cb, sb)) = (da[0], db[0]);
        let other_end = |m: &HashMap<EdgeId, Vec<(usize, usize)>>, e: EdgeId, at: (usize, usize)| {
            m.get(&e).and_then(|v| v.iter().copied().find(|&x| x != at))
        };
        // crossing -> (image, slot rotation)
        let mut map: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut used = vec![false; n];
        map[ca] = Some((cb, (sb + 4 - sa) % 4));
        used[cb] = true;
        let mut stack = vec![ca];
        while let Some(c) = stack.pop() {
            let (c2, r) = map[c].unwrap();
            let (x, y) = (&self.crossings[c], &other.crossings[c2]);
            if (r % 2 == 0) != (x.under_even == y.under_even) {
                return false;
            }
            for s in 0..4 {
                let t = (s + r) % 4;
                let (e, f) = (x.edges[s], y.edges[t]);
                if e <= 4 || f <= 4 {
                    if e != f {
                        return false;
                    }
                    continue;
                }
                let (Some(oe), Some(of)) = (other_end(&a, e, (c, s)), other_end(&b, f, (c2, t))) else {
                    return false;
                };
                let want = (of.0, (of.1 + 4 - oe.1) % 4);
                match map[oe.0] {
                    Some(m) if m != want => return false,
                    Some(_) => {}
                    None => {
                        if used[want.0] {
                            return false;
                        }
                        used[want.0] = true;
                        map[oe.0] = Some(want);
                        stack.push(oe.0);
                    }
                }
            }
        }
        map.iter().all(Option::is_some)
    }

    /// Reflection of the plane through the vertical axis, keeping crossing
    /// information as a diagram (so the twist sense flips).
    pub fn reflected(&self) -> Tangle {
        let swap = |e: EdgeId| match e {
            BL => BR,
            BR => BL,
            TR => TL,
            TL => TR,
            e => e,
        };
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let e = x.edges;
                // reversing the cyclic order keeps slot parity
                RawCrossing { edges: [swap(e[0]), swap(e[3]), swap(e[2]), swap(e[1])], under_even: x.under_even }
            })
            .collect();
        Tangle { crossings }
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let z = p[y];
        p[y] = r;
        y = z;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (x, y) = (find(p, a), find(p, b));
    if x != y {
        p[x] = y;
    }
}

/// Outcome of certifying a tangle as a replacement for σ1^k (or another
/// reference tangle, `k` then being its linking writhe).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: i64,
    pub crossings: usize,
    /// Formal colors used, as multiples of (b − a) offset from a.
    pub palette: Vec<i64>,
    pub reference_palette: Vec<i64>,
    pub sides: [usize; 4],
    pub interior_faces: Vec<usize>,
    /// Writhe of the self-crossings; the bracket pair equals (−A³)^this
    /// times that of the reference (whose self-writhe is 0 for σ1^k).
    pub self_writhe: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("tangle is not well formed")]
    Malformed,
    #[error("strands do not connect like those of the twist region")]
    Connectivity,
    #[error("linking writhe {got}, expected {want}")]
    Linking { got: i64, want: i64 },
    #[error("bracket pair differs from the twist region's")]
    Bracket,
    #[error("coloring is not forced by the boundary")]
    Coloring,
    #[error("boundary colors differ from the twist region's")]
    BoundaryColors,
}

/// Checks that `t` can replace σ1^k: same strand connections, bracket pair
/// matching up to the writhe correction, and a coloring forced by the two
/// bottom colors that agrees with σ1^k on the boundary.
pub fn certify(t: &Tangle, k: i64) -> Result<Certificate, CertifyError> {
    certify_against(t, &Tangle::twist(k))
}

/// Largest tangle whose bracket pair is computed by the full state sum.
pub const STATE_SUM_MAX: usize = 16;

/// How [`certify_with`] compares brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketRoute {
    /// The bracket pair from all 2^n states.
    StateSum,
    /// Brackets of the numerator and denominator closures, by sweeping.
    Closures,
}

/// Certifies `t` as a replacement for the tangle `reference`, choosing the
/// bracket route by size.
pub fn certify_against(t: &Tangle, reference: &Tangle) -> Result<Certificate, CertifyError> {
    let route =
        if t.len().max(reference.len()) <= STATE_SUM_MAX { BracketRoute::StateSum } else { BracketRoute::Closures };
    certify_with(t, reference, route)
}

pub fn certify_with(t: &Tangle, reference: &Tangle, route: BracketRoute) -> Result<Certificate, CertifyError> {
    if !t.well_formed() {
        return Err(CertifyError::Malformed);
    }
    let rs = reference.strands().ok_or(CertifyError::Malformed)?;
    let st = t.strands().ok_or(CertifyError::Connectivity)?;
    if st.exits != rs.exits {
        return Err(CertifyError::Connectivity);
    }
    let (ref_self, k) = reference.writhe_split(&rs);
    let (self_w, link_w) = t.writhe_split(&st);
    if link_w != k {
        return Err(CertifyError::Linking { got: link_w, want: k });
    }
    let unit = LaurentPoly::neg_a3_pow(self_w - ref_self);
    let same = match route {
        BracketRoute::StateSum => {
            let (ra, rb) = reference.bracket_pair();
            let (ta, tb) = t.bracket_pair();
            ta == &unit * &ra && tb == &unit * &rb
        }
        BracketRoute::Closures => {
            // both closures together determine the bracket pair
            let (rn, rd) = reference.closures().map_err(|_| CertifyError::Malformed)?;
            let (tn, td) = t.closures().map_err(|_| CertifyError::Malformed)?;
            bracket_sweep(&tn) == &unit * &bracket_sweep(&rn) && bracket_sweep(&td) == &unit * &bracket_sweep(&rd)
        }
    };
    if !same {
        return Err(CertifyError::Bracket);
    }
    let rc = reference.formal_colors().ok_or(CertifyError::Malformed)?;
    let tc = t.formal_colors().ok_or(CertifyError::Coloring)?;
    if (1..=4).any(|e| rc[&e] != tc[&e]) {
        return Err(CertifyError::BoundaryColors);
    }
    let palette: BTreeSet<i64> = tc.values().copied().collect();
    let reference_palette: BTreeSet<i64> = rc.values().copied().collect();
    Ok(Certificate {
        k,
        crossings: t.len(),
        palette: palette.into_iter().collect(),
        reference_palette: reference_palette.into_iter().collect(),
        sides: t.side_counts().unwrap_or([0; 4]),
        interior_faces: t.interior_face_degrees(),
        self_writhe: self_w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_region_basics() {
        for k in [1i64, 2, 3, 4, -3] {
            let t = Tangle::twist(k);
            assert!(t.well_formed());
            let st = t.strands().unwrap();
            let n = k.unsigned_abs();
            let expect = if n % 2 == 1 { [TR, TL] } else { [TL, TR] };
            assert_eq!(st.exits, expect, "k={k}");
            assert_eq!(t.writhe_split(&st), (0, k));
            assert_eq!(t.side_counts(), Some([1, n as usize, 1, n as usize]));
            let c = certify(&t, k).unwrap();
            assert_eq!(c.palette.len(), n as usize + 2);
        }
    }

    #[test]
    fn twist_colors_are_an_arithmetic_progression() {
        let c = Tangle::twist(3).formal_colors().unwrap();
        let mut v: Vec<i64> = c.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
        v.sort();
        assert_eq!(v.len(), 5);
        assert!(v.windows(2).all(|w| w[1] - w[0] == 1));
    }

    #[test]
    fn twist_bracket_recursion() {
        // <σ^k> = A<σ^(k-1)> + A^-1 <0-smoothing>… checked through k = 1
        let (a, b) = Tangle::twist(1).bracket_pair();
        assert!(a.coeff(1) != 0 || a.coeff(-1) != 0);
        assert!(b.coeff(1) != 0 || b.coeff(-1) != 0);
        assert_ne!(Tangle::twist(2).bracket_pair(), Tangle::twist(-2).bracket_pair());
    }

    #[test]
    fn bracket_routes_agree() {
        let t = Tangle::twist(3);
        for k in [3, 2, -3] {
            let a = certify_with(&t, &Tangle::twist(k), BracketRoute::StateSum).is_ok();
            let b = certify_with(&t, &Tangle::twist(k), BracketRoute::Closures).is_ok();
            assert_eq!(a, b, "k={k}");
        }
        let grown = Tangle::twist(2).grow_chain(0, 1).unwrap();
        assert!(certify_with(&grown, &Tangle::twist(3), BracketRoute::Closures).is_ok());
        assert_eq!(grown.contract_bigon(0, 2).unwrap().len(), 2);
    }

    #[test]
    fn mirror_twist_fails_certification() {
        assert!(certify(&Tangle::twist(-3), 3).is_err());
        assert!(certify(&Tangle::twist(3), 2).is_err());
    }

    #[test]
    fn isomorphism_fixes_the_boundary() {
        let t = Tangle::twist(3);
        let mut shuffled = t.clone();
        shuffled.crossings.reverse();
        for x in &mut shuffled.crossings {
            x.edges = x.edges.map(|e| if e > 4 { e + 10 } else { e });
        }
        assert!(t.isomorphic(&shuffled));
        assert!(!t.isomorphic(&Tangle::twist(-3)));
        let turn = |e: EdgeId| if e <= 4 { (e + 1) % 4 + 1 } else { e };
        let half_turn =
            Tangle { crossings: t.crossings.iter().map(|x| RawCrossing { edges: x.edges.map(turn), ..*x }).collect() };
        assert!(t.isomorphic(&half_turn));
        let quarter = |e: EdgeId| if e <= 4 { e % 4 + 1 } else { e };
        let quarter_turn =
            Tangle { crossings: t.crossings.iter().map(|x| RawCrossing { edges: x.edges.map(quarter), ..*x }).collect() };
        assert!(!t.isomorphic(&quarter_turn));
    }
}
