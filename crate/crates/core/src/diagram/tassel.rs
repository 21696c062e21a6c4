use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::faces::{detect_lunes, Face};
use super::{dart_crossing, dart_slot, Diagram, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LuneKind {
    /// Alternating bigons: the site is a twist σ^{±k}.
    Twist,
    /// Non-alternating bigons: one strand passes over at both ends (R2 shape).
    Clasp,
    /// A bigon whose two corners sit at the same crossing (one-crossing curve).
    Curl,
}

/// A maximal chain of bigons. Crossings are listed along the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TasselSite {
    pub crossings: Vec<usize>,
    pub k: usize,
    pub sign: i64,
    pub cyclic: bool,
    pub kind: LuneKind,
    /// Lunes attributed to this site.
    #[serde(skip)]
    pub lunes: Vec<Face>,
}

/// Corner of a bigon at one crossing: `(crossing, corner)` where the bigon
/// occupies slots `corner` and `corner + 1`.
fn corners(f: &Face) -> [(usize, usize); 2] {
    [
        (dart_crossing(f.darts[0]), dart_slot(f.darts[0])),
        (dart_crossing(f.darts[1]), dart_slot(f.darts[1])),
    ]
}

pub(crate) fn lune_kind(d: &Diagram, f: &Face) -> LuneKind {
    let [(c1, _), (c2, _)] = corners(f);
    if c1 == c2 {
        return LuneKind::Curl;
    }
    let d1 = f.darts[0];
    let p1 = d.partner(d1);
    if dart_slot(d1) % 2 != dart_slot(p1) % 2 {
        LuneKind::Twist
    } else {
        LuneKind::Clasp
    }
}

/// Maximal tassels, pairwise disjoint. Larger sites win overlaps; every lune
/// is attributed to exactly one site.
pub fn detect_maximal_tassels(d: &Diagram) -> Vec<TasselSite> {
    let lunes = detect_lunes(d);
    let mut sites: Vec<TasselSite> = Vec::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut owned = vec![false; lunes.len()];

    for kind in [LuneKind::Twist, LuneKind::Clasp] {
        let idx: Vec<usize> = (0..lunes.len()).filter(|&i| lune_kind(d, &lunes[i]) == kind).collect();
        let mut chains = chains(&lunes, &idx);
        chains.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| sorted(&a.0).cmp(&sorted(&b.0))));
        for (cr, cyclic) in chains {
            for (cr, cyclic) in free_runs(cr, cyclic, &used) {
                used.extend(cr.iter().copied());
                let k = cr.len();
                sites.push(TasselSite {
                    sign: d.crossings()[cr[0]].sign.as_int(),
                    crossings: cr,
                    k,
                    cyclic,
                    kind,
                    lunes: Vec::new(),
                });
            }
        }
    }
    for (i, f) in lunes.iter().enumerate() {
        if lune_kind(d, f) == LuneKind::Curl && !used.contains(&dart_crossing(f.darts[0])) {
            let c = dart_crossing(f.darts[0]);
            used.insert(c);
            sites.push(TasselSite {
                crossings: vec![c],
                k: 1,
                sign: d.crossings()[c].sign.as_int(),
                cyclic: true,
                kind: LuneKind::Curl,
                lunes: vec![f.clone()],
            });
            owned[i] = true;
        }
    }
    // attribute lunes: first to a site containing both crossings, otherwise
    // to the first site containing either
    for pass in 0..2 {
        for (i, f) in lunes.iter().enumerate() {
            if owned[i] {
                continue;
            }
            let [(c1, _), (c2, _)] = corners(f);
            let hit = sites.iter().position(|s| {
                let (a, b) = (s.crossings.contains(&c1), s.crossings.contains(&c2));
                if pass == 0 {
                    a && b
                } else {
                    a || b
                }
            });
            if let Some(j) = hit {
                sites[j].lunes.push(f.clone());
                owned[i] = true;
            }
        }
    }
    debug_assert!(owned.iter().all(|o| *o));
    sites.sort_by(|a, b| b.k.cmp(&a.k).then_with(|| sorted(&a.crossings).cmp(&sorted(&b.crossings))));
    sites
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Chains of bigons through `(crossing, corner class)` nodes. Returns the
/// crossing sequence of each chain and whether it closes up.
/// The parts of a chain left once crossings taken by larger sites are cut
/// out: maximal runs of at least two free crossings.
fn free_runs(cr: Vec<usize>, cyclic: bool, used: &BTreeSet<usize>) -> Vec<(Vec<usize>, bool)> {
    let Some(first) = cr.iter().position(|c| used.contains(c)) else {
        return vec![(cr, cyclic)];
    };
    let order: Vec<usize> = if cyclic {
        cr[first..].iter().chain(&cr[..first]).copied().collect()
    } else {
        cr
    };
    order
        .split(|c| used.contains(c))
        .filter(|run| run.len() >= 2)
        .map(|run| (run.to_vec(), false))
        .collect()
}

fn chains(lunes: &[Face], idx: &[usize]) -> Vec<(Vec<usize>, bool)> {
    type Node = (usize, usize);
    let mut adj: BTreeMap<Node, Vec<(Node, usize)>> = BTreeMap::new();
    for &i in idx {
        let [(c1, s1), (c2, s2)] = corners(&lunes[i]);
        let (a, b) = ((c1, s1 % 2), (c2, s2 % 2));
        adj.entry(a).or_default().push((b, i));
        adj.entry(b).or_default().push((a, i));
    }
    let mut seen_edge: BTreeSet<usize> = BTreeSet::new();
    let mut seen_node: BTreeSet<Node> = BTreeSet::new();
    let mut out = Vec::new();
    // paths first (start at degree-1 nodes), then cycles
    let starts: Vec<Node> = adj
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(n, _)| *n)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        if seen_node.contains(&start) {
            continue;
        }
        let mut walk = vec![start];
        seen_node.insert(start);
        let mut cur = start;
        let mut cyclic = false;
        loop {
            let next = adj[&cur].iter().find(|(_, e)| !seen_edge.contains(e)).copied();
            let Some((n, e)) = next else { break };
            seen_edge.insert(e);
            if n == start {
                cyclic = true;
                break;
            }
            if !seen_node.insert(n) {
                break;
            }
            walk.push(n);
            cur = n;
        }
        // a crossing may appear under both corner classes; cut there
        let mut seg: Vec<usize> = Vec::new();
        let mut segs = Vec::new();
        for (c, _) in &walk {
            if seg.contains(c) {
                segs.push(std::mem::take(&mut seg));
            }
            seg.push(*c);
        }
        let whole = segs.is_empty();
        segs.push(seg);
        for s in segs {
            if s.len() >= 2 {
                let cyc = cyclic && whole;
                out.push((orient_chain(s, cyc), cyc));
            }
        }
    }
    out
}

/// Deterministic start and direction: start at the least crossing (cycles)
/// or at the end with the lesser crossing (paths).
fn orient_chain(mut s: Vec<usize>, cyclic: bool) -> Vec<usize> {
    if cyclic {
        let m = (0..s.len()).min_by_key(|&i| s[i]).unwrap();
        s.rotate_left(m);
        let n = s.len();
        if n > 2 && s[n - 1] < s[1] {
            s[1..].reverse();
        }
    } else if s[s.len() - 1] < s[0] {
        s.reverse();
    }
    s
}

impl TasselSite {
    pub fn crossing_sign(&self) -> Sign {
        Sign::from_int(self.sign).expect("sign is ±1")
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::diagram::{from_braid, parse_text, BraidWord};

    #[test]
    fn torus_links_are_single_cyclic_sites() {
        for n in [2, 3, 5, 8] {
            let s = detect_maximal_tassels(&torus2(n));
            assert_eq!(s.len(), 1, "n={n}");
            assert_eq!(s[0].k, n);
            assert!(s[0].cyclic);
            assert_eq!(s[0].kind, LuneKind::Twist);
            let lunes = if n == 2 { 4 } else { n };
            assert_eq!(s[0].lunes.len(), lunes);
        }
    }

    #[test]
    fn figure_eight_has_two_isolated_lunes() {
        let s = detect_maximal_tassels(&figure_eight());
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|t| t.k == 2 && !t.cyclic && t.kind == LuneKind::Twist));
    }

    #[test]
    fn linear_tassel_inside_a_braid() {
        // σ1^4 σ2 σ1^-1 σ2: a maximal 4-tassel, and a clasp-free rest
        let d = from_braid(&BraidWord::new(3, vec![1, 1, 1, 1, 2, -1, 2]).unwrap()).unwrap();
        let s = detect_maximal_tassels(&d);
        assert!(s.iter().any(|t| t.k == 4 && !t.cyclic), "{s:?}");
    }

    #[test]
    fn clasp_lune_is_recognized() {
        let d = from_braid(&BraidWord::new(3, vec![1, -1, 2, 2, 2]).unwrap());
        let d = d.unwrap();
        let s = detect_maximal_tassels(&d);
        assert!(s.iter().any(|t| t.kind == LuneKind::Clasp), "{s:?}");
    }

    #[test]
    fn ring_of_mixed_lunes_is_fully_attributed() {
        let d = parse_text("X 1 2 3 4 -1\nX 4 3 5 6 -1\nX 5 7 8 6 1\nX 8 7 9 10 -1\nX 9 2 1 10 1\n").unwrap();
        let sites = detect_maximal_tassels(&d);
        let owned: usize = sites.iter().map(|s| s.lunes.len()).sum();
        assert_eq!(owned, detect_lunes(&d).len());
        assert_eq!(owned, 5);
    }
}
