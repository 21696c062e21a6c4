use std::collections::HashMap;

use rayon::prelude::*;

use super::poly::LaurentPoly;
use crate::diagram::{Diagram, EdgeId};

pub const DEFAULT_BRACKET_CAP: usize = 20;

/// Smoothing of one crossing, with the under-strand on slots 0 and 2: the A
/// smoothing joins (0,1),(2,3); the B smoothing joins (0,3),(1,2).
const A_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
const B_PAIRS: [(usize, usize); 2] = [(0, 3), (1, 2)];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("state-sum too large: {crossings} crossings exceeds the cap of {cap}")]
pub struct CapExceeded {
    pub crossings: usize,
    pub cap: usize,
}

/// Kauffman bracket by the full 2^V state sum, normalised so the
/// crossingless unknot has bracket 1.
pub fn bracket(d: &Diagram) -> Result<LaurentPoly, CapExceeded> {
    bracket_with_cap(d, DEFAULT_BRACKET_CAP)
}

pub fn bracket_with_cap(d: &Diagram, cap: usize) -> Result<LaurentPoly, CapExceeded> {
    let v = d.crossing_count();
    if v > cap {
        return Err(CapExceeded { crossings: v, cap });
    }
    if v == 0 {
        return Ok(LaurentPoly::one());
    }
    let partner: Vec<usize> = (0..4 * v).map(|x| d.partner(x)).collect();
    // counts[a][loops]: number of states with `a` A-smoothings and `loops` loops
    let width = 2 * v + 2;
    let total: u64 = 1 << v;
    let chunk = (total / 256).max(1);
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|blk| {
            let mut cnt = vec![0u64; (v + 1) * width];
            let mut seen = vec![false; 4 * v];
            let mut smooth = vec![0usize; 4 * v];
            let end = ((blk + 1) * chunk).min(total);
            for state in blk * chunk..end {
                for c in 0..v {
                    let pairs = if state >> c & 1 == 0 { &A_PAIRS } else { &B_PAIRS };
                    for &(x, y) in pairs {
                        smooth[4 * c + x] = 4 * c + y;
                        smooth[4 * c + y] = 4 * c + x;
                    }
                }
                seen.iter_mut().for_each(|s| *s = false);
                let mut loops = 0;
                for s in 0..4 * v {
                    if seen[s] {
                        continue;
                    }
                    loops += 1;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        let y = smooth[x];
                        seen[y] = true;
                        x = partner[y];
                    }
                }
                let a = v - (state.count_ones() as usize);
                cnt[a * width + loops] += 1;
            }
            cnt
        })
        .reduce(
            || vec![0u64; (v + 1) * width],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    let delta = LaurentPoly::delta();
    let mut dpow = vec![LaurentPoly::one()];
    for i in 1..width {
        dpow.push(&dpow[i - 1] * &delta);
    }
    let mut out = LaurentPoly::zero();
    for a in 0..=v {
        for loops in 1..width {
            let n = counts[a * width + loops];
            if n == 0 {
                continue;
            }
            let mono = LaurentPoly::monomial(n as i64, a as i32 - (v - a) as i32);
            out = out + &mono * &dpow[loops - 1];
        }
    }
    Ok(out)
}

/// Kauffman bracket by sweeping crossings one at a time and keeping, for each
/// non-crossing matching of the open edge ends, its accumulated polynomial.
/// No crossing cap; cost is governed by the width of the sweep.
pub fn bracket_sweep(d: &Diagram) -> LaurentPoly {
    let v = d.crossing_count();
    if v == 0 {
        return LaurentPoly::one();
    }
    let order = sweep_order(d);
    let delta = LaurentPoly::delta();
    // open: edges with exactly one processed end; a state maps each open
    // edge (by position) to the position of the open edge it is joined to
    let mut open: Vec<EdgeId> = Vec::new();
    let mut states: HashMap<Vec<u16>, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());
    for &c in &order {
        let edges = d.crossings()[c].edges;
        let at_c = |e: EdgeId| edges.iter().filter(|&&x| x == e).count();
        let mut next_open: Vec<EdgeId> = open.iter().copied().filter(|e| at_c(*e) == 0).collect();
        for &e in &edges {
            if at_c(e) == 1 && !open.contains(&e) && !next_open.contains(&e) {
                next_open.push(e);
            }
        }
        let pos_next: HashMap<EdgeId, usize> = next_open.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let pos_old: HashMap<EdgeId, usize> = open.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut fresh: HashMap<Vec<u16>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (state, poly) in &states {
            for (pairs, exp) in [(&A_PAIRS, 1), (&B_PAIRS, -1)] {
                let (m, loops) = glue(&edges, pairs, state, &open, &pos_old, &next_open, &pos_next);
                let mut p = poly * &LaurentPoly::monomial(1, exp);
                for _ in 0..loops {
                    p = &p * &delta;
                }
                let slot = fresh.entry(m).or_default();
                *slot = std::mem::take(slot) + p;
            }
        }
        fresh.retain(|_, p| !p.is_zero());
        states = fresh;
        open = next_open;
    }
    debug_assert!(open.is_empty());
    // every closed loop multiplied one δ; the unknot normalisation removes one
    let total = states.remove(&Vec::new()).unwrap_or_default();
    divide_by_delta(&total)
}

/// Joins crossing `edges` smoothed by `pairs` to the partial state.
fn glue(
    edges: &[EdgeId; 4],
    pairs: &[(usize, usize); 2],
    state: &[u16],
    open: &[EdgeId],
    pos_old: &HashMap<EdgeId, usize>,
    next_open: &[EdgeId],
    pos_next: &HashMap<EdgeId, usize>,
) -> (Vec<u16>, usize) {
    let mut smooth = [0usize; 4];
    for &(x, y) in pairs {
        smooth[x] = y;
        smooth[y] = x;
    }
    let mut used = [false; 4];
    let mut out = vec![u16::MAX; next_open.len()];
    // Walk from a slot through the crossing and onward until reaching an
    // edge end that stays open. Returns the open edge reached.
    let walk = |mut s: usize, used: &mut [bool; 4]| -> EdgeId {
        loop {
            used[s] = true;
            let t = smooth[s];
            used[t] = true;
            let e = edges[t];
            if let Some(&i) = pos_old.get(&e) {
                // through processed region to its partner edge
                let f = open[state[i] as usize];
                if let Some(u) = (0..4).find(|&u| edges[u] == f && !used[u]) {
                    s = u;
                    continue;
                }
                return f;
            }
            if let Some(u) = (0..4).find(|&u| u != t && edges[u] == e) {
                // an edge with both ends here
                s = u;
                continue;
            }
            return e;
        }
    };
    // open edges that stay open but whose partner is at this crossing, and
    // new open edges, get re-paired through the crossing
    for s in 0..4 {
        if used[s] {
            continue;
        }
        let e = edges[s];
        let starts_here = pos_next.contains_key(&e) && !pos_old.contains_key(&e);
        let old_far = pos_old.get(&e).map(|&i| open[state[i] as usize]);
        let start_edge = if starts_here {
            Some(e)
        } else {
            old_far.filter(|f| pos_next.contains_key(f) && !edges.contains(f))
        };
        if let Some(a) = start_edge {
            let b = walk(s, &mut used);
            let (ia, ib) = (pos_next[&a], pos_next[&b]);
            out[ia] = ib as u16;
            out[ib] = ia as u16;
        }
    }
    // untouched pairs carry over
    for (i, e) in next_open.iter().enumerate() {
        if out[i] == u16::MAX {
            let j = pos_old[e];
            let f = open[state[j] as usize];
            out[i] = pos_next[&f] as u16;
        }
    }
    // remaining unused slots lie on closed loops
    let mut loops = 0;
    for s in 0..4 {
        if !used[s] {
            loops += 1;
            let mut x = s;
            while !used[x] {
                used[x] = true;
                let t = smooth[x];
                used[t] = true;
                let e = edges[t];
                x = if let Some(&i) = pos_old.get(&e) {
                    let f = open[state[i] as usize];
                    (0..4).find(|&u| edges[u] == f && u != t).expect("closed loop returns to this crossing")
                } else {
                    (0..4).find(|&u| u != t && edges[u] == e).expect("self edge")
                };
            }
        }
    }
    (out, loops)
}

fn divide_by_delta(p: &LaurentPoly) -> LaurentPoly {
    // p = q · (−A² − A⁻²); peel from the top degree
    let mut rem = p.clone();
    let mut q = LaurentPoly::zero();
    while let Some((e, c)) = rem.terms().last() {
        let t = LaurentPoly::monomial(-c, e - 2);
        rem = rem - &t * &LaurentPoly::delta();
        q = q + t;
    }
    q
}

/// Greedy order keeping the frontier small: next crossing is the one with
/// the most edges into the processed set, ties going to the most recently
/// touched. Several starts are tried and the narrowest sweep kept.
fn sweep_order(d: &Diagram) -> Vec<usize> {
    let v = d.crossing_count();
    let stride = v.div_ceil(48).max(1);
    (0..v)
        .step_by(stride)
        .map(|start| greedy_order(d, start))
        .min_by_key(|(_, width)| *width)
        .map(|(order, _)| order)
        .unwrap_or_default()
}

/// Greedy order from `start`, with its largest frontier.
fn greedy_order(d: &Diagram, start: usize) -> (Vec<usize>, usize) {
    let v = d.crossing_count();
    let mut done = vec![false; v];
    let mut order = Vec::with_capacity(v);
    let mut score = vec![0i32; v];
    let mut touched = vec![0usize; v];
    let (mut cur, mut open, mut width) = (start, 0i32, 0);
    for step in 1..=v {
        done[cur] = true;
        order.push(cur);
        open += 4 - 2 * score[cur];
        width = width.max(open as usize);
        for s in 0..4 {
            let w = d.partner(4 * cur + s) / 4;
            score[w] += 1;
            touched[w] = step;
        }
        if order.len() == v {
            break;
        }
        cur = (0..v).filter(|&w| !done[w]).max_by_key(|&w| (score[w], touched[w], usize::MAX - w)).unwrap();
    }
    (order, width)
}

/// (−A³)^{−w} · bracket: invariant under all three Reidemeister moves.
pub fn normalized_f(d: &Diagram) -> Result<LaurentPoly, CapExceeded> {
    Ok(&LaurentPoly::neg_a3_pow(-d.writhe()) * &bracket(d)?)
}

/// Same as [`normalized_f`] through the sweep route, without a cap.
pub fn normalized_f_sweep(d: &Diagram) -> LaurentPoly {
    &LaurentPoly::neg_a3_pow(-d.writhe()) * &bracket_sweep(d)
}
