//! Unoriented crossing data: edges around a vertex plus which opposite pair is
//! the under-strand. Rewrites produce this form; orientation is then
//! propagated from hints and the result converted back to a PD code.

use super::{dart, opposite, partner_table, Crossing, Dart, Diagram, DiagramError, EdgeId, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RawCrossing {
    /// Edges counterclockwise.
    pub edges: [EdgeId; 4],
    /// Under-strand occupies slots 0 and 2 (else 1 and 3).
    pub under_even: bool,
}

impl RawCrossing {
    pub fn from_pd(c: &Crossing) -> Self {
        RawCrossing { edges: c.edges, under_even: true }
    }
}

/// `(crossing, slot, incoming)`: the dart at that slot is an incoming end.
pub type OrientHint = (usize, usize, bool);

/// Orients each component from the first hint that touches it (components
/// without hints start at their least dart, taken as incoming) and returns a
/// validated PD diagram with crossings in the given order.
pub fn orient(raw: &[RawCrossing], hints: &[OrientHint]) -> Result<Diagram, DiagramError> {
    if raw.is_empty() {
        return Ok(Diagram::unknot());
    }
    let fake: Vec<Crossing> = raw.iter().map(|r| Crossing::new(r.edges, Sign::Positive)).collect();
    let partner = partner_table(&fake)?;
    let n = partner.len();
    let mut inc: Vec<Option<bool>> = vec![None; n];
    let seeds = hints
        .iter()
        .map(|&(c, s, i)| (dart(c, s), i))
        .chain((0..n).map(|d| (d, true)));
    for (d0, i0) in seeds {
        if inc[d0].is_some() {
            continue;
        }
        // walk the straight-ahead component
        let mut d = d0;
        let i = i0;
        loop {
            set(&mut inc, d, i, &fake)?;
            let o = opposite(d);
            set(&mut inc, o, !i, &fake)?;
            let p = partner[o];
            set(&mut inc, p, i, &fake)?;
            d = p;
            if d == d0 {
                break;
            }
        }
    }
    let mut cs = Vec::with_capacity(raw.len());
    for (ci, r) in raw.iter().enumerate() {
        let under = if r.under_even { [0, 2] } else { [1, 3] };
        let u = if inc[dart(ci, under[0])] == Some(true) { under[0] } else { under[1] };
        let e = [r.edges[u], r.edges[(u + 1) % 4], r.edges[(u + 2) % 4], r.edges[(u + 3) % 4]];
        let over_in_at_3 = inc[dart(ci, (u + 3) % 4)] == Some(true);
        let sign = if over_in_at_3 { Sign::Positive } else { Sign::Negative };
        cs.push(Crossing::new(e, sign));
    }
    Diagram::new(cs)
}

fn set(inc: &mut [Option<bool>], d: Dart, v: bool, fake: &[Crossing]) -> Result<(), DiagramError> {
    match inc[d] {
        Some(x) if x != v => Err(DiagramError::Orientation { edge: fake[d / 4].edges[d % 4] }),
        _ => {
            inc[d] = Some(v);
            Ok(())
        }
    }
}
