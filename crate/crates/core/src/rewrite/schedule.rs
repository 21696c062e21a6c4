//! Crossing-count bookkeeping for the tassel strategies: the chunk plan for a
//! long tassel, the Teneva split tree and its bound, and the comparison
//! between the two.

use serde::Serialize;

use super::templates::teneva_split;
use super::RewriteError;
use crate::lowerhalf::lh_sequence;

/// Extra crossings of the template for a single chunk of k crossings.
pub fn chunk_delta(k: usize) -> Option<u64> {
    match k {
        2 => Some(8),
        3 | 4 => Some(5),
        5 | 6 => Some(6),
        _ => None,
    }
}

/// Extra crossings needed to delunify σ1^n, n ≥ 6, chunk by chunk.
pub fn cor22_extra(n: u64) -> Result<u64, RewriteError> {
    if n < 6 {
        return Err(RewriteError::TooSmall { n, min: 6 });
    }
    let (k, r) = (n / 6, n % 6);
    Ok(6 * k
        + match r {
            0 => 0,
            1 | 2 => 4,
            3 | 4 => 5,
            _ => 6,
        })
}

/// Chunk sizes for a k-tassel, k ≥ 2, in application order along the chain.
pub fn cor22_schedule(k: usize) -> Result<Vec<usize>, RewriteError> {
    if k < 2 {
        return Err(RewriteError::TooSmall { n: k as u64, min: 2 });
    }
    if k <= 6 {
        return Ok(vec![k]);
    }
    let (q, r) = (k / 6, k % 6);
    Ok(match r {
        0 => vec![6; q],
        1 => [vec![6; q - 1], vec![3, 4]].concat(),
        2 => [vec![4], vec![6; q - 1], vec![4]].concat(),
        r => [vec![6; q], vec![r]].concat(),
    })
}

pub fn plan_delta(plan: &[usize]) -> u64 {
    plan.iter().map(|&k| chunk_delta(k).expect("plans use chunks of 2..=6")).sum()
}

/// Delta of the cheapest direct treatment of a k-tassel: the chunk plan,
/// with the main lemma for k = 2.
pub fn direct_cost(k: usize) -> u64 {
    match k {
        0 | 1 => 0,
        2..=6 => chunk_delta(k).unwrap(),
        _ => cor22_extra(k as u64).unwrap(),
    }
}

/// Terminal tassel sizes of the full Teneva game on σ1^n, left to right in
/// the split tree, with the number of transformations performed.
pub fn teneva_leaves(n: usize) -> (Vec<usize>, usize) {
    fn go(k: usize, leaves: &mut Vec<usize>, moves: &mut usize) {
        if k < 5 {
            leaves.push(k);
            return;
        }
        *moves += 1;
        let (a, b) = teneva_split(k);
        go(a, leaves, moves);
        go(b, leaves, moves);
    }
    let (mut leaves, mut moves) = (Vec::new(), 0);
    go(n, &mut leaves, &mut moves);
    (leaves, moves)
}

/// Delta of the full game: one crossing per transformation plus the
/// templates for the terminal tassels.
pub fn teneva_full_cost(n: usize) -> u64 {
    let (leaves, moves) = teneva_leaves(n);
    moves as u64 + leaves.iter().map(|&k| direct_cost(k)).sum::<u64>()
}

/// Upper bound on the extra crossings of the full game on σ1^n:
/// 6·2^l − 1 without terminal 2-tassels, else 9·2^l − 1, with l = l_n.
pub fn teneva_bound(n: u64) -> Result<u64, RewriteError> {
    if n < 5 {
        return Err(RewriteError::TooSmall { n, min: 5 });
    }
    let l = lh_sequence(n).expect("n >= 5").l as u32;
    let (leaves, _) = teneva_leaves(n as usize);
    let factor = if leaves.contains(&2) { 9 } else { 6 };
    Ok(factor * 2u64.pow(l) - 1)
}

/// Whether the truncated game transforms a k-tassel: only when one more
/// transformation followed by the best treatment of both halves is strictly
/// cheaper than treating the tassel directly.
pub fn truncated_splits(k: usize) -> bool {
    k >= 5 && {
        let (a, b) = teneva_split(k);
        1 + truncated_cost(a) + truncated_cost(b) < direct_cost(k)
    }
}

/// Delta of the truncated game on σ1^k.
pub fn truncated_cost(k: usize) -> u64 {
    if truncated_splits(k) {
        let (a, b) = teneva_split(k);
        1 + truncated_cost(a) + truncated_cost(b)
    } else {
        direct_cost(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: u64,
    pub planned: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyReport {
    pub n_max: u64,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

/// Checks cor22_extra(n) ≤ 6·2^{l_n} − 1 for every n in [12, n_max].
pub fn compare_strategies(n_max: u64) -> Result<StrategyReport, RewriteError> {
    if n_max < 12 {
        return Err(RewriteError::TooSmall { n: n_max, min: 12 });
    }
    let mut violations = Vec::new();
    for n in 12..=n_max {
        let planned = cor22_extra(n)?;
        let l = lh_sequence(n).expect("n >= 12").l as u32;
        let bound = 6 * 2u64.pow(l) - 1;
        if planned > bound {
            violations.push(Violation { n, planned, bound });
        }
    }
    Ok(StrategyReport { n_max, checked: n_max - 11, violations })
}
