//! Grey sets: residue sets that some affine map μx + λ sends into the lower
//! half {0..k} of Z/p, p = 2k + 1. A grey set cannot be the palette of a
//! nontrivial p-coloring, which gives the rainbow lower bound on colors.

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::is_prime;

pub const DEFAULT_GREY_CAP: u64 = 43;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GreyError {
    #[error("p must be an odd prime, got {0}")]
    BadPrime(u64),
    #[error("p = {p} exceeds the cap {cap}")]
    CapExceeded { p: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreyReport {
    pub p: u64,
    pub grey_index: usize,
    pub algmincol: usize,
    /// Least non-grey set among sets containing {0, 1}, of size `algmincol`.
    pub witness: Vec<u64>,
    /// Number of candidate sets examined, over all sizes.
    pub subsets_scanned: u64,
}

fn check_prime(p: u64) -> Result<(), GreyError> {
    if p < 3 || !is_prime(p) {
        return Err(GreyError::BadPrime(p));
    }
    Ok(())
}

/// Direct scan of all p(p − 1) affine maps.
pub fn is_grey(s: &[u64], p: u64) -> Result<bool, GreyError> {
    check_prime(p)?;
    Ok(is_grey_unchecked(s, p))
}

fn is_grey_unchecked(s: &[u64], p: u64) -> bool {
    let k = (p - 1) / 2;
    (1..p).any(|mu| (0..p).any(|lambda| s.iter().all(|&x| (mu * x + lambda) % p <= k)))
}

/// Same decision by the arc-fitting argument: μS fits in a window of k + 1
/// consecutive residues iff its largest cyclic gap is at least p − k.
pub fn is_grey_by_gaps(s: &[u64], p: u64) -> bool {
    let k = (p - 1) / 2;
    let mut v: Vec<u64> = Vec::with_capacity(s.len());
    (1..p).any(|mu| {
        v.clear();
        v.extend(s.iter().map(|&x| mu * x % p));
        v.sort_unstable();
        v.dedup();
        if v.len() <= 1 {
            return true;
        }
        let mut gap = v[0] + p - v[v.len() - 1];
        for w in v.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        gap >= p - k
    })
}

/// k-subsets of {lo..hi} (exclusive hi) in lexicographic order.
fn combinations(lo: u64, hi: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: u64, hi: u64, k: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = (k - cur.len()) as u64;
        let mut x = start;
        while x + need <= hi {
            cur.push(x);
            rec(x + 1, hi, k, cur, out);
            cur.pop();
            x += 1;
        }
    }
    rec(lo, hi, k, &mut cur, &mut out);
    out
}

pub fn grey_index(p: u64) -> Result<GreyReport, GreyError> {
    grey_index_with_cap(p, DEFAULT_GREY_CAP)
}

/// Scans sizes s = 2, 3, … over sets {0, 1} ∪ T in lexicographic order; the
/// first size with a non-grey set gives G_p = s − 1.
pub fn grey_index_with_cap(p: u64, cap: u64) -> Result<GreyReport, GreyError> {
    check_prime(p)?;
    if p > cap {
        return Err(GreyError::CapExceeded { p, cap });
    }
    let mut scanned = 0u64;
    for s in 2..=p as usize {
        let cands = combinations(2, p, s - 2);
        let hit = cands.par_iter().position_first(|t| {
            let mut set = vec![0, 1];
            set.extend_from_slice(t);
            !is_grey_unchecked(&set, p)
        });
        match hit {
            Some(i) => {
                scanned += i as u64 + 1;
                let mut witness = vec![0, 1];
                witness.extend_from_slice(&cands[i]);
                return Ok(GreyReport { p, grey_index: s - 1, algmincol: s, witness, subsets_scanned: scanned });
            }
            None => scanned += cands.len() as u64,
        }
    }
    unreachable!("Z/p itself is never grey")
}

pub fn rainbow_index(p: u64) -> Result<usize, GreyError> {
    Ok(grey_index(p)?.algmincol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        for p in [3, 5, 7, 11] {
            assert!(is_grey(&[4 % p], p).unwrap());
            let all: Vec<u64> = (0..p).collect();
            assert!(!is_grey(&all, p).unwrap());
        }
        assert!(is_grey(&[0, 2, 3], 5).unwrap());
        assert!(is_grey(&[1], 9).is_err());
    }

    #[test]
    fn table_values() {
        let r = grey_index(7).unwrap();
        assert_eq!((r.grey_index, r.algmincol), (3, 4));
        assert_eq!(grey_index(11).unwrap().algmincol, 5);
        assert_eq!(grey_index(17).unwrap().grey_index, 5);
        assert_eq!(rainbow_index(3).unwrap(), 3);
        assert_eq!(rainbow_index(13).unwrap(), 5);
        assert!(matches!(grey_index(47), Err(GreyError::CapExceeded { .. })));
    }

    #[test]
    fn gap_route_agrees_with_direct_scan() {
        for p in [3u64, 5, 7, 11, 13] {
            for mask in 0u64..(1 << p) {
                let s: Vec<u64> = (0..p).filter(|i| mask >> i & 1 == 1).collect();
                if s.is_empty() {
                    continue;
                }
                assert_eq!(is_grey_unchecked(&s, p), is_grey_by_gaps(&s, p), "p={p} s={s:?}");
            }
        }
    }
}
