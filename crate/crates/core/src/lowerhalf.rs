//! Lower-half sequences: lh, LH(n), l_n, t_n, the binary closed form and the
//! torus-knot color bound.

use serde::Serialize;

use crate::linalg::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LhError {
    #[error("lh needs n >= 2, got {0}")]
    TooSmall(u64),
    #[error("{0} is already terminal (in {{2,3,4}} or below 5)")]
    AlreadyTerminal(u64),
    #[error("closed form applies to odd n >= 5, got {0}")]
    NotOdd(u64),
    #[error("torus bound needs a prime p > 7, got {0}")]
    BadPrime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LhRecord {
    pub n: u64,
    pub seq: Vec<u64>,
    pub l: usize,
    pub t: u64,
}

pub fn lh(n: u64) -> Result<u64, LhError> {
    if n < 2 {
        return Err(LhError::TooSmall(n));
    }
    Ok(n / 2)
}

/// Iterates lh from n until the first term in {2,3,4}.
pub fn lh_sequence(n: u64) -> Result<LhRecord, LhError> {
    if n < 5 {
        return Err(LhError::AlreadyTerminal(n));
    }
    let mut seq = Vec::new();
    let mut x = n;
    loop {
        x /= 2;
        seq.push(x);
        if (2..=4).contains(&x) {
            break;
        }
    }
    let t = *seq.last().unwrap();
    Ok(LhRecord { n, l: seq.len(), t, seq })
}

/// (l_n, t_n) for odd n from the two leading binary digits of n: with e1 > e2
/// the two highest set bits, the gap e1 − e2 decides the tail.
pub fn closed_form(n: u64) -> Result<(usize, u64), LhError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(LhError::NotOdd(n));
    }
    let e1 = 63 - n.leading_zeros() as i64;
    let rest = n - (1 << e1);
    let e2 = 63 - rest.leading_zeros() as i64;
    Ok(match e1 - e2 {
        1 => ((e1 - 1) as usize, 3),
        2 => ((e1 - 1) as usize, 2),
        _ => ((e1 - 2) as usize, 4),
    })
}

/// Upper bound t_p + 2 l_p − 1 on the minimum number of colors of T(2, p).
pub fn torus_bound(p: u64) -> Result<u64, LhError> {
    if p <= 7 || !is_prime(p) {
        return Err(LhError::BadPrime(p));
    }
    let r = lh_sequence(p)?;
    Ok(r.t + 2 * r.l as u64 - 1)
}
