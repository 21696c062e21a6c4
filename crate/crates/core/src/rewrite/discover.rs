//! Exhaustive search for twist-region replacements: every lune-free tangle
//! with a given number of crossings is tried against the certificate.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::tangle::{certify, certify_against, Certificate, Tangle};
use crate::search::{enumerate_maps, FaceRule};

/// How far the replacement's formal palette may stray from σ1^k's.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaletteRule {
    /// Exactly the colors of the twist region.
    Same,
    /// At most one color beyond them.
    OneExtra,
}

#[derive(Clone, Debug)]
pub struct Found {
    pub tangle: Tangle,
    pub certificate: Certificate,
}

/// All certified replacements of σ1^k with `n` crossings whose interior is
/// lune-free, one per boundary placement of each plane map.
pub fn find_replacements(k: i64, n: usize, rule: PaletteRule) -> Vec<Found> {
    find_replacements_for(&Tangle::twist(k), n, rule)
}

/// As [`find_replacements`], for any reference tangle with a forced coloring.
pub fn find_replacements_for(target: &Tangle, n: usize, rule: PaletteRule) -> Vec<Found> {
    let rs = target.strands().expect("reference has two open strands");
    let k = target.writhe_split(&rs).1;
    let reference: BTreeSet<i64> = target.formal_colors().expect("forced").into_values().collect();
    let maps: Vec<Vec<usize>> = enumerate_maps(n + 1, FaceRule::MarkedBigons).into_values().collect();
    let jobs: Vec<(usize, bool, usize)> =
        (0..maps.len()).flat_map(|m| [false, true].into_iter().flat_map(move |r| (0..4).map(move |rot| (m, r, rot)))).collect();
    let mut found: Vec<Found> = jobs
        .par_iter()
        .flat_map_iter(|&(m, reflect, rot)| {
            let partner = if reflect { reflect_map(&maps[m]) } else { maps[m].clone() };
            let reference = &reference;
            (0..1u64 << n).filter_map(move |a| {
                let t = Tangle::from_closed_map(&partner, rot, a)?;
                let st = t.strands()?;
                if t.writhe_split(&st).1 != k {
                    return None;
                }
                let colors: BTreeSet<i64> = t.formal_colors()?.into_values().collect();
                let extra = colors.difference(reference).count();
                let ok = match rule {
                    PaletteRule::Same => extra == 0 && colors.len() == reference.len(),
                    PaletteRule::OneExtra => extra <= 1,
                };
                if !ok {
                    return None;
                }
                let certificate = certify_against(&t, target).ok()?;
                Some(Found { tangle: t, certificate })
            })
        })
        .collect();
    found.sort_by(|a, b| {
        let key = |f: &Found| {
            let s = f.certificate.sides;
            (std::cmp::Reverse(*s.iter().min().unwrap()), f.certificate.palette.len(), format!("{:?}", f.tangle))
        };
        key(a).cmp(&key(b))
    });
    found
}

/// Mirror image of a rotation system: every rotation reversed.
pub(crate) fn reflect_map(partner: &[usize]) -> Vec<usize> {
    let flip = |d: usize| (d & !3) | ((4 - (d & 3)) & 3);
    let mut out = vec![0; partner.len()];
    for d in 0..partner.len() {
        out[flip(d)] = flip(partner[d]);
    }
    out
}

/// Certified replacements of σ1^k with `n` crossings, bigons allowed, whose
/// interior bigons number `bigons`.
pub fn find_with_bigons(k: i64, n: usize, bigons: usize) -> Vec<Found> {
    let maps: Vec<Vec<usize>> = enumerate_maps(n + 1, FaceRule::NoCurls).into_values().collect();
    let jobs: Vec<(usize, bool, usize)> =
        (0..maps.len()).flat_map(|m| [false, true].into_iter().flat_map(move |r| (0..4).map(move |rot| (m, r, rot)))).collect();
    jobs.par_iter()
        .flat_map_iter(|&(m, reflect, rot)| {
            let partner = if reflect { reflect_map(&maps[m]) } else { maps[m].clone() };
            (0..1u64 << n).filter_map(move |a| {
                let t = Tangle::from_closed_map(&partner, rot, a)?;
                if t.interior_face_degrees().iter().filter(|&&d| d == 2).count() != bigons {
                    return None;
                }
                let st = t.strands()?;
                if t.writhe_split(&st).1 != k {
                    return None;
                }
                t.formal_colors()?;
                let certificate = certify(&t, k).ok()?;
                Some(Found { tangle: t, certificate })
            })
        })
        .collect()
}
