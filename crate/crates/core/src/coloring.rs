//! Fox colorings: arcs colored in Z/m with a + c ≡ 2b at every crossing
//! (b on the over-arc).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Diagram, EdgeId};
use crate::linalg::{is_prime, kernel_mod_p, smith_diagonal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("only trivial colorings")]
    OnlyTrivial,
    #[error("null determinant: the link class is excluded from palette minimisation")]
    NullDeterminant,
    #[error("{0} is not a unit modulo {1}")]
    NotUnit(u64, u64),
    #[error("modulus mismatch")]
    ModulusMismatch,
    #[error("coloring does not satisfy the crossing relation at crossing {0}")]
    Invalid(usize),
}

/// Integer coloring matrix: one row per crossing (a + c − 2b), one column per
/// arc in [`Diagram::arcs`] order. Also returns the edge → arc map.
pub fn coloring_matrix(d: &Diagram) -> (Vec<Vec<i64>>, BTreeMap<EdgeId, usize>) {
    let arc = d.arc_of_edge();
    let cols = d.arcs().len();
    let rows = d
        .crossings()
        .iter()
        .map(|c| {
            let mut r = vec![0i64; cols];
            r[arc[&c.edges[0]]] += 1;
            r[arc[&c.edges[2]]] += 1;
            r[arc[&c.edges[1]]] -= 2;
            r
        })
        .collect();
    (rows, arc)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct Coloring {
    pub modulus: u64,
    /// Color per arc, arcs ordered as in [`Diagram::arcs`].
    pub colors: Vec<u64>,
}

impl Coloring {
    pub fn palette(&self) -> BTreeSet<u64> {
        self.colors.iter().copied().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.palette().len() <= 1
    }

    /// Color of an edge.
    pub fn edge_color(&self, d: &Diagram, e: EdgeId) -> Option<u64> {
        d.arc_of_edge().get(&e).map(|&a| self.colors[a])
    }

    pub fn edge_colors(&self, d: &Diagram) -> BTreeMap<EdgeId, u64> {
        d.arc_of_edge().into_iter().map(|(e, a)| (e, self.colors[a])).collect()
    }

    /// Builds a coloring from per-edge colors (must be constant on arcs).
    pub fn from_edge_colors(d: &Diagram, m: u64, colors: &BTreeMap<EdgeId, u64>) -> Result<Coloring, ColoringError> {
        let arcs = d.arcs();
        let mut out = Vec::with_capacity(arcs.len());
        for arc in &arcs {
            let c = colors.get(&arc[0]).copied().unwrap_or(0) % m;
            if arc.iter().any(|e| colors.get(e).map(|x| x % m) != Some(c)) {
                return Err(ColoringError::Invalid(usize::MAX));
            }
            out.push(c);
        }
        let col = Coloring { modulus: m, colors: out };
        col.validate(d)?;
        Ok(col)
    }

    pub fn validate(&self, d: &Diagram) -> Result<(), ColoringError> {
        let arc = d.arc_of_edge();
        let m = self.modulus;
        for (i, c) in d.crossings().iter().enumerate() {
            let a = self.colors[arc[&c.edges[0]]];
            let b = self.colors[arc[&c.edges[1]]];
            let cc = self.colors[arc[&c.edges[2]]];
            if (a + cc) % m != (2 * b) % m {
                return Err(ColoringError::Invalid(i));
            }
        }
        Ok(())
    }
}

/// x ↦ μx + λ on Z/m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMap {
    pub mu: u64,
    pub lambda: u64,
    pub modulus: u64,
}

impl AffineMap {
    pub fn new(mu: u64, lambda: u64, modulus: u64) -> Result<Self, ColoringError> {
        if mu.gcd(&modulus) != 1 {
            return Err(ColoringError::NotUnit(mu, modulus));
        }
        Ok(AffineMap { mu: mu % modulus, lambda: lambda % modulus, modulus })
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        (self.mu * x + self.lambda) % self.modulus
    }
}

pub fn apply_affine(c: &Coloring, f: &AffineMap) -> Result<Coloring, ColoringError> {
    if c.modulus != f.modulus {
        return Err(ColoringError::ModulusMismatch);
    }
    if f.mu.gcd(&f.modulus) != 1 {
        return Err(ColoringError::NotUnit(f.mu, f.modulus));
    }
    Ok(Coloring { modulus: c.modulus, colors: c.colors.iter().map(|&x| f.apply(x)).collect() })
}

/// Basis of all p-colorings (as arc color vectors).
pub fn coloring_space(d: &Diagram, p: u64) -> Result<Vec<Vec<u64>>, ColoringError> {
    if !is_prime(p) {
        return Err(ColoringError::NotPrime(p));
    }
    let (m, _) = coloring_matrix(d);
    let cols = d.arcs().len();
    Ok(kernel_mod_p(&m, cols, p))
}

/// Number of m-colorings, from the elementary divisors of the coloring matrix.
pub fn count_colorings(d: &Diagram, m: u64) -> BigInt {
    let (mat, _) = coloring_matrix(d);
    let cols = d.arcs().len();
    let diag = smith_diagonal(&mat, cols);
    let bm = BigInt::from(m);
    let mut count = BigInt::one();
    for x in &diag {
        count *= x.gcd(&bm);
    }
    count * Pow::pow(&bm, (cols - diag.len()) as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaletteResult {
    pub size: usize,
    pub witness: Coloring,
    /// Dimension of the coloring space.
    pub dimension: usize,
    /// Number of nontrivial classes scanned.
    pub classes: u64,
}

/// Minimum number of colors over the nontrivial p-colorings of `d`, with the
/// lexicographically least normalised witness among the minimisers.
///
/// Colorings are taken up to the affine action. A normalised coloring has
/// arc 0 colored 0 and the first arc of another color colored 1, so each
/// class is scanned once: the scan runs over projective points of the
/// colorings vanishing on arc 0.
pub fn min_palette(d: &Diagram, p: u64) -> Result<PaletteResult, ColoringError> {
    if !is_prime(p) {
        return Err(ColoringError::NotPrime(p));
    }
    if crate::invariants::determinant_big(d) == BigInt::from(0) {
        return Err(ColoringError::NullDeterminant);
    }
    let (mut m, _) = coloring_matrix(d);
    let cols = d.arcs().len();
    let dimension = kernel_mod_p(&m, cols, p).len();
    if dimension <= 1 {
        return Err(ColoringError::OnlyTrivial);
    }
    let mut pin = vec![0i64; cols];
    pin[0] = 1;
    m.push(pin);
    let basis = kernel_mod_p(&m, cols, p);
    let r = basis.len();
    debug_assert_eq!(r, dimension - 1);
    // projective points: leading coefficient 1 at position `lead`
    let mut jobs: Vec<(usize, u64)> = Vec::new();
    for lead in 0..r {
        let tail = (r - 1 - lead) as u32;
        for idx in 0..p.pow(tail) {
            jobs.push((lead, idx));
        }
    }
    let classes = jobs.len() as u64;
    let best = jobs
        .par_iter()
        .map(|&(lead, idx)| {
            let mut coef = vec![0u64; r];
            coef[lead] = 1;
            let mut x = idx;
            for c in coef.iter_mut().skip(lead + 1) {
                *c = x % p;
                x /= p;
            }
            let mut col = vec![0u64; cols];
            for (k, b) in basis.iter().enumerate() {
                if coef[k] != 0 {
                    for (a, v) in col.iter_mut().zip(b) {
                        *a = (*a + coef[k] * v) % p;
                    }
                }
            }
            let col = normalize(&col, p);
            let size = col.iter().collect::<BTreeSet<_>>().len();
            (size, col)
        })
        .min()
        .expect("at least one nontrivial class");
    Ok(PaletteResult { size: best.0, witness: Coloring { modulus: p, colors: best.1 }, dimension, classes })
}

/// (c − c₀)/(c_j − c₀) with j the first arc colored differently from arc 0.
pub fn normalize(c: &[u64], p: u64) -> Vec<u64> {
    let c0 = c[0];
    let Some(j) = c.iter().position(|&x| x != c0) else {
        return vec![0; c.len()];
    };
    let inv = crate::linalg::inv_mod((c[j] + p - c0) % p, p);
    c.iter().map(|&x| (x + p - c0) % p * inv % p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::diagram::Diagram;

    fn brute_force_count(d: &Diagram, m: u64) -> u64 {
        let (mat, _) = coloring_matrix(d);
        let cols = d.arcs().len();
        let mut n = 0;
        for idx in 0..m.pow(cols as u32) {
            let mut x = idx;
            let c: Vec<i64> = (0..cols)
                .map(|_| {
                    let v = x % m;
                    x /= m;
                    v as i64
                })
                .collect();
            if mat.iter().all(|r| r.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m as i64) == 0) {
                n += 1;
            }
        }
        n
    }

    #[test]
    fn counts_match_brute_force() {
        for (d, m) in [(trefoil(), 3), (trefoil(), 5), (figure_eight(), 5), (figure_eight(), 15), (hopf(), 4), (torus2(4), 6)] {
            assert_eq!(count_colorings(&d, m), BigInt::from(brute_force_count(&d, m)));
        }
        assert_eq!(count_colorings(&Diagram::unknot(), 7), BigInt::from(7));
        assert_eq!(count_colorings(&trefoil(), 3), BigInt::from(9));
    }

    #[test]
    fn solution_space_dimensions() {
        assert_eq!(coloring_space(&trefoil(), 3).unwrap().len(), 2);
        assert_eq!(coloring_space(&trefoil(), 5).unwrap().len(), 1);
        assert_eq!(coloring_space(&figure_eight(), 5).unwrap().len(), 2);
        assert_eq!(coloring_space(&trefoil(), 9), Err(ColoringError::NotPrime(9)));
    }

    #[test]
    fn minimal_palettes() {
        assert_eq!(min_palette(&figure_eight(), 5).unwrap().size, 4);
        assert_eq!(min_palette(&trefoil(), 3).unwrap().size, 3);
        assert_eq!(min_palette(&torus2(7), 5), Err(ColoringError::OnlyTrivial));
        assert_eq!(min_palette(&torus2(4), 3), Err(ColoringError::OnlyTrivial));
        let w = min_palette(&figure_eight(), 5).unwrap().witness;
        w.validate(&figure_eight()).unwrap();
        assert_eq!(w.colors[0], 0);
    }

    #[test]
    fn affine_image_of_trefoil_coloring() {
        let d = trefoil();
        let c = Coloring { modulus: 3, colors: vec![0, 1, 2] };
        c.validate(&d).unwrap();
        let f = AffineMap::new(2, 1, 3).unwrap();
        let g = apply_affine(&c, &f).unwrap();
        g.validate(&d).unwrap();
        assert_eq!(g.colors, vec![1, 0, 2]);
        assert!(AffineMap::new(3, 0, 9).is_err());
    }

    #[test]
    fn null_determinant_is_refused() {
        let unlink = crate::diagram::from_braid(&crate::diagram::BraidWord::new(2, vec![1, -1]).unwrap()).unwrap();
        assert_eq!(crate::invariants::determinant(&unlink), 0);
        assert_eq!(min_palette(&unlink, 3), Err(ColoringError::NullDeterminant));
    }
}
