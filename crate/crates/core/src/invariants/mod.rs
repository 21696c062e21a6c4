//! Invariants used as equivalence oracles: Kauffman bracket, the
//! writhe-normalised polynomial, the determinant and recognition against a
//! bundled table of knots.

mod bracket;
mod poly;
mod reference;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

pub use bracket::{
    bracket, bracket_sweep, bracket_with_cap, normalized_f, normalized_f_sweep, CapExceeded, DEFAULT_BRACKET_CAP,
};
pub use poly::LaurentPoly;
pub use reference::{load_reference, parse_reference, Recognition, RefError, ReferenceEntry, ReferenceTable};

use crate::coloring::coloring_matrix;
use crate::diagram::Diagram;
use crate::linalg::{det_bareiss, smith_diagonal};

/// Order of the reduced coloring module: the product of the elementary
/// divisors of the coloring matrix when its corank is one, else 0. For a
/// square matrix this is |det| of any first minor.
pub fn determinant_big(d: &Diagram) -> BigInt {
    let (m, _) = coloring_matrix(d);
    let cols = d.arcs().len();
    let diag = smith_diagonal(&m, cols);
    if diag.len() + 1 != cols {
        return BigInt::from(0);
    }
    diag.iter().product()
}

/// |det| of the first minor deleting the last row and column (square
/// coloring matrices only). Independent route for tests.
pub fn determinant_minor(d: &Diagram) -> Option<BigInt> {
    let (m, _) = coloring_matrix(d);
    let n = m.len();
    if n == 0 || m[0].len() != n {
        return None;
    }
    let minor: Vec<Vec<i64>> = m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    Some(det_bareiss(&minor).abs())
}

/// Link determinant. Zero flags the null-determinant class.
pub fn determinant(d: &Diagram) -> u64 {
    determinant_big(d).to_u64().expect("determinant fits in 64 bits")
}

/// Recognition key: normalised polynomial up to mirror image, determinant
/// and component count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub poly: LaurentPoly,
    pub det: u64,
    pub components: usize,
}

impl Fingerprint {
    pub fn of(d: &Diagram) -> Fingerprint {
        Fingerprint {
            poly: normalized_f_sweep(d).mirror_canonical(),
            det: determinant(d),
            components: d.component_count(),
        }
    }
}
