use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

/// Laurent polynomial in A with integer coefficients. Zero coefficients are
/// never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coef: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coef, exp);
        p
    }

    /// δ = −A² − A⁻², the value of a trivial loop.
    pub fn delta() -> Self {
        Self::monomial(-1, 2) + Self::monomial(-1, -2)
    }

    /// (−A³)^k for any integer k.
    pub fn neg_a3_pow(k: i64) -> Self {
        let c = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(c, 3 * k as i32)
    }

    pub fn add_term(&mut self, coef: i64, exp: i32) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Substitutes A → A⁻¹.
    pub fn mirror(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect() }
    }

    /// Representative of {p, mirror(p)}: the lesser of the two.
    pub fn mirror_canonical(&self) -> Self {
        let m = self.mirror();
        if m < *self {
            m
        } else {
            self.clone()
        }
    }

    /// `Some(u)` when `self = u · other` for a unit u = ±A^k.
    pub fn unit_ratio(&self, other: &Self) -> Option<(i64, i32)> {
        let (&e1, &c1) = self.terms.iter().next()?;
        let (&e2, &c2) = other.terms.iter().next()?;
        if self.terms.len() != other.terms.len() || c1.abs() != c2.abs() {
            return None;
        }
        let (s, shift) = (c1 / c2, e1 - e2);
        let ok = self
            .terms
            .iter()
            .zip(other.terms.iter())
            .all(|((ea, ca), (eb, cb))| *ea == eb + shift && *ca == s * cb);
        ok.then_some((s, shift))
    }

    /// Evaluates the Jones polynomial form: exponents of A divided by −4
    /// (t = A⁻⁴). Returns `None` if some exponent is not a multiple of 4.
    pub fn to_jones(&self) -> Option<BTreeMap<i32, i64>> {
        let mut out = BTreeMap::new();
        for (e, c) in self.terms() {
            if e % 4 != 0 {
                return None;
            }
            out.insert(-e / 4, c);
        }
        Some(out)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(c, e);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                r.add_term(ca * cb, ea + eb);
            }
        }
        r
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => f.write_str("A")?,
                (1, e) => write!(f, "A^{e}")?,
                (m, 1) => write!(f, "{m}A")?,
                (m, e) => write!(f, "{m}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // exponent -> coefficient, as an ordered list of pairs
        let v: Vec<(i32, i64)> = self.terms().collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared() {
        let d = LaurentPoly::delta();
        let d2 = &d * &d;
        assert_eq!(d2.coeff(4), 1);
        assert_eq!(d2.coeff(0), 2);
        assert_eq!(d2.coeff(-4), 1);
        assert_eq!(d2.to_string(), "A^4 + 2 + A^-4");
    }

    #[test]
    fn unit_ratio_detects_framing_shifts() {
        let p = LaurentPoly::monomial(1, 4) + LaurentPoly::monomial(-2, 0);
        let q = &p * &LaurentPoly::neg_a3_pow(3);
        assert_eq!(q.unit_ratio(&p), Some((-1, 9)));
        assert_eq!(p.unit_ratio(&(p.clone() + LaurentPoly::one())), None);
    }
}
