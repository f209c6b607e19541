use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, Zero};

use crate::exactlin::Rat;
use crate::{Error, Result};

/// An integer Laurent polynomial in v: a finitely supported map from
/// exponents to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// c * v^e.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// v^e.
    pub fn v_pow(e: i32) -> Self {
        LaurentPoly::monomial(1, e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: i64) {
        let cur = self.coeffs.remove(&e).unwrap_or(0) + c;
        if cur != 0 {
            self.coeffs.insert(e, cur);
        }
    }

    /// The bar involution v -> v^-1.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// All exponents strictly negative (membership in v^-1 Z[v^-1]).
    pub fn strictly_negative(&self) -> bool {
        self.max_degree().is_none_or(|d| d < 0)
    }

    /// All exponents strictly positive (membership in v Z[v]).
    pub fn strictly_positive(&self) -> bool {
        self.min_degree().is_none_or(|d| d > 0)
    }

    /// All exponents nonnegative.
    pub fn nonnegative_degrees(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 0)
    }

    /// Exact value at a nonzero rational v.
    pub fn evaluate(&self, v: &Rat) -> Result<Rat> {
        if v.is_zero() {
            return Err(Error::InvalidInput(
                "cannot evaluate a Laurent polynomial at v = 0".into(),
            ));
        }
        let mut acc = Rat::zero();
        for (&e, &c) in &self.coeffs {
            acc += Rat::from_integer(BigInt::from(c)) * v.pow(e);
        }
        Ok(acc)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// "c*v^e" terms joined by " + ", lowest exponent first; "0" when zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&e, &c)| format!("{c}*v^{e}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (c, e) = term
                .split_once("*v^")
                .ok_or_else(|| Error::InvalidInput(format!("bad Laurent term {term:?}")))?;
            let c: i64 = c
                .parse()
                .map_err(|e| Error::InvalidInput(format!("bad coefficient {c:?}: {e}")))?;
            let e: i32 = e
                .parse()
                .map_err(|err| Error::InvalidInput(format!("bad exponent {e:?}: {err}")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{frac, rat};

    #[test]
    fn arithmetic() {
        let v = LaurentPoly::v_pow(1);
        let vinv = LaurentPoly::v_pow(-1);
        let s = &v - &vinv;
        assert_eq!(&s * &s, {
            let mut p = LaurentPoly::v_pow(2);
            p.add_term(0, -2);
            p.add_term(-2, 1);
            p
        });
        assert!((&s - &s).is_zero());
        assert_eq!(-&v, LaurentPoly::monomial(-1, 1));
    }

    #[test]
    fn bar_involution() {
        let p: LaurentPoly = "2*v^-3 + 1*v^0 + 5*v^2".parse().unwrap();
        assert_eq!(p.bar().bar(), p);
        assert_eq!(p.bar().coefficient(3), 2);
        assert!(!p.is_bar_invariant());
        let sym = &p + &p.bar();
        assert!(sym.is_bar_invariant());
    }

    #[test]
    fn degree_predicates() {
        let p: LaurentPoly = "1*v^-2 + 1*v^-1".parse().unwrap();
        assert!(p.strictly_negative());
        assert!(!p.strictly_positive());
        assert!(p.bar().strictly_positive());
        assert!(LaurentPoly::zero().strictly_negative());
        assert!(LaurentPoly::one().nonnegative_degrees());
        assert!(!LaurentPoly::one().strictly_positive());
    }

    #[test]
    fn evaluation() {
        let p: LaurentPoly = "1*v^-1 + 1*v^1".parse().unwrap();
        assert_eq!(p.evaluate(&rat(2)).unwrap(), frac(5, 2));
        assert_eq!(p.evaluate(&rat(1)).unwrap(), rat(2));
        assert!(p.evaluate(&rat(0)).is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let p: LaurentPoly = "-3*v^-1 + 2*v^4".parse().unwrap();
        assert_eq!(p.to_string(), "-3*v^-1 + 2*v^4");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("v^2".parse::<LaurentPoly>().is_err());
    }
}
