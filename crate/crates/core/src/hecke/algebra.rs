use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use crate::exactlin::Rat;
use crate::permcomb::Permutation;
use crate::tensorrep::GroupAlgebraElement;
use crate::{Error, Result};

/// An element of the Hecke algebra in its T-basis expansion: a finitely
/// supported map from permutations of {1..n} to Laurent-polynomial
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        HeckeElement::t(Permutation::identity(n))
    }

    /// The basis element T_w.
    pub fn t(w: Permutation) -> Self {
        let n = w.n();
        let mut e = HeckeElement::zero(n);
        e.add_term(&w, &LaurentPoly::one()).unwrap();
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: &Permutation, c: &LaurentPoly) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "Hecke element on {} letters, term on {}",
                self.n,
                w.n()
            )));
        }
        let cur = &self.terms.remove(w).unwrap_or_else(LaurentPoly::zero) + c;
        if !cur.is_zero() {
            self.terms.insert(w.clone(), cur);
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, &-c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (w, x) in self.terms() {
            let prod = x * c;
            if !prod.is_zero() {
                out.terms.insert(w.clone(), prod);
            }
        }
        out
    }

    /// Specialization at a nonzero rational value of v, landing in the
    /// rational group algebra.
    pub fn specialize(&self, v: &Rat) -> Result<GroupAlgebraElement> {
        let mut out = GroupAlgebraElement::zero(self.n);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c.evaluate(v)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeElement {
    /// One "poly * T[word]" line per term; "0" for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c} * T[{w}]"))
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The Hecke algebra of the symmetric group on n letters, carrying the
/// memo table for Kazhdan-Lusztig basis elements.
pub struct HeckeContext {
    n: usize,
    cprime_cache: RefCell<BTreeMap<Permutation, HeckeElement>>,
}

impl HeckeContext {
    pub fn new(n: usize) -> Self {
        HeckeContext {
            n,
            cprime_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, a: &HeckeElement) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "element on {} letters in algebra on {}",
                a.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// a * T_{s_i} (1 <= i < n), by the quadratic relation.
    pub fn rmul_gen(&self, a: &HeckeElement, i: usize) -> Result<HeckeElement> {
        self.check(a)?;
        let s = Permutation::adjacent_transposition(self.n, i);
        let vminus = &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1);
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in a.terms() {
            let ws = w.compose(&s)?;
            out.add_term(&ws, c)?;
            if w.apply(i) > w.apply(i + 1) {
                // l(ws) = l(w) - 1: T_w T_s = T_{ws} + (v - v^-1) T_w
                out.add_term(w, &(c * &vminus))?;
            }
        }
        Ok(out)
    }

    /// T_{s_i} * a.
    pub fn lmul_gen(&self, i: usize, a: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        let s = Permutation::adjacent_transposition(self.n, i);
        let vminus = &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1);
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in a.terms() {
            let sw = s.compose(w)?;
            out.add_term(&sw, c)?;
            if w.inverse().apply(i) > w.inverse().apply(i + 1) {
                out.add_term(w, &(c * &vminus))?;
            }
        }
        Ok(out)
    }

    /// a * T_{s_i}^{-1}, using T_s^{-1} = T_s - (v - v^-1).
    pub fn rmul_gen_inv(&self, a: &HeckeElement, i: usize) -> Result<HeckeElement> {
        let vminus = &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1);
        self.rmul_gen(a, i)?.sub(&a.scale(&vminus))
    }

    /// a * T_w, following a reduced word of w.
    pub fn rmul_t(&self, a: &HeckeElement, w: &Permutation) -> Result<HeckeElement> {
        let mut acc = a.clone();
        for i in w.reduced_word() {
            acc = self.rmul_gen(&acc, i)?;
        }
        Ok(acc)
    }

    /// The associative bilinear product.
    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in b.terms() {
            out = out.add(&self.rmul_t(&a.scale(c), w)?)?;
        }
        Ok(out)
    }

    /// (T_{w^{-1}})^{-1}, the bar image of T_w.
    pub fn t_bar(&self, w: &Permutation) -> Result<HeckeElement> {
        let mut acc = HeckeElement::one(self.n);
        for i in w.reduced_word() {
            acc = self.rmul_gen_inv(&acc, i)?;
        }
        Ok(acc)
    }

    /// The bar involution: sum a_w T_w -> sum bar(a_w) (T_{w^{-1}})^{-1}.
    pub fn bar(&self, a: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in a.terms() {
            out = out.add(&self.t_bar(w)?.scale(&c.bar()))?;
        }
        Ok(out)
    }

    /// The ring involution sum a_w T_w -> sum (-1)^{l(w)} bar(a_w) T_w.
    pub fn jmap(&self, a: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in a.terms() {
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            out.add_term(w, &(&c.bar() * &LaurentPoly::monomial(sign, 0)))?;
        }
        Ok(out)
    }

    /// The algebra automorphism with T_s -> -T_s^{-1}; equals jmap o bar.
    pub fn dagger(&self, a: &HeckeElement) -> Result<HeckeElement> {
        self.jmap(&self.bar(a)?)
    }

    /// The Kazhdan-Lusztig basis element C'_w = T_w + sum_{y < w} p_{y,w} T_y
    /// with p_{y,w} in v^-1 Z[v^-1], computed by the length recursion and
    /// memoized.
    pub fn cprime(&self, w: &Permutation) -> Result<HeckeElement> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "cprime: permutation on {} letters in algebra on {}",
                w.n(),
                self.n
            )));
        }
        if let Some(hit) = self.cprime_cache.borrow().get(w) {
            return Ok(hit.clone());
        }
        let result = if w.is_identity() {
            HeckeElement::one(self.n)
        } else {
            // left descent: s_i w shorter than w
            let winv = w.inverse();
            let i = (1..self.n)
                .find(|&i| winv.apply(i) > winv.apply(i + 1))
                .expect("non-identity permutation has a left descent");
            let s = Permutation::adjacent_transposition(self.n, i);
            let sw = s.compose(w)?;
            // C'_s * C'_{sw} = C'_w + sum of shorter bar-invariant corrections
            let base = self.cprime(&sw)?;
            let mut d = self
                .lmul_gen(i, &base)?
                .add(&base.scale(&LaurentPoly::v_pow(-1)))?;
            loop {
                // peel corrections at maximal length first; any coefficient
                // with a term of degree >= 0 away from w signals one
                let Some((z, c)) = d
                    .terms()
                    .filter(|(z, c)| *z != w && !c.strictly_negative())
                    .max_by_key(|(z, _)| z.length())
                    .map(|(z, c)| (z.clone(), c.clone()))
                else {
                    break;
                };
                let mut b = LaurentPoly::monomial(c.coefficient(0), 0);
                for (e, coef) in c.terms() {
                    if e > 0 {
                        b = &b + &LaurentPoly::monomial(coef, e);
                        b = &b + &LaurentPoly::monomial(coef, -e);
                    }
                }
                d = d.sub(&self.cprime(&z)?.scale(&b))?;
            }
            if d.coeff(w) != LaurentPoly::one() {
                return Err(Error::VerificationFailed(format!(
                    "KL recursion lost unitriangularity at {w}"
                )));
            }
            d
        };
        self.cprime_cache
            .borrow_mut()
            .insert(w.clone(), result.clone());
        Ok(result)
    }

    /// The signed companion basis element C_w = (-1)^{l(w)} jmap(C'_w).
    pub fn c(&self, w: &Permutation) -> Result<HeckeElement> {
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        Ok(self
            .jmap(&self.cprime(w)?)?
            .scale(&LaurentPoly::monomial(sign, 0)))
    }
}
