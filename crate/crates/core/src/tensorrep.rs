//! The representation of the symmetric group on r-th tensor powers by
//! Kronecker powers of permutation matrices, and the subsequence-indexed
//! bases of its image span.

use std::collections::BTreeMap;

use num::Zero;

use crate::exactlin::{Echelon, Rat, SparseMat, SparseVec};
use crate::permcomb::{Partition, Permutation};
use crate::{Budget, Error, Result};

/// Index tuples for the tensor basis: (i_1, ..., i_r) with entries in 1..n,
/// flattened lexicographically.
pub fn tuple_to_flat(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + (i - 1))
}

pub fn flat_to_tuple(mut flat: usize, n: usize, r: usize) -> Vec<usize> {
    let mut tuple = vec![0usize; r];
    for k in (0..r).rev() {
        tuple[k] = flat % n + 1;
        flat /= n;
    }
    tuple
}

/// A finitely supported rational combination of permutations (all on the same
/// number of letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    coeffs: BTreeMap<Permutation, Rat>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(w: Permutation) -> Self {
        let n = w.n();
        let mut e = GroupAlgebraElement::zero(n);
        e.add_term(w, Rat::from_integer(1.into())).unwrap();
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, w: Permutation, c: Rat) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "group algebra on {} letters, term on {}",
                self.n,
                w.n()
            )));
        }
        let cur = self.coeffs.remove(&w).unwrap_or_else(Rat::zero) + c;
        if !cur.is_zero() {
            self.coeffs.insert(w, cur);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// The r-th Kronecker power of the permutation matrix of w: the n^r x n^r
/// 0/1 matrix whose column (j_1...j_r) has its single 1 in row
/// (w(j_1)...w(j_r)).
pub fn kron_power(w: &Permutation, r: usize) -> SparseMat {
    let n = w.n();
    let size = n.pow(r as u32);
    let mut m = SparseMat::zero(size, size);
    let one = Rat::from_integer(1.into());
    for col in 0..size {
        let tuple = flat_to_tuple(col, n, r);
        let image: Vec<usize> = tuple.iter().map(|&j| w.apply(j)).collect();
        m.set(tuple_to_flat(&image, n), col, one.clone());
    }
    m
}

/// Linear extension of `kron_power` to the group algebra.
pub fn phi(a: &GroupAlgebraElement, r: usize) -> SparseMat {
    let size = a.n().pow(r as u32);
    let mut m = SparseMat::zero(size, size);
    for (w, c) in a.terms() {
        m.add_scaled(c, &kron_power(w, r));
    }
    m
}

/// Exact dimension of the span of all Kronecker powers at (n, r).
pub fn span_rank(n: usize, r: usize, budget: &Budget) -> Result<usize> {
    budget.check(n, r)?;
    let dim = n.pow(r as u32).pow(2);
    let mut ech = Echelon::new(dim);
    for w in Permutation::all(n) {
        ech.insert(&kron_power(&w, r).vectorize());
    }
    Ok(ech.rank())
}

/// n! minus the span rank: the kernel dimension of the vectorization of the
/// representation.
pub fn kernel_dim(n: usize, r: usize, budget: &Budget) -> Result<usize> {
    let fact: usize = (1..=n).product();
    Ok(fact - span_rank(n, r, budget)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn stat(self, w: &Permutation) -> usize {
        match self {
            Direction::Increasing => w.lis(),
            Direction::Decreasing => w.lds(),
        }
    }
}

/// The subsequence-indexed basis of the Kronecker-power span: permutations
/// with an increasing (resp. decreasing) subsequence of length n - r, in
/// lexicographic order. The set is verified to be linearly independent and to
/// span; failure is a hard error since it would falsify the basis theorem at
/// this instance.
pub fn theorem1_basis(
    n: usize,
    r: usize,
    direction: Direction,
    budget: &Budget,
) -> Result<Vec<Permutation>> {
    budget.check(n, r)?;
    let threshold = n.saturating_sub(r);
    let basis: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| direction.stat(w) >= threshold)
        .collect();
    let dim = n.pow(r as u32).pow(2);
    let mut ech = Echelon::new(dim);
    for w in &basis {
        if !ech.insert(&kron_power(w, r).vectorize()) {
            return Err(Error::VerificationFailed(format!(
                "basis candidate at (n={n}, r={r}) is linearly dependent at {w}"
            )));
        }
    }
    let full = span_rank(n, r, budget)?;
    if ech.rank() != full {
        return Err(Error::VerificationFailed(format!(
            "basis candidate at (n={n}, r={r}) spans rank {} of {full}",
            ech.rank()
        )));
    }
    Ok(basis)
}

/// The restriction counterpart: permutations of the subgroup fixing n (that
/// is, of the symmetric group on n-1 letters embedded with w(n) = n) having
/// an increasing subsequence of length n - 1 - r, verified as a basis of the
/// span of their Kronecker powers.
pub fn remark4_basis(n: usize, r: usize, budget: &Budget) -> Result<Vec<Permutation>> {
    if n < 2 {
        return Err(Error::InvalidInput("remark4_basis needs n >= 2".into()));
    }
    budget.check(n, r)?;
    let embed = |w: &Permutation| {
        let mut word = w.word().to_vec();
        word.push(n);
        Permutation::from_word(word).expect("embedding fixes n")
    };
    let threshold = (n - 1).saturating_sub(r);
    let subgroup: Vec<Permutation> = Permutation::all(n - 1).iter().map(&embed).collect();
    let basis: Vec<Permutation> = Permutation::all(n - 1)
        .into_iter()
        .filter(|w| w.lis() >= threshold)
        .map(|w| embed(&w))
        .collect();
    let dim = n.pow(r as u32).pow(2);
    let mut ech = Echelon::new(dim);
    for w in &basis {
        if !ech.insert(&kron_power(w, r).vectorize()) {
            return Err(Error::VerificationFailed(format!(
                "restricted basis at (n={n}, r={r}) is dependent at {w}"
            )));
        }
    }
    let mut full = Echelon::new(dim);
    for w in &subgroup {
        full.insert(&kron_power(w, r).vectorize());
    }
    if ech.rank() != full.rank() {
        return Err(Error::VerificationFailed(format!(
            "restricted basis at (n={n}, r={r}) spans rank {} of {}",
            ech.rank(),
            full.rank()
        )));
    }
    Ok(basis)
}

/// Vectorized Kronecker powers of every element of the symmetric group, in
/// lexicographic order.
pub fn all_kron_vectors(n: usize, r: usize) -> Vec<SparseVec> {
    Permutation::all(n)
        .iter()
        .map(|w| kron_power(w, r).vectorize())
        .collect()
}

/// Theoretical span rank via the tableau-count identity: the sum of squared
/// standard-tableau counts over shapes with first part at least n - r.
pub fn span_rank_by_tableau_count(n: usize, r: usize) -> usize {
    let threshold = n.saturating_sub(r);
    Partition::all(n)
        .iter()
        .filter(|p| p.first_part() >= threshold)
        .map(|p| (p.num_standard_tableaux() * p.num_standard_tableaux()) as usize)
        .sum()
}
