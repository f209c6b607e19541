use std::collections::BTreeMap;

use num::{One, Zero};

use super::rational::Rat;
use super::sparse::{SparseMat, SparseVec};
use crate::{Error, Result};

/// An incrementally built row echelon basis. Rows are normalized to leading
/// coefficient 1 and kept sorted by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>, // sorted by leading index
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().unwrap()).collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces v against the basis, zeroing every entry in a pivot column of
    /// a stored row (working left to right).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let Some(lead) = v.leading() else {
                return v;
            };
            match self.rows.binary_search_by_key(&lead, |r| r.leading().unwrap()) {
                Ok(k) => {
                    let c = -v.get(lead);
                    v.axpy(&c, &self.rows[k]);
                }
                Err(_) => return v,
            }
        }
    }

    /// Inserts v; returns true iff it was independent of the current basis.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        assert_eq!(v.dim(), self.dim, "echelon dimension mismatch");
        let mut r = self.reduce(v);
        let Some(lead) = r.leading() else {
            return false;
        };
        let inv = Rat::one() / r.get(lead);
        r.scale(&inv);
        let pos = self
            .rows
            .binary_search_by_key(&lead, |row| row.leading().unwrap())
            .unwrap_err();
        self.rows.insert(pos, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

/// An echelon basis that additionally tracks, for every stored row, its
/// expansion over the originally inserted vectors. Used to solve for exact
/// coordinates of a vector in a given spanning set.
#[derive(Clone, Debug)]
pub struct TrackedEchelon {
    dim: usize,
    tag_dim: usize,
    rows: Vec<(SparseVec, SparseVec)>, // (row, combination over inserted vectors)
}

impl TrackedEchelon {
    pub fn new(dim: usize, tag_dim: usize) -> Self {
        TrackedEchelon {
            dim,
            tag_dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts v, recording it as inserted vector number `tag`.
    pub fn insert(&mut self, v: &SparseVec, tag: usize) -> bool {
        assert_eq!(v.dim(), self.dim, "echelon dimension mismatch");
        assert!(tag < self.tag_dim, "tag out of range");
        let (mut r, mut combo) = self.reduce(v);
        // v = r + sum(combo); the stored row is v - sum(combo)
        combo.scale(&-Rat::one());
        combo.add_to(tag, &Rat::one());
        let Some(lead) = r.leading() else {
            return false;
        };
        let inv = Rat::one() / r.get(lead);
        r.scale(&inv);
        combo.scale(&inv);
        let pos = self
            .rows
            .binary_search_by_key(&lead, |(row, _)| row.leading().unwrap())
            .unwrap_err();
        self.rows.insert(pos, (r, combo));
        true
    }

    /// Returns (residual, combo) with v = residual + combo over the inserted
    /// vectors.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::zero(self.tag_dim);
        loop {
            let Some(lead) = v.leading() else {
                return (v, combo);
            };
            match self
                .rows
                .binary_search_by_key(&lead, |(row, _)| row.leading().unwrap())
            {
                Ok(k) => {
                    let c = v.get(lead);
                    let neg = -c.clone();
                    v.axpy(&neg, &self.rows[k].0);
                    combo.axpy(&c, &self.rows[k].1);
                }
                Err(_) => return (v, combo),
            }
        }
    }

    /// Exact coordinates of v over the inserted vectors, if v lies in their
    /// span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, combo) = self.reduce(v);
        residual.is_zero().then_some(combo)
    }
}

/// Exact rank of a list of sparse vectors.
pub fn rank_of<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>, dim: usize) -> usize {
    let mut ech = Echelon::new(dim);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// true iff span(u) == span(v), decided exactly via three rank computations.
pub fn subspace_equal(u: &[SparseVec], v: &[SparseVec], dim: usize) -> Result<bool> {
    if u.iter().chain(v.iter()).any(|x| x.dim() != dim) {
        return Err(Error::DimensionMismatch(
            "subspace_equal: ambient dimensions differ".into(),
        ));
    }
    let ru = rank_of(u, dim);
    let rv = rank_of(v, dim);
    if ru != rv {
        return Ok(false);
    }
    Ok(rank_of(u.iter().chain(v.iter()), dim) == ru)
}

/// Reduced row echelon form: every pivot column is zero in all other rows.
/// Returns rows sorted by pivot.
pub fn rref<'a>(rows: impl IntoIterator<Item = &'a SparseVec>, dim: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new(dim);
    for row in rows {
        ech.insert(row);
    }
    let mut out = ech.rows.clone();
    // back-substitute bottom-up so each pivot clears above
    for k in (0..out.len()).rev() {
        let row = out[k].clone();
        let pivot = row.leading().unwrap();
        for target in out.iter_mut().take(k) {
            let c = -target.get(pivot);
            target.axpy(&c, &row);
        }
    }
    out
}

/// A basis of the kernel {x : rows . x = 0}, treating each sparse vector as a
/// constraint row over `dim` unknowns. One basis vector per free column, in
/// increasing column order.
pub fn kernel_basis<'a>(rows: impl IntoIterator<Item = &'a SparseVec>, dim: usize) -> Vec<SparseVec> {
    let reduced = rref(rows, dim);
    let pivots: Vec<usize> = reduced.iter().map(|r| r.leading().unwrap()).collect();
    let is_pivot = {
        let mut mask = vec![false; dim];
        for &p in &pivots {
            mask[p] = true;
        }
        mask
    };
    let mut basis = Vec::new();
    for f in 0..dim {
        if is_pivot[f] {
            continue;
        }
        let mut x = SparseVec::unit(dim, f);
        for (row, &p) in reduced.iter().zip(pivots.iter()) {
            let c = -row.get(f);
            if !c.is_zero() {
                x.add_to(p, &c);
            }
        }
        basis.push(x);
    }
    basis
}

/// A basis of the space of n x n matrices X with X A = A X for every A in
/// `mats`, as row-major vectorizations. All matrices must be n x n.
pub fn commutant_basis(mats: &[SparseMat], n: usize) -> Result<Vec<SparseVec>> {
    if mats.iter().any(|a| a.nrows() != n || a.ncols() != n) {
        return Err(Error::DimensionMismatch(
            "commutant_basis: matrices must all be n x n".into(),
        ));
    }
    // unknowns vec(X); one constraint row per (a, i, j):
    // sum_k X[i,k] a[k,j] - a[i,k] X[k,j] = 0
    let mut rows: Vec<SparseVec> = Vec::new();
    for a in mats {
        let mut by_pos: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((k, j), x) in a.iter() {
            for i in 0..n {
                by_pos
                    .entry((i, j))
                    .or_insert_with(|| SparseVec::zero(n * n))
                    .add_to(i * n + k, x);
                by_pos
                    .entry((k, i))
                    .or_insert_with(|| SparseVec::zero(n * n))
                    .add_to(j * n + i, &-x.clone());
            }
        }
        rows.extend(by_pos.into_values().filter(|v| !v.is_zero()));
    }
    Ok(kernel_basis(&rows, n * n))
}

/// Some exact solution of A x = b, or None if inconsistent.
pub fn solve(a: &SparseMat, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.dim() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} rows vs rhs of length {}",
            a.nrows(),
            b.dim()
        )));
    }
    let mut cols: Vec<SparseVec> = vec![SparseVec::zero(a.nrows()); a.ncols()];
    for ((i, j), x) in a.iter() {
        cols[j].set(i, x.clone());
    }
    let mut ech = TrackedEchelon::new(a.nrows(), a.ncols());
    for (j, col) in cols.iter().enumerate() {
        ech.insert(col, j);
    }
    Ok(ech.coordinates(b))
}
