use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::Zero;

use super::rational::{fmt_rat, parse_rat, Rat};
use crate::{Error, Result};

/// A sparse vector over exact rationals. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SparseVec {
    dim: usize,
    entries: BTreeMap<usize, Rat>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut v = SparseVec::zero(dim);
        for (i, x) in entries {
            v.add_to(i, &x);
        }
        v
    }

    pub fn from_dense(dense: &[Rat]) -> Self {
        SparseVec::from_entries(
            dense.len(),
            dense
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone())),
        )
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        SparseVec::from_entries(dim, [(i, Rat::from_integer(1.into()))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Rat {
        self.entries.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, x: Rat) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn add_to(&mut self, i: usize, x: &Rat) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        let cur = self.entries.remove(&i).unwrap_or_else(Rat::zero) + x;
        if !cur.is_zero() {
            self.entries.insert(i, cur);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(&i, x)| (i, x))
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    /// self += c * other.
    pub fn axpy(&mut self, c: &Rat, other: &SparseVec) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (i, x) in other.entries.iter() {
            self.add_to(*i, &(c * x));
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= c;
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        debug_assert_eq!(self.dim, other.dim);
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rat::zero();
        for (i, x) in small.entries.iter() {
            if let Some(y) = large.entries.get(i) {
                acc += x * y;
            }
        }
        acc
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, x) in self.entries.iter() {
            out[*i] = x.clone();
        }
        out
    }
}

/// A sparse matrix over exact rationals; no stored zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rat) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let cur = self.entries.remove(&(i, j)).unwrap_or_else(Rat::zero) + x;
        if !cur.is_zero() {
            self.entries.insert((i, j), cur);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        self.entries.iter().map(|(&k, x)| (k, x))
    }

    /// self += c * other.
    pub fn add_scaled(&mut self, c: &Rat, other: &SparseMat) {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        for ((i, j), x) in other.entries.iter() {
            self.add_to(*i, *j, &(c * x));
        }
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= c;
        }
    }

    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        // rows of other, indexed once
        let mut rows: BTreeMap<usize, Vec<(usize, &Rat)>> = BTreeMap::new();
        for ((i, j), x) in other.entries.iter() {
            rows.entry(*i).or_default().push((*j, x));
        }
        let mut out = SparseMat::zero(self.nrows, other.ncols);
        for ((i, k), x) in self.entries.iter() {
            if let Some(row) = rows.get(k) {
                for &(j, y) in row {
                    out.add_to(*i, j, &(x * y));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.ncols, self.nrows);
        for ((i, j), x) in self.entries.iter() {
            out.set(*j, *i, x.clone());
        }
        out
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); self.nrows];
        for ((i, _), x) in self.entries.iter() {
            sums[*i] += x;
        }
        sums
    }

    pub fn col_sums(&self) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); self.ncols];
        for ((_, j), x) in self.entries.iter() {
            sums[*j] += x;
        }
        sums
    }

    /// Row-major flattening into a sparse vector of length nrows * ncols.
    pub fn vectorize(&self) -> SparseVec {
        SparseVec::from_entries(
            self.nrows * self.ncols,
            self.entries
                .iter()
                .map(|(&(i, j), x)| (i * self.ncols + j, x.clone())),
        )
    }

    /// Serializes as a header "nrows ncols" followed by one "row col num/den"
    /// line per nonzero entry, row-major, 0-based, lowest terms.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.nrows, self.ncols);
        for ((i, j), x) in self.entries.iter() {
            let _ = writeln!(out, "{} {} {}", i, j, fmt_rat(x));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<SparseMat> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty matrix file".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::InvalidInput(format!("bad header {header:?}")));
        }
        let parse_dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::InvalidInput(format!("bad dimension {s:?}: {e}")))
        };
        let mut m = SparseMat::zero(parse_dim(dims[0])?, parse_dim(dims[1])?);
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::InvalidInput(format!("bad entry line {line:?}")));
            }
            let i = parse_dim(fields[0])?;
            let j = parse_dim(fields[1])?;
            if i >= m.nrows || j >= m.ncols {
                return Err(Error::InvalidInput(format!("entry out of range: {line:?}")));
            }
            m.set(i, j, parse_rat(fields[2])?);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{frac, rat};

    #[test]
    fn vector_ops() {
        let mut v = SparseVec::zero(4);
        v.set(1, rat(2));
        v.set(3, frac(1, 2));
        assert_eq!(v.nnz(), 2);
        v.add_to(1, &rat(-2));
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.leading(), Some(3));
        let mut w = SparseVec::unit(4, 3);
        w.axpy(&frac(-1, 2), &v);
        assert_eq!(w.get(3), frac(3, 4));
    }

    #[test]
    fn dot_product() {
        let v = SparseVec::from_dense(&[rat(1), rat(0), rat(2), rat(3)]);
        let w = SparseVec::from_dense(&[rat(4), rat(5), rat(0), rat(1)]);
        assert_eq!(v.dot(&w), rat(7));
    }

    #[test]
    fn matrix_mul_and_sums() {
        let mut a = SparseMat::zero(2, 3);
        a.set(0, 0, rat(1));
        a.set(0, 2, rat(2));
        a.set(1, 1, rat(3));
        let mut b = SparseMat::zero(3, 2);
        b.set(0, 1, rat(1));
        b.set(2, 0, rat(1));
        b.set(1, 0, frac(1, 3));
        let c = a.mul(&b).unwrap();
        assert_eq!(c.get(0, 0), rat(2));
        assert_eq!(c.get(0, 1), rat(1));
        assert_eq!(c.get(1, 0), rat(1));
        assert_eq!(c.nnz(), 3);
        assert_eq!(a.row_sums(), vec![rat(3), rat(3)]);
        assert_eq!(a.col_sums(), vec![rat(1), rat(3), rat(2)]);
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let mut m = SparseMat::zero(2, 2);
        m.set(0, 0, frac(2, 5));
        m.set(1, 0, rat(-3));
        let text = m.to_text();
        assert_eq!(text, "2 2\n0 0 2/5\n1 0 -3/1\n");
        assert_eq!(SparseMat::from_text(&text).unwrap(), m);
        assert!(SparseMat::from_text("2 2\n5 0 1/1\n").is_err());
        assert!(SparseMat::from_text("").is_err());
    }

    #[test]
    fn vectorize_is_row_major() {
        let mut m = SparseMat::zero(2, 3);
        m.set(1, 2, rat(7));
        let v = m.vectorize();
        assert_eq!(v.dim(), 6);
        assert_eq!(v.get(5), rat(7));
    }
}
