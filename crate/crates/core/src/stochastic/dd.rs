//! Exact double description: extreme rays of a pointed polyhedral cone
//! {x : A x >= 0} over primitive integer vectors.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::exactlin::{rank_of, Echelon, SparseVec};
use crate::{Error, Result};

/// Divides out the gcd of the entries. The overall sign is kept: a ray and
/// its negative are different objects.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_sparse(row: &[BigInt]) -> SparseVec {
    SparseVec::from_dense(
        &row.iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Zero-set bitmask of a ray over the processed constraint rows.
#[derive(Clone, PartialEq, Eq)]
struct ZeroSet {
    words: Vec<u64>,
}

impl ZeroSet {
    fn new(nbits: usize) -> Self {
        ZeroSet {
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    vec: Vec<BigInt>,
    zero: ZeroSet,
}

/// All extreme rays of {x in R^dim : row . x >= 0 for every row}, as
/// primitive integer vectors in deterministic (sorted) order. The cone must
/// be pointed: the rows must have full column rank.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch(
            "extreme_rays: row length differs from dim".into(),
        ));
    }
    // initial simplicial cone from dim independent rows
    let mut ech = Echelon::new(dim);
    let mut initial: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        if initial.len() < dim && ech.insert(&to_sparse(row)) {
            initial.push(k);
        } else {
            rest.push(k);
        }
    }
    if initial.len() < dim {
        return Err(Error::InvalidInput(format!(
            "cone is not pointed: constraint rank {} < {dim}",
            initial.len()
        )));
    }

    // rays of the initial cone: the columns of B^{-1}, scaled primitive,
    // obtained by solving B x = e_i exactly
    let nrows = rows.len();
    let mut rays: Vec<Ray> = Vec::new();
    for i in 0..dim {
        let col = solve_square(&initial, rows, i)?;
        let vec = primitive(&ratios_to_ints(&col));
        let mut zero = ZeroSet::new(nrows);
        for (pos, &k) in initial.iter().enumerate() {
            if pos != i {
                debug_assert!(dot(&rows[k], &vec).is_zero());
                zero.set(k);
            }
        }
        debug_assert!(dot(&rows[initial[i]], &vec).is_positive());
        rays.push(Ray { vec, zero });
    }

    // incremental double description over the remaining rows
    for &k in &rest {
        let a = &rows[k];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.vec)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (ray, val) in rays.iter_mut().zip(&vals) {
                if val.is_zero() {
                    ray.zero.set(k);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let common = rays[p].zero.intersect(&rays[m].zero);
                // adjacency: no third ray's zero set contains the common one
                let adjacent = rays.iter().enumerate().all(|(j, r)| {
                    j == p || j == m || !common.is_subset_of(&r.zero)
                });
                if !adjacent {
                    continue;
                }
                // positive combination killing row k
                let mut vec: Vec<BigInt> = Vec::with_capacity(dim);
                for i in 0..dim {
                    vec.push(&vals[p] * &rays[m].vec[i] - &vals[m] * &rays[p].vec[i]);
                }
                let vec = primitive(&vec);
                let mut zero = common.clone();
                zero.set(k);
                new_rays.push(Ray { vec, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, ray) in rays.into_iter().enumerate() {
            if !vals[i].is_negative() {
                let mut ray = ray;
                if vals[i].is_zero() {
                    ray.zero.set(k);
                }
                kept.push(ray);
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.vec).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn ratios_to_ints(col: &[BigRational]) -> Vec<BigInt> {
    let mut denom = BigInt::one();
    for x in col {
        denom = denom.lcm(x.denom());
    }
    col.iter()
        .map(|x| x.numer() * (&denom / x.denom()))
        .collect()
}

/// Solves B x = e_i where B is the square matrix of the selected rows.
fn solve_square(
    selected: &[usize],
    rows: &[Vec<BigInt>],
    i: usize,
) -> Result<Vec<BigRational>> {
    let dim = selected.len();
    let mut mat = crate::exactlin::SparseMat::zero(dim, dim);
    for (r, &k) in selected.iter().enumerate() {
        for (c, x) in rows[k].iter().enumerate() {
            if !x.is_zero() {
                mat.set(r, c, BigRational::from_integer(x.clone()));
            }
        }
    }
    let b = SparseVec::unit(dim, i);
    let x = crate::exactlin::solve(&mat, &b)?
        .ok_or_else(|| Error::VerificationFailed("initial cone rows singular".into()))?;
    Ok(x.to_dense())
}

/// True iff v is an extreme ray of {x : rows . x >= 0}: v satisfies all
/// constraints and its active rows have rank dim - 1.
pub fn is_extreme_ray(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let dim = v.len();
    let mut active: Vec<SparseVec> = Vec::new();
    for row in rows {
        let d = dot(row, v);
        if d.is_negative() {
            return false;
        }
        if d.is_zero() {
            active.push(to_sparse(row));
        }
    }
    rank_of(&active, dim) == dim - 1
}
