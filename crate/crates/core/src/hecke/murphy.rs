use std::collections::BTreeSet;

use super::algebra::{HeckeContext, HeckeElement};
use super::laurent::LaurentPoly;
use crate::permcomb::{rsk, rsk_inverse, Partition, Permutation, StandardTableau};
use crate::{Error, Result};

/// Whether the Murphy-type element is built from x_lambda (v-weights) or
/// y_lambda (signed inverse v-weights).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MurphyKind {
    X,
    Y,
}

/// The Young subgroup W_lambda: all permutations preserving the consecutive
/// blocks {1..l1}, {l1+1..l1+l2}, ... given by the parts of lambda. It is the
/// row stabilizer of the natural tableau of shape lambda.
pub fn young_subgroup(lambda: &Partition) -> Vec<Permutation> {
    let n = lambda.weight();
    let mut members = vec![Permutation::identity(n)];
    let mut offset = 0usize;
    for &part in lambda.parts() {
        let mut next = Vec::new();
        for block in Permutation::all(part) {
            for w in &members {
                let mut word = w.word().to_vec();
                for (k, &img) in block.word().iter().enumerate() {
                    word[offset + k] = offset + img;
                }
                next.push(Permutation::from_word(word).expect("valid block word"));
            }
        }
        members = next;
        offset += part;
    }
    members.sort();
    members
}

/// The longest element of W_lambda: each consecutive block reversed.
pub fn longest_in_young_subgroup(lambda: &Partition) -> Permutation {
    let n = lambda.weight();
    let mut word: Vec<usize> = (1..=n).collect();
    let mut offset = 0usize;
    for &part in lambda.parts() {
        word[offset..offset + part].reverse();
        offset += part;
    }
    Permutation::from_word(word).expect("reversed blocks form a word")
}

/// x_lambda = sum over W_lambda of v^{l(w)} T_w.
pub fn x_lambda(lambda: &Partition) -> HeckeElement {
    let mut e = HeckeElement::zero(lambda.weight());
    for w in young_subgroup(lambda) {
        let p = LaurentPoly::v_pow(w.length() as i32);
        e.add_term(&w, &p).unwrap();
    }
    e
}

/// y_lambda = sum over W_lambda of (-v)^{-l(w)} T_w.
pub fn y_lambda(lambda: &Partition) -> HeckeElement {
    let mut e = HeckeElement::zero(lambda.weight());
    for w in young_subgroup(lambda) {
        let l = w.length();
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let p = LaurentPoly::monomial(sign, -(l as i32));
        e.add_term(&w, &p).unwrap();
    }
    e
}

/// The coset representative d(t) carrying the natural tableau of the shape
/// to t. (Defining d the other way round, as the map t -> natural tableau,
/// makes the Murphy collection drop rank, so this orientation is forced by
/// the basis property.)
pub fn coset_rep(t: &StandardTableau) -> Permutation {
    t.perm().inverse()
}

fn check_pair(lambda: &Partition, s: &StandardTableau, t: &StandardTableau) -> Result<()> {
    if s.shape() != lambda || t.shape() != lambda {
        return Err(Error::SizeMismatch(format!(
            "tableaux of shapes {} and {} for lambda = {}",
            s.shape(),
            t.shape(),
            lambda
        )));
    }
    Ok(())
}

/// The Murphy basis element x_st = T_{d(s)} x_lambda T_{d(t)^{-1}}, or its
/// y-counterpart.
pub fn murphy(
    ctx: &HeckeContext,
    lambda: &Partition,
    s: &StandardTableau,
    t: &StandardTableau,
    kind: MurphyKind,
) -> Result<HeckeElement> {
    check_pair(lambda, s, t)?;
    let mid = match kind {
        MurphyKind::X => x_lambda(lambda),
        MurphyKind::Y => y_lambda(lambda),
    };
    let left = HeckeElement::t(coset_rep(s));
    let right = HeckeElement::t(coset_rep(t).inverse());
    ctx.multiply(&ctx.multiply(&left, &mid)?, &right)
}

/// Geck's element y-tilde_st = T_{d(s)} C_{w_lambda} T_{d(t)^{-1}}.
pub fn geck_tilde_y(
    ctx: &HeckeContext,
    lambda: &Partition,
    s: &StandardTableau,
    t: &StandardTableau,
) -> Result<HeckeElement> {
    check_pair(lambda, s, t)?;
    let wl = longest_in_young_subgroup(lambda);
    let left = HeckeElement::t(coset_rep(s));
    let right = HeckeElement::t(coset_rep(t).inverse());
    ctx.multiply(&ctx.multiply(&left, &ctx.c(&wl)?)?, &right)
}

/// One shape's outcome of the tilde-y comparison: the observed sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeSign {
    pub lambda: Partition,
    pub sign: i64,
}

/// Verifies, for every shape of weight n and every pair of standard
/// tableaux, that y-tilde_st equals sign * v^{l(w_lambda)} * y_st with one
/// sign shared by the whole shape. The observed signs are returned, never
/// assumed.
pub fn eq10_check(ctx: &HeckeContext) -> Result<Vec<ShapeSign>> {
    let n = ctx.n();
    let mut out = Vec::new();
    for lambda in Partition::all(n) {
        let wl = longest_in_young_subgroup(&lambda);
        let shift = wl.length() as i32;
        let tabs = StandardTableau::enumerate(&lambda);
        let mut shape_sign: Option<i64> = None;
        for s in &tabs {
            for t in &tabs {
                let tilde = geck_tilde_y(ctx, &lambda, s, t)?;
                let y = murphy(ctx, &lambda, s, t, MurphyKind::Y)?;
                let scaled = y.scale(&LaurentPoly::v_pow(shift));
                let sign = if tilde == scaled {
                    1
                } else if tilde == scaled.scale(&LaurentPoly::monomial(-1, 0)) {
                    -1
                } else {
                    return Err(Error::VerificationFailed(format!(
                        "tilde-y differs from +-v^{shift} y at lambda = {lambda}"
                    )));
                };
                match shape_sign {
                    None => shape_sign = Some(sign),
                    Some(prev) if prev != sign => {
                        return Err(Error::VerificationFailed(format!(
                            "sign not constant on shape {lambda}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        out.push(ShapeSign {
            lambda,
            sign: shape_sign.expect("every shape has a tableau"),
        });
    }
    Ok(out)
}

/// The common shape of the RSK tableau pair of w.
pub fn rsk_cell(w: &Permutation) -> Partition {
    rsk(w).2
}

/// All permutations whose RSK tableau pair has shape lambda, generated by
/// inverting RSK on every tableau pair. Cardinality: the squared count of
/// standard tableaux.
pub fn cell_members(lambda: &Partition) -> Result<BTreeSet<Permutation>> {
    let tabs = StandardTableau::enumerate(lambda);
    let mut out = BTreeSet::new();
    for p in &tabs {
        for q in &tabs {
            out.insert(rsk_inverse(p, q)?);
        }
    }
    Ok(out)
}

/// Expansion of a Hecke element in the C'-basis (unitriangular over the
/// T-basis by length): list of (w, coefficient).
pub fn cprime_expansion(
    ctx: &HeckeContext,
    a: &HeckeElement,
) -> Result<Vec<(Permutation, LaurentPoly)>> {
    let mut residual = a.clone();
    let mut out = Vec::new();
    loop {
        let Some((w, c)) = residual
            .terms()
            .max_by_key(|(w, _)| (w.length(), (*w).clone()))
            .map(|(w, c)| (w.clone(), c.clone()))
        else {
            return Ok(out);
        };
        residual = residual.sub(&ctx.cprime(&w)?.scale(&c))?;
        out.push((w, c));
    }
}

/// Expansion in the C-basis, via the sign-twisted unitriangularity of C.
pub fn c_expansion(
    ctx: &HeckeContext,
    a: &HeckeElement,
) -> Result<Vec<(Permutation, LaurentPoly)>> {
    let mut residual = a.clone();
    let mut out = Vec::new();
    loop {
        let Some((w, c)) = residual
            .terms()
            .max_by_key(|(w, _)| (w.length(), (*w).clone()))
            .map(|(w, c)| (w.clone(), c.clone()))
        else {
            return Ok(out);
        };
        residual = residual.sub(&ctx.c(&w)?.scale(&c))?;
        out.push((w, c));
    }
}
