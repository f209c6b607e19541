//! Partition-algebra diagrams, their action on tensor space, the orbit basis
//! of the commutant of the symmetric group, and the double-centralizer
//! cross-checks tying the two together.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::exactlin::{commutant_basis, rank_of, subspace_equal, Rat, SparseMat, SparseVec};
use crate::tensorrep::{all_kron_vectors, span_rank, tuple_to_flat};
use crate::{Budget, Error, Result};

/// A set partition of the 2r labels {1..r, 1'..r'}. Positions 0..r-1 are the
/// unprimed labels 1..r, positions r..2r-1 are 1'..r'. Blocks are kept in
/// canonical form: each block sorted, blocks ordered by smallest element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SetPartitionDiagram {
    r: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartitionDiagram {
    pub fn from_blocks(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; 2 * r];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            for &pos in block {
                if pos >= 2 * r || seen[pos] {
                    return Err(Error::InvalidInput(format!(
                        "blocks do not partition 2r = {} positions",
                        2 * r
                    )));
                }
                seen[pos] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidInput("blocks miss some positions".into()));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort();
        Ok(SetPartitionDiagram { r, blocks })
    }

    /// Builds a diagram from the block index of every position 0..2r-1.
    pub fn from_assignment(r: usize, assign: &[usize]) -> Result<Self> {
        if assign.len() != 2 * r {
            return Err(Error::InvalidInput("assignment length must be 2r".into()));
        }
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &b) in assign.iter().enumerate() {
            map.entry(b).or_default().push(pos);
        }
        SetPartitionDiagram::from_blocks(r, map.into_values().collect())
    }

    /// The identity diagram with blocks {k, k'}.
    pub fn identity(r: usize) -> Self {
        let blocks = (0..r).map(|k| vec![k, r + k]).collect();
        SetPartitionDiagram { r, blocks }
    }

    /// The diagram of an adjacent transposition: blocks {i, (i+1)'} and
    /// {i+1, i'}, identity elsewhere (1 <= i < r).
    pub fn transposition(r: usize, i: usize) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for k in 0..r {
            if k + 1 == i {
                blocks.push(vec![k, r + k + 1]);
                blocks.push(vec![k + 1, r + k]);
            } else if k != i {
                blocks.push(vec![k, r + k]);
            }
        }
        SetPartitionDiagram::from_blocks(r, blocks).unwrap()
    }

    /// The projector-style generator with singletons {i} and {i'}, identity
    /// elsewhere (1 <= i <= r).
    pub fn singleton(r: usize, i: usize) -> Self {
        let mut blocks: Vec<Vec<usize>> = vec![vec![i - 1], vec![r + i - 1]];
        for k in 0..r {
            if k + 1 != i {
                blocks.push(vec![k, r + k]);
            }
        }
        SetPartitionDiagram::from_blocks(r, blocks).unwrap()
    }

    /// The merging generator with the single block {i, i+1, i', (i+1)'},
    /// identity elsewhere (1 <= i < r).
    pub fn merge(r: usize, i: usize) -> Self {
        let mut blocks: Vec<Vec<usize>> = vec![vec![i - 1, i, r + i - 1, r + i]];
        for k in 0..r {
            if k + 1 != i && k != i {
                blocks.push(vec![k, r + k]);
            }
        }
        SetPartitionDiagram::from_blocks(r, blocks).unwrap()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    fn label(&self, pos: usize) -> String {
        if pos < self.r {
            format!("{}", pos + 1)
        } else {
            format!("{}'", pos - self.r + 1)
        }
    }
}

impl fmt::Display for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            let labels: Vec<String> = block.iter().map(|&p| self.label(p)).collect();
            write!(f, "{{{}}}", labels.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SetPartitionDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::InvalidInput(format!("bad diagram {s:?}: {msg}"));
        let mut labels: Vec<Vec<(usize, bool)>> = Vec::new();
        let mut max_label = 0usize;
        let mut rest = s;
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('{') else {
                return Err(bad("expected '{'"));
            };
            let Some(close) = inner.find('}') else {
                return Err(bad("unterminated block"));
            };
            let mut block = Vec::new();
            for tok in inner[..close].split(',') {
                let tok = tok.trim();
                let (num, primed) = match tok.strip_suffix('\'') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let v: usize = num.parse().map_err(|_| bad("bad label"))?;
                if v == 0 {
                    return Err(bad("labels are 1-based"));
                }
                max_label = max_label.max(v);
                block.push((v, primed));
            }
            labels.push(block);
            rest = &inner[close + 1..];
        }
        let r = max_label;
        let blocks = labels
            .into_iter()
            .map(|block| {
                block
                    .into_iter()
                    .map(|(v, primed)| if primed { r + v - 1 } else { v - 1 })
                    .collect()
            })
            .collect();
        SetPartitionDiagram::from_blocks(r, blocks)
    }
}

/// All set partitions of the 2r labels, in lexicographic order of their
/// restricted-growth strings. Count: Bell(2r).
pub fn enumerate_diagrams(r: usize) -> Result<Vec<SetPartitionDiagram>> {
    if r == 0 {
        return Err(Error::InvalidInput("enumerate_diagrams needs r >= 1".into()));
    }
    let mut out = Vec::new();
    let m = 2 * r;
    let mut assign = vec![0usize; m];
    loop {
        out.push(SetPartitionDiagram::from_assignment(r, &assign)?);
        // next restricted growth string
        let mut pos = m;
        loop {
            if pos == 1 {
                return Ok(out);
            }
            pos -= 1;
            let cap = assign[..pos].iter().copied().max().unwrap() + 1;
            if assign[pos] < cap {
                assign[pos] += 1;
                for a in assign[pos + 1..].iter_mut() {
                    *a = 0;
                }
                break;
            }
        }
    }
}

/// The action of a diagram on r-fold tensor space over an n-dimensional
/// vector space: the n^r x n^r 0/1 matrix whose (i-tuple, j-tuple) entry is 1
/// iff the labeling putting i_k at position k and j_k at position k' is
/// constant on every block.
pub fn diagram_action(d: &SetPartitionDiagram, n: usize, r: usize) -> Result<SparseMat> {
    if d.r() != r {
        return Err(Error::SizeMismatch(format!(
            "diagram on {} strands, requested r = {r}",
            d.r()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("diagram_action needs n >= 1".into()));
    }
    let size = n.pow(r as u32);
    let mut m = SparseMat::zero(size, size);
    let one = Rat::from_integer(1.into());
    // every block-constant labeling arises from exactly one assignment of a
    // value to each block, so this enumeration is injective on entries
    let nb = d.num_blocks();
    let mut values = vec![1usize; nb];
    loop {
        let mut i_tuple = vec![0usize; r];
        let mut j_tuple = vec![0usize; r];
        for (b, block) in d.blocks().iter().enumerate() {
            for &pos in block {
                if pos < r {
                    i_tuple[pos] = values[b];
                } else {
                    j_tuple[pos - r] = values[b];
                }
            }
        }
        m.set(tuple_to_flat(&i_tuple, n), tuple_to_flat(&j_tuple, n), one.clone());
        let Some(b) = (0..nb).rev().find(|&b| values[b] < n) else {
            return Ok(m);
        };
        values[b] += 1;
        for v in values[b + 1..].iter_mut() {
            *v = 1;
        }
    }
}

/// The orbit basis of the commutant of the symmetric group on tensor space:
/// for every set partition of the 2r tuple positions into at most n blocks,
/// the 0/1 indicator matrix of the pairs of tuples whose equality pattern is
/// exactly that partition. Supports are pairwise disjoint and every matrix
/// commutes with every Kronecker power.
pub fn orbit_commutant_basis(n: usize, r: usize) -> Result<Vec<SparseMat>> {
    if n == 0 {
        return Err(Error::InvalidInput("orbit basis needs n >= 1".into()));
    }
    let diagrams = enumerate_diagrams(r)?;
    let size = n.pow(r as u32);
    let one = Rat::from_integer(1.into());
    let mut out = Vec::new();
    for d in diagrams {
        let nb = d.num_blocks();
        if nb > n {
            continue;
        }
        let mut m = SparseMat::zero(size, size);
        // exact pattern: distinct blocks get distinct values
        let mut values: Vec<usize> = Vec::with_capacity(nb);
        let mut stack_done = false;
        values.push(0);
        while !stack_done {
            let depth = values.len() - 1;
            let v = values[depth] + 1;
            if v > n {
                values.pop();
                match values.last_mut() {
                    Some(_) => continue,
                    None => {
                        stack_done = true;
                        continue;
                    }
                }
            }
            values[depth] = v;
            if values[..depth].contains(&v) {
                continue;
            }
            if values.len() == nb {
                let mut i_tuple = vec![0usize; r];
                let mut j_tuple = vec![0usize; r];
                for (b, block) in d.blocks().iter().enumerate() {
                    for &pos in block {
                        if pos < r {
                            i_tuple[pos] = values[b];
                        } else {
                            j_tuple[pos - r] = values[b];
                        }
                    }
                }
                m.set(
                    tuple_to_flat(&i_tuple, n),
                    tuple_to_flat(&j_tuple, n),
                    one.clone(),
                );
            } else {
                values.push(0);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Outcome of the double-centralizer verification at one (n, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWeylReport {
    pub n: usize,
    pub r: usize,
    /// dimension of the commutant of the symmetric group = number of orbit
    /// matrices = rank of the span of the diagram actions
    pub dim_commutant: usize,
    /// dimension of the bicommutant = rank of the span of Kronecker powers
    pub dim_bicommutant: usize,
}

/// Verifies both halves of the double-centralizer statement at (n, r):
/// the diagram actions span exactly the orbit-basis commutant of the
/// symmetric group, and the matrices commuting with that commutant are
/// exactly the span of the Kronecker powers. Any failed equality is a hard
/// error.
pub fn schur_weyl_check(n: usize, r: usize, budget: &Budget) -> Result<SchurWeylReport> {
    budget.check(n, r)?;
    let size = n.pow(r as u32);
    let dim = size * size;

    let orbit = orbit_commutant_basis(n, r)?;
    let orbit_vecs: Vec<SparseVec> = orbit.iter().map(|m| m.vectorize()).collect();
    let dim_commutant = orbit.len();
    if rank_of(&orbit_vecs, dim) != dim_commutant {
        return Err(Error::VerificationFailed(format!(
            "orbit matrices dependent at (n={n}, r={r})"
        )));
    }

    let psi_vecs: Vec<SparseVec> = enumerate_diagrams(r)?
        .iter()
        .map(|d| Ok(diagram_action(d, n, r)?.vectorize()))
        .collect::<Result<_>>()?;
    if !subspace_equal(&psi_vecs, &orbit_vecs, dim)? {
        return Err(Error::VerificationFailed(format!(
            "diagram span differs from orbit commutant at (n={n}, r={r})"
        )));
    }

    let bicommutant = commutant_basis(&orbit, size)?;
    let kron_vecs = all_kron_vectors(n, r);
    if !subspace_equal(&bicommutant, &kron_vecs, dim)? {
        return Err(Error::VerificationFailed(format!(
            "bicommutant differs from Kronecker-power span at (n={n}, r={r})"
        )));
    }
    let dim_bicommutant = span_rank(n, r, budget)?;
    if bicommutant.len() != dim_bicommutant {
        return Err(Error::VerificationFailed(format!(
            "bicommutant dimension {} vs span rank {dim_bicommutant} at (n={n}, r={r})",
            bicommutant.len()
        )));
    }

    Ok(SchurWeylReport {
        n,
        r,
        dim_commutant,
        dim_bicommutant,
    })
}

/// Bell numbers B(0..=m) by the triangle recurrence.
pub fn bell_numbers(m: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    let mut bells = vec![1u128];
    for _ in 0..m {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rat;
    use crate::permcomb::Permutation;
    use crate::tensorrep::kron_power;
    use num::Zero;

    #[test]
    fn enumerate_counts_are_bell() {
        let bells = bell_numbers(6);
        assert_eq!(enumerate_diagrams(1).unwrap().len(), 2);
        assert_eq!(enumerate_diagrams(2).unwrap().len(), 15);
        assert_eq!(enumerate_diagrams(3).unwrap().len(), 203);
        assert_eq!(bells[2], 2);
        assert_eq!(bells[4], 15);
        assert_eq!(bells[6], 203);
    }

    #[test]
    fn enumerate_is_sorted_and_distinct() {
        let ds = enumerate_diagrams(2).unwrap();
        let set: std::collections::BTreeSet<_> = ds.iter().cloned().collect();
        assert_eq!(set.len(), ds.len());
    }

    #[test]
    fn display_parse_roundtrip() {
        let d = SetPartitionDiagram::identity(2);
        assert_eq!(d.to_string(), "{1,1'}{2,2'}");
        assert_eq!("{1,1'}{2,2'}".parse::<SetPartitionDiagram>().unwrap(), d);
        let m = SetPartitionDiagram::merge(2, 1);
        assert_eq!(m.to_string(), "{1,2,1',2'}");
        for d in enumerate_diagrams(2).unwrap() {
            assert_eq!(d.to_string().parse::<SetPartitionDiagram>().unwrap(), d);
        }
        assert!("{1,3'}".parse::<SetPartitionDiagram>().is_err());
        assert!("{1}{1}".parse::<SetPartitionDiagram>().is_err());
    }

    #[test]
    fn action_of_identity_diagram() {
        for (n, r) in [(2, 1), (3, 2), (2, 3)] {
            assert_eq!(
                diagram_action(&SetPartitionDiagram::identity(r), n, r).unwrap(),
                SparseMat::identity(n.pow(r as u32))
            );
        }
    }

    #[test]
    fn action_of_singleton_r1_is_all_ones() {
        let d = SetPartitionDiagram::singleton(1, 1);
        let m = diagram_action(&d, 3, 1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), rat(1));
            }
        }
    }

    #[test]
    fn action_of_full_merge_r2() {
        let d = SetPartitionDiagram::merge(2, 1);
        let m = diagram_action(&d, 3, 2).unwrap();
        assert_eq!(m.nnz(), 3);
        for v in 0..3usize {
            assert_eq!(m.get(v * 3 + v, v * 3 + v), rat(1));
        }
    }

    #[test]
    fn action_of_transposition_matches_flip() {
        // the transposition diagram acts by permuting tensor positions
        let d = SetPartitionDiagram::transposition(2, 1);
        let m = diagram_action(&d, 3, 2).unwrap();
        for a in 0..3usize {
            for b in 0..3usize {
                assert_eq!(m.get(a * 3 + b, b * 3 + a), rat(1));
            }
        }
        assert_eq!(m.nnz(), 9);
    }

    #[test]
    fn diagram_actions_commute_with_kron_powers() {
        for (n, r) in [(2, 2), (3, 2), (4, 2), (2, 3)] {
            let gens: Vec<_> = (1..n)
                .map(|i| kron_power(&Permutation::adjacent_transposition(n, i), r))
                .collect();
            for d in enumerate_diagrams(r).unwrap() {
                let m = diagram_action(&d, n, r).unwrap();
                for g in &gens {
                    assert_eq!(m.mul(g).unwrap(), g.mul(&m).unwrap(), "d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(orbit_commutant_basis(2, 2).unwrap().len(), 8);
        assert_eq!(orbit_commutant_basis(4, 2).unwrap().len(), 15);
        assert_eq!(orbit_commutant_basis(2, 1).unwrap().len(), 2);
        // n = 3 < 2r: the four-singletons pattern needs 4 distinct values
        assert_eq!(orbit_commutant_basis(3, 2).unwrap().len(), 14);
    }

    #[test]
    fn orbit_r1_n2_matrices() {
        let orbit = orbit_commutant_basis(2, 1).unwrap();
        let id = SparseMat::identity(2);
        let mut offdiag = SparseMat::zero(2, 2);
        offdiag.set(0, 1, rat(1));
        offdiag.set(1, 0, rat(1));
        assert!(orbit.contains(&id));
        assert!(orbit.contains(&offdiag));
    }

    #[test]
    fn orbit_supports_partition_all_pairs() {
        let orbit = orbit_commutant_basis(3, 2).unwrap();
        let mut total = SparseMat::zero(9, 9);
        for m in &orbit {
            for ((i, j), x) in m.iter() {
                assert_eq!(*x, rat(1));
                assert!(total.get(i, j).is_zero(), "overlapping supports");
                total.set(i, j, rat(1));
            }
        }
        assert_eq!(total.nnz(), 81);
    }

    #[test]
    fn orbit_matrices_commute_with_kron_powers() {
        for (n, r) in [(2, 2), (3, 2), (4, 2)] {
            let gens: Vec<_> = (1..n)
                .map(|i| kron_power(&Permutation::adjacent_transposition(n, i), r))
                .collect();
            for m in orbit_commutant_basis(n, r).unwrap() {
                for g in &gens {
                    assert_eq!(m.mul(g).unwrap(), g.mul(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn psi_rank_is_bell_iff_n_large() {
        // n >= 2r: diagram images independent; n < 2r: strictly fewer
        let cases = [(2, 1, 2usize), (4, 2, 15), (2, 2, 8), (3, 2, 14), (2, 3, 32)];
        let bells = bell_numbers(6);
        for (n, r, expected) in cases {
            let vecs: Vec<SparseVec> = enumerate_diagrams(r)
                .unwrap()
                .iter()
                .map(|d| diagram_action(d, n, r).unwrap().vectorize())
                .collect();
            let dim = n.pow(2 * r as u32);
            let rank = rank_of(&vecs, dim);
            assert_eq!(rank, expected, "(n,r)=({n},{r})");
            if n >= 2 * r {
                assert_eq!(rank as u128, bells[2 * r]);
            } else {
                assert!((rank as u128) < bells[2 * r]);
            }
        }
    }

    #[test]
    fn schur_weyl_small_cases() {
        let budget = Budget::default();
        let rep = schur_weyl_check(3, 2, &budget).unwrap();
        assert_eq!((rep.dim_commutant, rep.dim_bicommutant), (14, 6));
        let rep = schur_weyl_check(4, 2, &budget).unwrap();
        assert_eq!((rep.dim_commutant, rep.dim_bicommutant), (15, 23));
        let rep = schur_weyl_check(2, 2, &budget).unwrap();
        assert_eq!((rep.dim_commutant, rep.dim_bicommutant), (8, 2));
        let rep = schur_weyl_check(2, 3, &budget).unwrap();
        assert_eq!(rep.dim_bicommutant, 2);
    }

    #[test]
    fn nonnegative_combinations_normalize_to_doubly_stochastic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (n, r) = (3, 2);
        let perms = Permutation::all(n);
        for _ in 0..20 {
            let mut m = SparseMat::zero(n.pow(r as u32), n.pow(r as u32));
            let mut total = Rat::zero();
            for w in &perms {
                let c = rat(rng.gen_range(0..5));
                total += &c;
                m.add_scaled(&c, &kron_power(w, r));
            }
            if total.is_zero() {
                continue;
            }
            let inv = rat(1) / total;
            m.scale(&inv);
            assert!(m.row_sums().iter().all(|s| *s == rat(1)));
            assert!(m.col_sums().iter().all(|s| *s == rat(1)));
        }
    }
}
