//! Convex geometry of the span of Kronecker powers: the linear description
//! of the span, the polytope of its doubly stochastic members, diagonal
//! decompositions, convex-hull membership with exact certificates, and
//! vertex enumeration by two independent algorithms.

pub mod dd;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, One, Signed, Zero};
use rand::{Rng, SeedableRng};

use crate::exactlin::{
    kernel_basis, lp_feasible, lp_maximize, rank_of, rat, subspace_equal, LpOutcome, LpProblem,
    LpSolution, Rat, SparseMat, SparseVec, TrackedEchelon,
};
use crate::permcomb::Permutation;
use crate::tensorrep::{
    flat_to_tuple, kron_power, phi, theorem1_basis, tuple_to_flat, Direction,
    GroupAlgebraElement,
};
use crate::{Budget, Error, Result};

/// The span of the Kronecker powers at one (n, r), carried by the verified
/// subsequence-indexed basis together with a tracked echelon giving exact
/// coordinates in that basis.
pub struct SpanContext {
    n: usize,
    r: usize,
    basis: Vec<Permutation>,
    tracked: TrackedEchelon,
    size: usize,
}

impl SpanContext {
    pub fn new(n: usize, r: usize, budget: &Budget) -> Result<Self> {
        let basis = theorem1_basis(n, r, Direction::Increasing, budget)?;
        let size = n.pow(r as u32);
        let mut tracked = TrackedEchelon::new(size * size, basis.len());
        for (idx, w) in basis.iter().enumerate() {
            tracked.insert(&kron_power(w, r).vectorize(), idx);
        }
        Ok(SpanContext {
            n,
            r,
            basis,
            tracked,
            size,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Matrix side length n^r.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Coordinate dimension: the number of basis permutations.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    fn check_size(&self, m: &SparseMat) -> Result<()> {
        if m.nrows() != self.size || m.ncols() != self.size {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} in span context of size {}",
                m.nrows(),
                m.ncols(),
                self.size
            )));
        }
        Ok(())
    }

    /// Exact coordinates of m over the basis, if m lies in the span.
    pub fn coordinates(&self, m: &SparseMat) -> Result<Option<SparseVec>> {
        self.check_size(m)?;
        Ok(self.tracked.coordinates(&m.vectorize()))
    }

    pub fn in_span(&self, m: &SparseMat) -> Result<bool> {
        Ok(self.coordinates(m)?.is_some())
    }

    /// The matrix with the given basis coordinates.
    pub fn matrix_from_coords(&self, x: &SparseVec) -> Result<SparseMat> {
        if x.dim() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates over a basis of {}",
                x.dim(),
                self.basis.len()
            )));
        }
        let mut m = SparseMat::zero(self.size, self.size);
        for (b, c) in x.iter() {
            m.add_scaled(c, &kron_power(&self.basis[b], self.r));
        }
        Ok(m)
    }

    /// The distinct nonzero 0/1 entry rows of the evaluation map
    /// coordinates -> matrix entries. Row component b is the (I, J) entry of
    /// the b-th basis Kronecker power. Deterministically ordered.
    pub fn entry_rows(&self) -> Vec<Vec<BigInt>> {
        let d = self.basis.len();
        let mut by_entry: BTreeMap<(usize, usize), Vec<BigInt>> = BTreeMap::new();
        for (b, w) in self.basis.iter().enumerate() {
            for ((i, j), _) in kron_power(w, self.r).iter() {
                by_entry
                    .entry((i, j))
                    .or_insert_with(|| vec![BigInt::zero(); d])[b] = BigInt::one();
            }
        }
        let set: BTreeSet<Vec<BigInt>> = by_entry.into_values().collect();
        set.into_iter().collect()
    }
}

fn assemble_entry_row(
    dim: usize,
    entries: impl IntoIterator<Item = (usize, i64)>,
) -> SparseVec {
    SparseVec::from_entries(dim, entries.into_iter().map(|(i, c)| (i, rat(c))))
}

/// Kernel basis of the linear description of the span: place-permutation
/// symmetry, forced zeros when exactly one of the first row/column index
/// pairs collides, and equality of first-place row and column sums. The
/// result is verified to coincide with the span of the Kronecker powers;
/// a mismatch is a hard error.
pub fn section5_solution_space(n: usize, r: usize, budget: &Budget) -> Result<Vec<SparseVec>> {
    budget.check(n, r)?;
    let rows = section5_rows(n, r, true);
    let size = n.pow(r as u32);
    let dim = size * size;
    let sols = kernel_basis(&rows, dim);
    let kron: Vec<SparseVec> = Permutation::all(n)
        .iter()
        .map(|w| kron_power(w, r).vectorize())
        .collect();
    if !subspace_equal(&sols, &kron, dim)? {
        return Err(Error::VerificationFailed(format!(
            "linear description differs from the Kronecker span at (n={n}, r={r})"
        )));
    }
    Ok(sols)
}

/// The constraint rows of the linear description. With `direct_sums` the
/// sum condition is emitted directly; otherwise as the commutator with
/// J tensor identity.
pub fn section5_rows(n: usize, r: usize, direct_sums: bool) -> Vec<SparseVec> {
    let size = n.pow(r as u32);
    let dim = size * size;
    let flat = |i: usize, j: usize| i * size + j;
    let mut rows: BTreeSet<SparseVec> = BTreeSet::new();
    // (i) place permutation by adjacent place transpositions
    for p in 0..r.saturating_sub(1) {
        for i in 0..size {
            let mut ti = flat_to_tuple(i, n, r);
            ti.swap(p, p + 1);
            let si = tuple_to_flat(&ti, n);
            for j in 0..size {
                let mut tj = flat_to_tuple(j, n, r);
                tj.swap(p, p + 1);
                let sj = tuple_to_flat(&tj, n);
                if (i, j) != (si, sj) {
                    rows.insert(assemble_entry_row(
                        dim,
                        [(flat(i, j), 1), (flat(si, sj), -1)],
                    ));
                }
            }
        }
    }
    // (ii) forced zeros
    if r >= 2 {
        for i in 0..size {
            let ti = flat_to_tuple(i, n, r);
            for j in 0..size {
                let tj = flat_to_tuple(j, n, r);
                if (ti[0] == ti[1]) != (tj[0] == tj[1]) {
                    rows.insert(assemble_entry_row(dim, [(flat(i, j), 1)]));
                }
            }
        }
    }
    if direct_sums {
        // (iii) first-place column sum equals first-place row sum, for every
        // choice of the remaining indices and of the summed-out partners
        for i in 0..size {
            let ti = flat_to_tuple(i, n, r);
            for j in 0..size {
                let tj = flat_to_tuple(j, n, r);
                let mut entries: BTreeMap<usize, i64> = BTreeMap::new();
                for k in 1..=n {
                    let mut tk = ti.clone();
                    tk[0] = k;
                    *entries.entry(flat(tuple_to_flat(&tk, n), j)).or_insert(0) += 1;
                    let mut tk = tj.clone();
                    tk[0] = k;
                    *entries.entry(flat(i, tuple_to_flat(&tk, n))).or_insert(0) -= 1;
                }
                let row = assemble_entry_row(dim, entries.into_iter().filter(|(_, c)| *c != 0));
                if !row.is_zero() {
                    rows.insert(row);
                }
            }
        }
    } else {
        // (iii) as commuting with J tensor identity^(r-1)
        let mut jn = SparseMat::zero(size, size);
        for i in 0..size {
            let ti = flat_to_tuple(i, n, r);
            for j in 0..size {
                let tj = flat_to_tuple(j, n, r);
                if ti[1..] == tj[1..] {
                    jn.set(i, j, rat(1));
                }
            }
        }
        // constraint rows of X J = J X over the vectorized unknowns
        for i in 0..size {
            for j in 0..size {
                let mut entries: BTreeMap<usize, i64> = BTreeMap::new();
                for k in 0..size {
                    if !jn.get(k, j).is_zero() {
                        *entries.entry(flat(i, k)).or_insert(0) += 1;
                    }
                    if !jn.get(i, k).is_zero() {
                        *entries.entry(flat(k, j)).or_insert(0) -= 1;
                    }
                }
                let row = assemble_entry_row(dim, entries.into_iter().filter(|(_, c)| *c != 0));
                if !row.is_zero() {
                    rows.insert(row);
                }
            }
        }
    }
    rows.into_iter().collect()
}

/// Entrywise nonnegative with all row and column sums exactly 1.
pub fn is_doubly_stochastic(m: &SparseMat) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    if m.iter().any(|(_, x)| x.is_negative()) {
        return false;
    }
    let one = rat(1);
    m.row_sums().iter().all(|s| *s == one) && m.col_sums().iter().all(|s| *s == one)
}

/// Membership in the polytope: doubly stochastic and inside the span.
pub fn omega_membership(m: &SparseMat, ctx: &SpanContext) -> Result<bool> {
    ctx.check_size(m)?;
    Ok(is_doubly_stochastic(m) && ctx.in_span(m)?)
}

/// Searches, in lexicographic order, for a permutation whose Kronecker
/// diagonal in m is entrywise positive; early exit on the first zero.
pub fn positive_kron_diagonal(m: &SparseMat, n: usize, r: usize) -> Option<Permutation> {
    let size = n.pow(r as u32);
    debug_assert_eq!(m.nrows(), size);
    'outer: for w in Permutation::all(n) {
        for j in 0..size {
            let tuple = flat_to_tuple(j, n, r);
            let image: Vec<usize> = tuple.iter().map(|&t| w.apply(t)).collect();
            if !m.get(tuple_to_flat(&image, n), j).is_positive() {
                continue 'outer;
            }
        }
        return Some(w);
    }
    None
}

/// Outcome of the greedy diagonal decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeOutcome {
    /// Convex weights reproducing the input exactly.
    Weights(Vec<(Permutation, Rat)>),
    /// No positive Kronecker diagonal in the residual at the given step.
    Stuck { step: usize, residual: SparseMat },
}

/// Greedy decomposition: repeatedly strip the minimum entry of a positive
/// Kronecker diagonal. Every successful step zeroes at least one more entry.
/// Requires membership in the polytope.
pub fn greedy_decompose(m: &SparseMat, ctx: &SpanContext) -> Result<DecomposeOutcome> {
    if !omega_membership(m, ctx)? {
        return Err(Error::InvalidInput(
            "greedy decomposition requires a doubly stochastic member of the span".into(),
        ));
    }
    let (n, r) = (ctx.n(), ctx.r());
    let size = ctx.size();
    let mut residual = m.clone();
    let mut weights: BTreeMap<Permutation, Rat> = BTreeMap::new();
    let mut step = 0usize;
    while !residual.is_zero() {
        let Some(w) = positive_kron_diagonal(&residual, n, r) else {
            return Ok(DecomposeOutcome::Stuck { step, residual });
        };
        // minimum entry on that diagonal
        let mut c: Option<Rat> = None;
        for j in 0..size {
            let tuple = flat_to_tuple(j, n, r);
            let image: Vec<usize> = tuple.iter().map(|&t| w.apply(t)).collect();
            let x = residual.get(tuple_to_flat(&image, n), j);
            c = Some(match c {
                None => x,
                Some(cur) => cur.min(x),
            });
        }
        let c = c.expect("nonempty diagonal");
        let neg = -c.clone();
        residual.add_scaled(&neg, &kron_power(&w, r));
        *weights.entry(w).or_insert_with(Rat::zero) += c;
        step += 1;
    }
    let total: Rat = weights.values().cloned().sum();
    if total != rat(1) {
        return Err(Error::VerificationFailed(format!(
            "greedy weights sum to {total} instead of 1"
        )));
    }
    Ok(DecomposeOutcome::Weights(weights.into_iter().collect()))
}

/// Exact outcome of convex-hull membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexCertificate {
    /// Nonnegative weights with sum 1 reproducing the matrix.
    Weights(Vec<(Permutation, Rat)>),
    /// An exactly verified Farkas vector for the deduplicated system.
    Farkas(Vec<Rat>),
}

/// Decides by exact LP whether m is a convex combination of the Kronecker
/// powers, returning weights or a verified infeasibility certificate.
pub fn conv_hull_membership(m: &SparseMat, n: usize, r: usize) -> Result<ConvexCertificate> {
    let size = n.pow(r as u32);
    if m.nrows() != size || m.ncols() != size {
        return Err(Error::DimensionMismatch(format!(
            "matrix {}x{} at (n={n}, r={r})",
            m.nrows(),
            m.ncols()
        )));
    }
    let perms = Permutation::all(n);
    let nv = perms.len();
    // row per matrix entry over the weight variables, deduplicated together
    // with its right-hand side
    let mut dedup: BTreeSet<(SparseVec, Rat)> = BTreeSet::new();
    let mut support: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (idx, w) in perms.iter().enumerate() {
        for (pos, _) in kron_power(w, r).iter() {
            support
                .entry(pos)
                .or_insert_with(|| SparseVec::zero(nv))
                .add_to(idx, &rat(1));
        }
    }
    for i in 0..size {
        for j in 0..size {
            let row = support
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| SparseVec::zero(nv));
            dedup.insert((row, m.get(i, j)));
        }
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (row, b) in dedup {
        rows.push(row);
        rhs.push(b);
    }
    rows.push(SparseVec::from_entries(nv, (0..nv).map(|i| (i, rat(1)))));
    rhs.push(rat(1));
    let problem = LpProblem::nonneg(nv, rows, rhs);
    match lp_feasible(&problem)? {
        LpSolution::Feasible(x) => {
            if !problem.verify_feasible(&x) {
                return Err(Error::VerificationFailed(
                    "LP returned an unverifiable feasible point".into(),
                ));
            }
            Ok(ConvexCertificate::Weights(
                perms
                    .into_iter()
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            ))
        }
        LpSolution::Infeasible(y) => {
            if !problem.verify_farkas(&y) {
                return Err(Error::VerificationFailed(
                    "LP returned an unverifiable Farkas certificate".into(),
                ));
            }
            Ok(ConvexCertificate::Farkas(y))
        }
    }
}

/// The 16x16 counterexample: the image of the signed combination putting
/// weight -1/5 on the identity and 1/5 on each of the six transpositions of
/// four letters, at tensor exponent 2. Doubly stochastic and inside the
/// span, yet outside the convex hull of the Kronecker powers.
pub fn roberson_schmidt_matrix() -> SparseMat {
    let mut a = GroupAlgebraElement::zero(4);
    a.add_term(Permutation::identity(4), -Rat::new(1.into(), 5.into()))
        .unwrap();
    for w in Permutation::all(4) {
        if w.word().iter().enumerate().filter(|(i, &v)| v != i + 1).count() == 2 {
            a.add_term(w, Rat::new(1.into(), 5.into())).unwrap();
        }
    }
    phi(&a, 2)
}

/// A point of the polytope with both its matrix and coordinate forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPoint {
    pub n: usize,
    pub r: usize,
    pub matrix: SparseMat,
    pub coords: SparseVec,
}

/// Vertex test: the active entry rows at the point, together with the
/// normalization row, must span the full coordinate space.
pub fn is_vertex(m: &SparseMat, ctx: &SpanContext) -> Result<bool> {
    if !omega_membership(m, ctx)? {
        return Err(Error::InvalidInput(
            "vertex test requires a member of the polytope".into(),
        ));
    }
    let x = ctx
        .coordinates(m)?
        .expect("membership implies coordinates");
    let d = ctx.dim();
    let mut active: Vec<SparseVec> = Vec::new();
    for row in ctx.entry_rows() {
        let val: Rat = row
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_one())
            .map(|(b, _)| x.get(b))
            .sum();
        if val.is_zero() {
            active.push(SparseVec::from_entries(
                d,
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| c.is_one())
                    .map(|(b, _)| (b, rat(1))),
            ));
        }
    }
    active.push(SparseVec::from_entries(d, (0..d).map(|i| (i, rat(1)))));
    Ok(rank_of(&active, d) == d)
}

fn ray_to_vertex(ray: &[BigInt], d: usize) -> Result<SparseVec> {
    let total: BigInt = ray.iter().sum();
    if !total.is_positive() {
        return Err(Error::VerificationFailed(
            "extreme ray with nonpositive coordinate sum".into(),
        ));
    }
    let mut x = SparseVec::zero(d);
    for (b, c) in ray.iter().enumerate() {
        if !c.is_zero() {
            x.set(b, Rat::new(c.clone(), total.clone()));
        }
    }
    Ok(x)
}

fn points_from_rays(ctx: &SpanContext, rays: Vec<Vec<BigInt>>) -> Result<Vec<OmegaPoint>> {
    let d = ctx.dim();
    let mut out = Vec::new();
    for ray in rays {
        let coords = ray_to_vertex(&ray, d)?;
        let matrix = ctx.matrix_from_coords(&coords)?;
        out.push(OmegaPoint {
            n: ctx.n(),
            r: ctx.r(),
            matrix,
            coords,
        });
    }
    out.sort_by(|a, b| a.coords.to_dense().cmp(&b.coords.to_dense()));
    Ok(out)
}

/// All vertices of the polytope by double description over the pointed
/// cone of nonnegative-entry coordinate vectors.
pub fn enumerate_vertices(ctx: &SpanContext) -> Result<Vec<OmegaPoint>> {
    let rows = ctx.entry_rows();
    let rays = dd::extreme_rays(&rows, ctx.dim())?;
    points_from_rays(ctx, rays)
}

/// Independent vertex enumeration: breadth-first traversal of the ray
/// adjacency graph, computing edge directions from the tangent cone at each
/// ray and pivoting along them.
pub fn enumerate_vertices_by_traversal(ctx: &SpanContext) -> Result<Vec<OmegaPoint>> {
    let rows = ctx.entry_rows();
    let d = ctx.dim();
    // start at a Kronecker power: the identity has coordinate vector e_b
    let b0 = ctx
        .basis()
        .iter()
        .position(|w| w.is_identity())
        .expect("identity belongs to the basis");
    let mut start = vec![BigInt::zero(); d];
    start[b0] = BigInt::one();
    let start = dd::primitive(&start);

    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };

    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<BigInt>> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        // active rows and the coordinate used to project out the ray
        let active: Vec<&Vec<BigInt>> =
            rows.iter().filter(|a| dot(a, &u).is_zero()).collect();
        let kc = u
            .iter()
            .position(|c| !c.is_zero())
            .expect("ray is nonzero");
        let projected: Vec<Vec<BigInt>> = active
            .iter()
            .map(|a| {
                a.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != kc)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let tangent = dd::extreme_rays(&projected, d - 1)?;
        for dir in tangent {
            // lift with zero in the projected-out coordinate
            let mut v = Vec::with_capacity(d);
            v.extend_from_slice(&dir[..kc]);
            v.push(BigInt::zero());
            v.extend_from_slice(&dir[kc..]);
            // pivot: follow the edge until the first inactive row stops it
            let mut best: Option<(BigInt, BigInt)> = None; // (a.u, -a.v)
            for a in &rows {
                let av = dot(a, &v);
                if av.is_negative() {
                    let au = dot(a, &u);
                    let cand = (au, -av);
                    best = Some(match best {
                        None => cand,
                        Some(cur) => {
                            // compare ratios au/(-av) exactly
                            if &cand.0 * &cur.1 < &cur.0 * &cand.1 {
                                cand
                            } else {
                                cur
                            }
                        }
                    });
                }
            }
            let neighbor = match best {
                Some((p, q)) => {
                    let w: Vec<BigInt> = u
                        .iter()
                        .zip(&v)
                        .map(|(uc, vc)| &q * uc + &p * vc)
                        .collect();
                    dd::primitive(&w)
                }
                None => {
                    // v already satisfies every constraint, so it lies inside
                    // the two-dimensional face: slide from v against u until
                    // the first row with a . u > 0 becomes active
                    let mut best: Option<(BigInt, BigInt)> = None; // (a.v, a.u)
                    for a in &rows {
                        let au = dot(a, &u);
                        if au.is_positive() {
                            let av = dot(a, &v);
                            let cand = (av, au);
                            best = Some(match best {
                                None => cand,
                                Some(cur) => {
                                    // compare ratios av/au exactly
                                    if &cand.0 * &cur.1 < &cur.0 * &cand.1 {
                                        cand
                                    } else {
                                        cur
                                    }
                                }
                            });
                        }
                    }
                    let (p, q) = best.expect("pointed cone has a positive row");
                    let w: Vec<BigInt> = u
                        .iter()
                        .zip(&v)
                        .map(|(uc, vc)| &q * vc - &p * uc)
                        .collect();
                    dd::primitive(&w)
                }
            };
            if seen.insert(neighbor.clone()) {
                queue.push_back(neighbor);
            }
        }
    }
    points_from_rays(ctx, seen.into_iter().collect())
}

/// Deterministic sample of polytope points: LP-optimal vertices for seeded
/// random objectives, followed by seeded random convex mixtures of Kronecker
/// powers and of the found vertices.
pub fn sample_omega_points(
    ctx: &SpanContext,
    seed: u64,
    num_lp: usize,
    num_mix: usize,
) -> Result<Vec<SparseMat>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = ctx.dim();
    let rows = ctx.entry_rows();
    let m = rows.len();
    // variables: d free coordinates, m slacks >= 0
    // constraints: entry row . x - slack = 0; sum of coordinates = 1
    let mut lp_rows: Vec<SparseVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut v = SparseVec::zero(d + m);
        for (b, c) in row.iter().enumerate() {
            if c.is_one() {
                v.set(b, rat(1));
            }
        }
        v.set(d + k, rat(-1));
        lp_rows.push(v);
        rhs.push(Rat::zero());
    }
    lp_rows.push(SparseVec::from_entries(d + m, (0..d).map(|i| (i, rat(1)))));
    rhs.push(rat(1));
    let mut problem = LpProblem::nonneg(d + m, lp_rows, rhs);
    for b in 0..d {
        problem.free[b] = true;
    }

    let mut out: Vec<SparseMat> = Vec::new();
    for _ in 0..num_lp {
        let mut obj = vec![Rat::zero(); d + m];
        for item in obj.iter_mut().take(d) {
            *item = rat(rng.gen_range(-9..=9));
        }
        match lp_maximize(&problem, &obj)? {
            LpOutcome::Optimal { x, .. } => {
                let coords = SparseVec::from_dense(&x[..d]);
                out.push(ctx.matrix_from_coords(&coords)?);
            }
            LpOutcome::Unbounded => {
                return Err(Error::VerificationFailed(
                    "polytope LP claimed unbounded".into(),
                ));
            }
            LpOutcome::Infeasible(_) => {
                return Err(Error::VerificationFailed(
                    "polytope LP claimed infeasible".into(),
                ));
            }
        }
    }
    // mixtures of Kronecker powers and sampled vertices
    let perms = Permutation::all(ctx.n());
    let base: Vec<SparseMat> = perms
        .iter()
        .map(|w| kron_power(w, ctx.r()))
        .chain(out.iter().cloned())
        .collect();
    for _ in 0..num_mix {
        let mut total = Rat::zero();
        let mut mix = SparseMat::zero(ctx.size(), ctx.size());
        let mut parts: Vec<(usize, Rat)> = Vec::new();
        for _ in 0..3 {
            let idx = rng.gen_range(0..base.len());
            let wgt = rat(rng.gen_range(1..=5));
            total += &wgt;
            parts.push((idx, wgt));
        }
        for (idx, wgt) in parts {
            let c = wgt / total.clone();
            mix.add_scaled(&c, &base[idx]);
        }
        out.push(mix);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::frac;

    fn budget() -> Budget {
        Budget::default()
    }

    fn ctx(n: usize, r: usize) -> SpanContext {
        SpanContext::new(n, r, &budget()).unwrap()
    }

    #[test]
    fn linear_description_matches_span() {
        assert_eq!(section5_solution_space(2, 1, &budget()).unwrap().len(), 2);
        assert_eq!(section5_solution_space(3, 2, &budget()).unwrap().len(), 6);
        assert_eq!(section5_solution_space(4, 2, &budget()).unwrap().len(), 23);
    }

    #[test]
    fn sum_condition_equals_commutator_condition() {
        for (n, r) in [(2usize, 2usize), (3, 2)] {
            let size = n.pow(r as u32);
            let dim = size * size;
            let a = kernel_basis(&section5_rows(n, r, true), dim);
            let b = kernel_basis(&section5_rows(n, r, false), dim);
            assert!(subspace_equal(&a, &b, dim).unwrap(), "(n, r) = ({n}, {r})");
        }
    }

    #[test]
    fn uniform_matrix_is_stochastic_but_outside_the_span() {
        let c = ctx(4, 2);
        let mut j = SparseMat::zero(16, 16);
        for i in 0..16 {
            for k in 0..16 {
                j.set(i, k, frac(1, 16));
            }
        }
        assert!(is_doubly_stochastic(&j));
        assert!(!c.in_span(&j).unwrap());
        assert!(!omega_membership(&j, &c).unwrap());
    }

    #[test]
    fn counterexample_matrix_is_frozen() {
        let rows: [[i64; 16]; 16] = [
            [2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
            [0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0],
            [0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 1],
            [0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0],
            [0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2],
        ];
        let m = roberson_schmidt_matrix();
        for (i, row) in rows.iter().enumerate() {
            for (j, &num) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), frac(num, 5), "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn counterexample_separates_the_polytope_from_the_hull() {
        let c = ctx(4, 2);
        let m = roberson_schmidt_matrix();
        assert!(is_doubly_stochastic(&m));
        assert!(omega_membership(&m, &c).unwrap());
        assert!(positive_kron_diagonal(&m, 4, 2).is_none());
        match greedy_decompose(&m, &c).unwrap() {
            DecomposeOutcome::Stuck { step, .. } => assert_eq!(step, 0),
            DecomposeOutcome::Weights(_) => panic!("counterexample decomposed"),
        }
        match conv_hull_membership(&m, 4, 2).unwrap() {
            ConvexCertificate::Farkas(_) => {}
            ConvexCertificate::Weights(_) => panic!("counterexample in the hull"),
        }
    }

    #[test]
    fn kron_powers_are_in_the_hull_with_unit_weight() {
        let w = Permutation::from_word(vec![2, 3, 1]).unwrap();
        let m = kron_power(&w, 2);
        match conv_hull_membership(&m, 3, 2).unwrap() {
            ConvexCertificate::Weights(ws) => {
                assert_eq!(ws, vec![(w, rat(1))]);
            }
            ConvexCertificate::Farkas(_) => panic!("a Kronecker power left the hull"),
        }
    }

    #[test]
    fn kron_powers_are_vertices_and_midpoints_are_not() {
        let c = ctx(3, 2);
        let id = kron_power(&Permutation::identity(3), 2);
        let w = kron_power(&Permutation::from_word(vec![2, 1, 3]).unwrap(), 2);
        assert!(is_vertex(&id, &c).unwrap());
        assert!(is_vertex(&w, &c).unwrap());
        let mut mid = SparseMat::zero(9, 9);
        mid.add_scaled(&frac(1, 2), &id);
        mid.add_scaled(&frac(1, 2), &w);
        assert!(omega_membership(&mid, &c).unwrap());
        assert!(!is_vertex(&mid, &c).unwrap());
    }

    #[test]
    fn greedy_succeeds_on_samples_when_r_is_large() {
        // r >= n - 1: the polytope is exactly the hull
        for (n, r) in [(2usize, 1usize), (2, 2), (3, 2), (3, 3)] {
            let c = ctx(n, r);
            for m in sample_omega_points(&c, 7, 3, 6).unwrap() {
                match greedy_decompose(&m, &c).unwrap() {
                    DecomposeOutcome::Weights(ws) => {
                        let mut rebuilt = SparseMat::zero(c.size(), c.size());
                        for (w, cw) in ws {
                            rebuilt.add_scaled(&cw, &kron_power(&w, r));
                        }
                        assert_eq!(rebuilt, m);
                    }
                    DecomposeOutcome::Stuck { .. } => panic!("stuck at (n={n}, r={r})"),
                }
            }
        }
    }

    #[test]
    fn samples_are_members_and_mixtures_stay_inside() {
        let c = ctx(3, 2);
        let pts = sample_omega_points(&c, 11, 2, 4).unwrap();
        assert_eq!(pts.len(), 6);
        for m in &pts {
            assert!(omega_membership(m, &c).unwrap());
        }
        let mut mix = SparseMat::zero(9, 9);
        mix.add_scaled(&frac(1, 3), &pts[0]);
        mix.add_scaled(&frac(2, 3), &pts[1]);
        assert!(omega_membership(&mix, &c).unwrap());
    }

    #[test]
    fn vertex_enumeration_small_cases() {
        for (n, r, expected) in [(2usize, 1usize, 2usize), (3, 1, 6), (3, 2, 6)] {
            let c = ctx(n, r);
            let dd_pts = enumerate_vertices(&c).unwrap();
            let tr_pts = enumerate_vertices_by_traversal(&c).unwrap();
            assert_eq!(dd_pts.len(), expected, "(n, r) = ({n}, {r})");
            assert_eq!(dd_pts, tr_pts, "(n, r) = ({n}, {r})");
            for p in &dd_pts {
                assert!(is_doubly_stochastic(&p.matrix));
                assert!(is_vertex(&p.matrix, &c).unwrap());
                assert_eq!(c.matrix_from_coords(&p.coords).unwrap(), p.matrix);
            }
        }
    }

    #[test]
    fn hull_decider_agrees_with_greedy_on_hull_points() {
        // every point of the polytope at (3, 2) is a hull point
        let c = ctx(3, 2);
        for m in sample_omega_points(&c, 23, 2, 4).unwrap() {
            match conv_hull_membership(&m, 3, 2).unwrap() {
                ConvexCertificate::Weights(ws) => {
                    let mut rebuilt = SparseMat::zero(9, 9);
                    let mut total = Rat::zero();
                    for (w, cw) in ws {
                        assert!(cw.is_positive());
                        total += &cw;
                        rebuilt.add_scaled(&cw, &kron_power(&w, 2));
                    }
                    assert_eq!(total, rat(1));
                    assert_eq!(rebuilt, m);
                }
                ConvexCertificate::Farkas(_) => panic!("sampled point left the hull"),
            }
        }
    }
}
