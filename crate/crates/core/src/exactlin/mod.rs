//! Exact rational arithmetic, sparse linear algebra, and an exact-feasibility
//! linear program solver.

pub mod elim;
pub mod lp;
pub mod rational;
pub mod sparse;

pub use elim::{
    commutant_basis, kernel_basis, rank_of, rref, solve, subspace_equal, Echelon, TrackedEchelon,
};
pub use lp::{lp_feasible, lp_maximize, LpOutcome, LpProblem, LpSolution};
pub use rational::{frac, parse_rat, rat, Rat};
pub use sparse::{SparseMat, SparseVec};
