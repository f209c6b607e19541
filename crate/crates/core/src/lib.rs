//! Exact (integer/rational) machinery for the linear span of Kronecker powers
//! of permutation matrices: subsequence-indexed bases, partition-algebra
//! centralizers, Kazhdan-Lusztig annihilator bases, and the convex geometry of
//! the doubly stochastic elements of the span.

pub mod exactlin;
pub mod hecke;
pub mod partalg;
pub mod permcomb;
pub mod report;
pub mod stochastic;
pub mod tensorrep;

pub use exactlin::rational::Rat;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps the cost of span computations, which grow as `n^(2r) * n!`.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_weight: u128,
}

impl Default for Budget {
    fn default() -> Self {
        // admits n <= 6 with r <= 2, and n <= 5 with r <= 3
        Budget {
            max_weight: 4_000_000,
        }
    }
}

impl Budget {
    pub fn check(&self, n: usize, r: usize) -> Result<()> {
        let cells = (n as u128).checked_pow(2 * r as u32);
        let fact = (1..=n as u128).try_fold(1u128, |a, k| a.checked_mul(k));
        let weight = cells.zip(fact).and_then(|(c, f)| c.checked_mul(f));
        match weight {
            Some(w) if w <= self.max_weight => Ok(()),
            _ => Err(Error::BudgetExceeded(format!(
                "n={n}, r={r} exceeds budget {}",
                self.max_weight
            ))),
        }
    }
}
