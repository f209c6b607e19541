use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "not weakly decreasing positive parts: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// The hook shape alpha(n, r) = (n - r, 1^r).
    pub fn alpha(n: usize, r: usize) -> Result<Self> {
        if n == 0 || r >= n {
            return Err(Error::InvalidInput(format!("alpha({n},{r}) undefined")));
        }
        let mut parts = vec![n - r];
        parts.extend(std::iter::repeat(1).take(r));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let rows = self.parts.len();
        let cols = self.first_part();
        let parts = (1..=cols)
            .map(|c| (0..rows).filter(|&i| self.parts[i] >= c).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order: self dominates other iff all prefix sums of self are
    /// at least those of other. Only defined between partitions of equal
    /// weight.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::SizeMismatch(format!(
                "dominance needs equal weights: {} vs {}",
                self.weight(),
                other.weight()
            )));
        }
        let k = self.parts.len().max(other.parts.len());
        let mut a = 0usize;
        let mut b = 0usize;
        for i in 0..k {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions of n, in lexicographically decreasing order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn go(rem: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                current.push(p);
                go(rem - p, p, current, out);
                current.pop();
            }
        }
        go(n, n, &mut current, &mut out);
        out
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula.
    pub fn num_standard_tableaux(&self) -> u64 {
        let n = self.weight() as u64;
        let conj = self.transpose();
        let mut numer: u128 = (1..=n as u128).product();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j) + (conj.parts[j] - i) - 1;
                numer /= hook as u128;
            }
        }
        numer as u64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|e| Error::InvalidInput(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(Partition::alpha(4, 2).unwrap(), lam(&[2, 1, 1]));
        assert_eq!(Partition::alpha(5, 0).unwrap(), lam(&[5]));
        assert!(Partition::alpha(4, 4).is_err());
    }

    #[test]
    fn transpose_involution() {
        for n in 1..=8 {
            for p in Partition::all(n) {
                assert_eq!(p.transpose().transpose(), p);
            }
        }
        assert_eq!(lam(&[3, 1]).transpose(), lam(&[2, 1, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert!(lam(&[3, 1]).dominates(&lam(&[2, 2])).unwrap());
        assert!(!lam(&[2, 2]).dominates(&lam(&[3, 1])).unwrap());
        assert!(lam(&[2, 2]).dominates(&lam(&[2, 2])).unwrap());
        assert!(lam(&[3, 1]).dominates(&lam(&[2, 1])).is_err());
    }

    #[test]
    fn transpose_reverses_dominance() {
        for a in Partition::all(6) {
            for b in Partition::all(6) {
                assert_eq!(
                    a.dominates(&b).unwrap(),
                    b.transpose().dominates(&a.transpose()).unwrap()
                );
            }
        }
    }

    #[test]
    fn alpha_dominance_threshold() {
        // lambda dominates alpha(n, r) iff lambda_1 >= n - r
        for n in 2..=7 {
            for r in 0..n - 1 {
                let alpha = Partition::alpha(n, r).unwrap();
                for p in Partition::all(n) {
                    assert_eq!(
                        p.dominates(&alpha).unwrap(),
                        p.first_part() >= n - r,
                        "{p:?} vs alpha({n},{r})"
                    );
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(10).len(), 42);
    }

    #[test]
    fn hook_length_examples() {
        assert_eq!(lam(&[2, 2]).num_standard_tableaux(), 2);
        assert_eq!(lam(&[4]).num_standard_tableaux(), 1);
        assert_eq!(lam(&[3, 2]).num_standard_tableaux(), 5);
        // sum of squares over shapes of n is n!
        let total: u64 = Partition::all(4)
            .iter()
            .map(|p| p.num_standard_tableaux().pow(2))
            .sum();
        assert_eq!(total, 24);
    }
}
