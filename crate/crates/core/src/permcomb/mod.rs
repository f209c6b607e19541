//! Permutations, partitions, standard tableaux, RSK, subsequence statistics,
//! and the consecutive-cycle combinatorics behind the r = 1 basis.

mod partition;
mod perm;
mod tableau;

pub use partition::Partition;
pub use perm::Permutation;
pub use tableau::{rsk, rsk_inverse, StandardTableau};

use std::collections::BTreeSet;

/// All consecutive cycles in the symmetric group on n letters: the identity,
/// plus for every interval [i, i+k-1] with k >= 2 the cycle rotating the
/// interval by one step and its inverse. The transposition case k = 2 is its
/// own inverse, so the total count is n^2 - 2n + 2.
pub fn consecutive_cycles(n: usize) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    out.insert(Permutation::identity(n));
    for k in 2..=n {
        for i in 1..=(n - k + 1) {
            let fwd = interval_cycle(n, i, k);
            out.insert(fwd.inverse());
            out.insert(fwd);
        }
    }
    out
}

/// The cycle (i, i+1, ..., i+k-1): each element of the interval maps to its
/// successor, the last wrapping around to i.
fn interval_cycle(n: usize, i: usize, k: usize) -> Permutation {
    let mut word: Vec<usize> = (1..=n).collect();
    for m in 0..k {
        let src = i + m;
        let dst = if m + 1 == k { i } else { src + 1 };
        word[src - 1] = dst;
    }
    Permutation::from_word(word).expect("interval cycle is a bijection")
}

/// The n x n slot-filling grid: entry (k, j) places the value k in slot j and
/// fills the remaining slots with the other values in increasing order.
/// Indices are 1-based in the combinatorial description; the returned grid is
/// row-major with `grid[k-1][j-1]`.
pub fn grid(n: usize) -> Vec<Vec<Permutation>> {
    let mut rows = Vec::with_capacity(n);
    for k in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let mut word = vec![0usize; n];
            word[j - 1] = k;
            let mut rest = (1..=n).filter(|&v| v != k);
            for slot in word.iter_mut() {
                if *slot == 0 {
                    *slot = rest.next().expect("exactly n-1 remaining values");
                }
            }
            row.push(Permutation::from_word(word).expect("grid entry is a bijection"));
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consecutive_cycle_counts() {
        for n in 2..=10 {
            assert_eq!(consecutive_cycles(n).len(), n * n - 2 * n + 2, "n={n}");
        }
    }

    #[test]
    fn consecutive_cycles_n2_is_all_of_s2() {
        let cc = consecutive_cycles(2);
        assert_eq!(cc.len(), 2);
        assert!(cc.contains(&Permutation::identity(2)));
        assert!(cc.contains(&Permutation::from_word(vec![2, 1]).unwrap()));
    }

    #[test]
    fn consecutive_cycles_match_lis_filter() {
        for n in 2..=7 {
            let filtered: BTreeSet<Permutation> = Permutation::all(n)
                .into_iter()
                .filter(|w| w.lis() >= n - 1)
                .collect();
            assert_eq!(consecutive_cycles(n), filtered, "n={n}");
        }
    }

    #[test]
    fn consecutive_cycles_n5_all_have_long_lis() {
        let cc = consecutive_cycles(5);
        assert_eq!(cc.len(), 17);
        assert!(cc.iter().all(|w| w.lis() >= 4));
    }

    #[test]
    fn grid_examples_n4() {
        let g = grid(4);
        // value 1 in slot 4 gives 2341, the 4-cycle
        assert_eq!(g[0][3], Permutation::from_word(vec![2, 3, 4, 1]).unwrap());
        // value 3 in slot 1 gives 3124
        assert_eq!(g[2][0], Permutation::from_word(vec![3, 1, 2, 4]).unwrap());
    }

    #[test]
    fn grid_diagonal_is_identity() {
        for n in 2..=6 {
            let g = grid(n);
            for k in 0..n {
                assert_eq!(g[k][k], Permutation::identity(n));
            }
        }
    }

    #[test]
    fn grid_super_equals_sub_diagonal() {
        for n in 2..=6 {
            let g = grid(n);
            for k in 0..n - 1 {
                assert_eq!(g[k][k + 1], g[k + 1][k]);
            }
        }
    }

    #[test]
    fn grid_deduplicates_to_consecutive_cycles() {
        for n in 2..=8 {
            let g = grid(n);
            let dedup: BTreeSet<Permutation> = g.into_iter().flatten().collect();
            assert_eq!(dedup, consecutive_cycles(n), "n={n}");
        }
    }

    #[test]
    fn grid_restricts() {
        // deleting the last row and column of grid(n) gives grid(n-1) with
        // each entry extended by the fixed point n
        for n in 3..=7 {
            let g = grid(n);
            let h = grid(n - 1);
            for k in 0..n - 1 {
                for j in 0..n - 1 {
                    let mut word = h[k][j].word().to_vec();
                    word.push(n);
                    assert_eq!(g[k][j], Permutation::from_word(word).unwrap());
                }
            }
        }
    }
}
