use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A permutation of {1..n} in one-line notation: `word[i]` is the image of
/// i+1. Composition follows (u o w)(i) = u(w(i)), matching left action on
/// basis vectors and P(u)P(w) = P(u o w).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "not a one-line word on 1..{n}: {word:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element w0 = (n, n-1, ..., 1).
    pub fn longest_element(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// The adjacent transposition s_i swapping i and i+1 (1 <= i < n).
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(i - 1, i);
        Permutation { word }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Image of j under the permutation, 1-based.
    pub fn apply(&self, j: usize) -> usize {
        self.word[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut word = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    /// (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(format!(
                "compose: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let word = (1..=self.n()).map(|i| self.apply(other.apply(i))).collect();
        Ok(Permutation { word })
    }

    /// The reverse word (w(n), ..., w(1)), which equals w composed with w0.
    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word in adjacent transpositions: w = s_{i1} s_{i2} ... s_{ik}
    /// with k = length(w). Returned as generator indices (1-based).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.word.clone();
        let mut rev = Vec::new();
        // peel right descents: w = w' s_i shortens w by the swap at (i, i+1)
        loop {
            let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
                break;
            };
            w.swap(i, i + 1);
            rev.push(i + 1);
        }
        rev.reverse();
        rev
    }

    /// Length of the longest strictly increasing subsequence, by patience
    /// sorting on the smallest-tail array.
    pub fn lis(&self) -> usize {
        let mut tails: Vec<usize> = Vec::new();
        for &v in &self.word {
            match tails.binary_search(&v) {
                Ok(_) => unreachable!("distinct values"),
                Err(pos) => {
                    if pos == tails.len() {
                        tails.push(v);
                    } else {
                        tails[pos] = v;
                    }
                }
            }
        }
        tails.len()
    }

    /// Length of the longest strictly decreasing subsequence.
    pub fn lds(&self) -> usize {
        self.reverse().lis()
    }

    /// Bruhat-Chevalley order, decided by the dot criterion: y <= w iff for
    /// every k the increasingly sorted prefix {y(1..k)} is entrywise <= the
    /// sorted prefix {w(1..k)}.
    pub fn bruhat_leq(&self, w: &Permutation) -> Result<bool> {
        if self.n() != w.n() {
            return Err(Error::SizeMismatch(format!(
                "bruhat: {} vs {}",
                self.n(),
                w.n()
            )));
        }
        let n = self.n();
        let mut py: Vec<usize> = Vec::with_capacity(n);
        let mut pw: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n {
            let iy = py.binary_search(&self.word[k]).unwrap_err();
            py.insert(iy, self.word[k]);
            let iw = pw.binary_search(&w.word[k]).unwrap_err();
            pw.insert(iw, w.word[k]);
            if py.iter().zip(pw.iter()).any(|(a, b)| a > b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All permutations of {1..n} in lexicographic order of the one-line word.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { word: word.clone() });
            if !next_permutation(&mut word) {
                break;
            }
        }
        out
    }
}

fn next_permutation(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: std::result::Result<Vec<usize>, _> =
            s.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let word = word.map_err(|e| Error::InvalidInput(format!("bad permutation {s:?}: {e}")))?;
        Permutation::from_word(word)
    }
}
