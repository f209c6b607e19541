use std::fmt;

use super::{Partition, Permutation};
use crate::{Error, Result};

/// A standard Young tableau: the cells of the shape filled by 1..n, strictly
/// increasing along rows and down columns.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let n = shape.weight();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &v in row {
                if v == 0 || v > n || seen[v] {
                    return Err(Error::InvalidInput(format!(
                        "entries must be exactly 1..{n}: {rows:?}"
                    )));
                }
                seen[v] = true;
            }
        }
        for row in &rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("rows not increasing: {rows:?}")));
            }
        }
        for i in 1..rows.len() {
            for j in 0..rows[i].len() {
                if rows[i - 1][j] >= rows[i][j] {
                    return Err(Error::InvalidInput(format!(
                        "columns not increasing: {rows:?}"
                    )));
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    /// The row-reading natural filling t^lambda: 1..n across rows, top to
    /// bottom.
    pub fn natural(shape: &Partition) -> Self {
        let mut rows = Vec::new();
        let mut next = 1;
        for &len in shape.parts() {
            rows.push((next..next + len).collect());
            next += len;
        }
        StandardTableau {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.shape.weight()
    }

    /// The permutation d(t): the unique y with y applied entrywise to t
    /// giving the natural tableau t^lambda. So y(t[c]) = t^lambda[c] for
    /// every cell c.
    pub fn perm(&self) -> Permutation {
        let n = self.n();
        let natural = StandardTableau::natural(&self.shape);
        let mut word = vec![0usize; n];
        for (row, nat_row) in self.rows.iter().zip(natural.rows.iter()) {
            for (&v, &target) in row.iter().zip(nat_row.iter()) {
                word[v - 1] = target;
            }
        }
        Permutation::from_word(word).expect("entrywise relabeling is a bijection")
    }

    /// All standard tableaux of the given shape, in lexicographic order of
    /// their row readings.
    pub fn enumerate(shape: &Partition) -> Vec<StandardTableau> {
        let n = shape.weight();
        let parts = shape.parts().to_vec();
        let mut fill: Vec<usize> = vec![0; parts.len()]; // cells filled per row
        let mut rows: Vec<Vec<usize>> = parts.iter().map(|&len| Vec::with_capacity(len)).collect();
        let mut out = Vec::new();
        fn go(
            v: usize,
            n: usize,
            parts: &[usize],
            fill: &mut Vec<usize>,
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<StandardTableau>,
            shape: &Partition,
        ) {
            if v > n {
                out.push(StandardTableau {
                    shape: shape.clone(),
                    rows: rows.clone(),
                });
                return;
            }
            for i in 0..parts.len() {
                let col = fill[i];
                if col >= parts[i] {
                    continue;
                }
                if i > 0 && fill[i - 1] <= col {
                    continue; // cell above not yet filled
                }
                rows[i].push(v);
                fill[i] += 1;
                go(v + 1, n, parts, fill, rows, out, shape);
                fill[i] -= 1;
                rows[i].pop();
            }
        }
        go(1, n, &parts, &mut fill, &mut rows, &mut out, shape);
        out
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{:?}", self.rows)
    }
}

/// Schensted row insertion: returns the insertion tableau P, the recording
/// tableau Q, and their common shape.
pub fn rsk(w: &Permutation) -> (StandardTableau, StandardTableau, Partition) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in w.word().iter().enumerate() {
        let mut carry = v;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![carry]);
                q.push(vec![step + 1]);
                break;
            }
            match p[row].iter().position(|&x| x > carry) {
                None => {
                    p[row].push(carry);
                    q[row].push(step + 1);
                    break;
                }
                Some(col) => {
                    std::mem::swap(&mut p[row][col], &mut carry);
                    row += 1;
                }
            }
        }
    }
    let shape = Partition::new(p.iter().map(|r| r.len()).collect()).expect("valid shape");
    let p = StandardTableau::new(p).expect("insertion tableau is standard");
    let q = StandardTableau::new(q).expect("recording tableau is standard");
    (p, q, shape)
}

/// Inverse of `rsk`: reconstructs the permutation from a same-shape pair.
pub fn rsk_inverse(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation> {
    if p.shape() != q.shape() {
        return Err(Error::SizeMismatch(format!(
            "rsk_inverse: shapes {:?} vs {:?}",
            p.shape(),
            q.shape()
        )));
    }
    let n = p.n();
    let mut prows = p.rows().to_vec();
    let mut word = vec![0usize; n];
    for step in (1..=n).rev() {
        // locate step in Q; it sits at the end of its row in the current shape
        let (mut row, _col) = q
            .rows()
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.iter().position(|&v| v == step).map(|j| (i, j)))
            .expect("entry present");
        let mut carry = prows[row].pop().expect("nonempty row");
        if prows[row].is_empty() {
            prows.remove(row);
        }
        // reverse bumping up through the rows
        while row > 0 {
            row -= 1;
            let col = prows[row]
                .iter()
                .rposition(|&x| x < carry)
                .expect("reverse bump target");
            std::mem::swap(&mut prows[row][col], &mut carry);
        }
        word[step - 1] = carry;
    }
    Permutation::from_word(word)
}
