//! Exact linear algebra over Q.
//!
//! Dense row-major matrices of `Rat` with Gaussian elimination. Everything
//! here is exact; rank and nullspace answers are decisions, not estimates.
//! Matrices at desk scale (a few hundred rows) are small enough that plain
//! fraction arithmetic is fine.

use crate::scalar::Rat;
use num_traits::{One, Zero};

/// Dense matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let v = self.at(r, j).clone() * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).clone() - f.clone() * self.at(r, j);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Determinant by fraction elimination; panics unless square.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m.at(c, c);
            let inv = m.at(c, c).recip();
            for i in c + 1..n {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone() * &inv;
                    for j in c..n {
                        let v = m.at(i, j).clone() - f.clone() * m.at(c, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
        }
        det
    }

    /// Basis of the right nullspace { x : M x = 0 }.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves M x = b exactly; `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Incremental span of vectors in Q^n, kept in reduced echelon form.
///
/// Used for closure computations (ideal spans, image dimensions): vectors are
/// offered one at a time and the builder reports whether the span grew.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    dim: usize,
    /// rows in echelon form; `pivots[i]` is the pivot column of `rows[i]`
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current span; returns the residue.
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in p..self.dim {
                    let w = v[j].clone() - f.clone() * &row[j];
                    v[j] = w;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts `v` into the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut().skip(p) {
            *x *= &inv;
        }
        // keep rows sorted by pivot so reduction stays triangular
        let idx = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(idx, r);
        self.pivots.insert(idx, p);
        true
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.det(), rat(-2));
        let b = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.det(), rat(0));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = m(&[&[1, 2, 3]]);
        let ns = b.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rat = v
                .iter()
                .zip([rat(1), rat(2), rat(3)])
                .map(|(a, b)| a.clone() * b)
                .sum();
            assert!(s.is_zero());
        }
        assert!(m(&[&[1, 0], &[1, 0]]).solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn span_builder_tracks_rank() {
        let mut s = SpanBuilder::new(3);
        assert!(s.insert(vec![rat(1), rat(2), rat(3)]));
        assert!(!s.insert(vec![rat(2), rat(4), rat(6)]));
        assert!(s.insert(vec![rat(0), rat(1), rat(0)]));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[rat(1), rat(0), rat(3)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
    }
}
