//! Dense matrices over an exact field, with reduced row echelon form as the
//! single canonicalization primitive. Everything else (rank, kernel, solving,
//! subspace arithmetic) reduces to it.

use super::scalar::Field;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize, like: &F) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![like.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &F) -> Self {
        let mut m = Matrix::zero(n, n, like);
        for i in 0..n {
            *m.at_mut(i, i) = like.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F> {
        self.row(r).to_vec()
    }

    pub fn all_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let like = self.sample();
        let mut t = Matrix::zero(self.cols, self.rows, &like);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    /// A representative element used to mint field constants.
    pub fn sample(&self) -> F {
        self.entries
            .first()
            .cloned()
            .expect("matrix must be nonempty to sample a field element")
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let like = self.sample();
        let mut out = Matrix::zero(self.rows, other.cols, &like);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a.mul(other.at(k, c));
                    *out.at_mut(r, c) = out.at(r, c).add(&add);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        let like = self.sample();
        (0..self.rows)
            .map(|r| {
                let mut acc = like.zero();
                for (c, vc) in v.iter().enumerate() {
                    if !self.at(r, c).is_zero() && !vc.is_zero() {
                        acc = acc.add(&self.at(r, c).mul(vc));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = self.entries[i].add(&other.entries[i]);
        }
        out
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = self.entries[i].sub(&other.entries[i]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// In-place reduced row echelon form; returns the pivot column per row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find a pivot in column c at or below row r
            let mut pr = None;
            for i in r..self.rows {
                if !self.at(i, c).is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != r {
                for k in 0..self.cols {
                    self.entries.swap(pr * self.cols + k, r * self.cols + k);
                }
            }
            let inv = self.at(r, c).inv().expect("pivot is nonzero");
            for k in c..self.cols {
                *self.at_mut(r, k) = self.at(r, k).mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for k in c..self.cols {
                        let sub = f.mul(self.at(r, k));
                        *self.at_mut(i, k) = self.at(i, k).sub(&sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : Mv = 0}`, as rows.
    pub fn kernel(&self) -> Matrix<F> {
        let like = self.sample();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![like.zero(); self.cols];
            v[fc] = like.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                // row ri reads: x_pc + sum over free columns = 0
                v[pc] = m.at(ri, fc).neg();
            }
            rows.push(v);
        }
        Matrix::from_rows(rows, self.cols)
    }

    /// Solves `x * self = target` for a single row vector `target`, treating
    /// the rows of `self` as spanning vectors. Returns the coefficients or
    /// `None` when `target` is outside the row space.
    pub fn solve_row(&self, target: &[F]) -> Option<Vec<F>> {
        assert_eq!(target.len(), self.cols);
        let like = self.sample();
        // augmented system on the transpose: self^T * x^T = target^T
        let mut aug = Matrix::zero(self.cols, self.rows + 1, &like);
        for (r, t) in target.iter().enumerate() {
            for c in 0..self.rows {
                *aug.at_mut(r, c) = self.at(c, r).clone();
            }
            *aug.at_mut(r, self.rows) = t.clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.rows) {
            return None; // inconsistent
        }
        let mut x = vec![like.zero(); self.rows];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.rows).clone();
        }
        Some(x)
    }
}
