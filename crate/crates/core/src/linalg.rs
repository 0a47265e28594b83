//! Dense matrices over a finite field given as a [`FiniteRing`].
//!
//! Vectors are rows; a matrix acts on the right of a row vector. All routines
//! take the field explicitly and assume (without rechecking) that it is one.

use crate::ring::{Elem, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FiniteRing, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        FieldMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FieldMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &FieldMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        FieldMatrix { rows: self.rows, cols, data }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut b = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                b.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        b
    }

    pub fn mul(&self, field: &FiniteRing, other: &FieldMatrix) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0;
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Self {
        FieldMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduces in place to reduced row echelon form and drops zero rows.
    /// Returns the pivot columns.
    pub fn rref(&mut self, field: &FiniteRing) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = field.inverse(self.get(lead, c)).expect("nonzero field element");
            for k in 0..self.cols {
                let v = field.mul(inv, self.get(lead, k));
                self.set(lead, k, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, c);
                if f == 0 {
                    continue;
                }
                for k in 0..self.cols {
                    let v = field.sub(self.get(r, k), field.mul(f, self.get(lead, k)));
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        self.rows = lead;
        self.data.truncate(lead * self.cols);
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self, field: &FiniteRing) -> usize {
        let mut m = self.clone();
        m.rref(field).len()
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self, field: &FiniteRing) -> Option<FieldMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&FieldMatrix::identity(field, n));
        let pivots = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Basis (as rows, in reduced echelon form) of `{x : self * x^T = 0}`.
    pub fn right_kernel(&self, field: &FiniteRing) -> FieldMatrix {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, field.one());
            for (r, &p) in pivots.iter().enumerate() {
                basis.set(i, p, field.neg(m.get(r, f)));
            }
        }
        basis.rref(field);
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_over_f3() {
        let f = FiniteRing::gf(3, 1).unwrap();
        let m = FieldMatrix::from_rows(2, 2, vec![1, 2, 0, 1]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), FieldMatrix::identity(&f, 2));
        let singular = FieldMatrix::from_rows(2, 2, vec![1, 2, 2, 1]);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FiniteRing::gf(2, 1).unwrap();
        let m = FieldMatrix::from_rows(2, 4, vec![1, 0, 1, 1, 0, 1, 1, 0]);
        let k = m.right_kernel(&f);
        assert_eq!(k.rows(), 2);
        assert!(m.mul(&f, &k.transpose()).is_zero());
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let f = FiniteRing::gf(2, 1).unwrap();
        let mut m = FieldMatrix::from_rows(3, 3, vec![1, 1, 0, 0, 1, 1, 1, 0, 1]);
        assert_eq!(m.rref(&f), vec![0, 1]);
        assert_eq!(m.rows(), 2);
    }
}
