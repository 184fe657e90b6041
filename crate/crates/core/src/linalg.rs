//! Dense matrices over a [`FieldTower`] and the row reduction used by the
//! code constructor and the decoder.

use crate::gf2m::{Felt, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Exactly one solution.
    Unique(Vec<Felt>),
    /// Consistent with a kernel of the given dimension; carries one
    /// particular solution (free variables set to zero).
    Many { particular: Vec<Felt>, kernel_dim: usize },
    Inconsistent,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Felt) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Felt>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix, field: &FieldTower) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] = field.add(out.data[idx], field.mul(a, other.get(k, c)));
                }
            }
        }
        out
    }

    /// `x A` for a row vector `x`.
    pub fn left_mul_vec(&self, x: &[Felt], field: &FieldTower) -> Vec<Felt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Felt::ZERO; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &h) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(a, h));
            }
        }
        out
    }

    /// `A x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[Felt], field: &FieldTower) -> Vec<Felt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Felt::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Only the first `limit` columns are eligible as pivots.
    fn reduce(&mut self, field: &FieldTower, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..limit.min(self.cols) {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = field.inv(self.get(lead, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = field.mul(self.get(lead, c), inv);
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = field.add(self.get(r, c), field.mul(factor, self.get(lead, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&mut self, field: &FieldTower) -> Vec<usize> {
        let cols = self.cols;
        self.reduce(field, cols)
    }

    pub fn rank(&self, field: &FieldTower) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row, in
    /// reduced row echelon form.
    pub fn nullspace(&self, field: &FieldTower) -> Matrix {
        let mut a = self.clone();
        let pivots = a.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, Felt::ONE);
            for (r, &p) in pivots.iter().enumerate() {
                // x_p = -a[r][f]; negation is the identity in characteristic 2.
                basis.set(i, p, a.get(r, f));
            }
        }
        basis.rref(field);
        basis
    }

    pub fn solve(&self, rhs: &[Felt], field: &FieldTower) -> Solution {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                rhs[r]
            }
        });
        let pivots = aug.reduce(field, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut x = vec![Felt::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        if pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Many {
                particular: x,
                kernel_dim: self.cols - pivots.len(),
            }
        }
    }
}
