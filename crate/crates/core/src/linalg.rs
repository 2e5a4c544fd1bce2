//! Dense row reduction over a generic field, sized for desk-scale
//! verification work.
//!
//! Maps follow the row-vector convention `x -> x M`, matching right
//! multiplication by paths, so kernels are left null spaces.

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            let Some(found) =
                (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero())
            else {
                continue;
            };
            if found != pivot_row {
                for j in 0..self.cols {
                    let a = self.at(found, j);
                    let b = self.at(pivot_row, j);
                    self.set(found, j, b);
                    self.set(pivot_row, j, a);
                }
            }
            let inv = self.at(pivot_row, col).inverse();
            for j in 0..self.cols {
                let v = self.at(pivot_row, j) * inv;
                self.set(pivot_row, j, v);
            }
            for r in 0..self.rows {
                if r != pivot_row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col);
                    for j in 0..self.cols {
                        let v = self.at(r, j) - factor * self.at(pivot_row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of the right null space `{v : M v = 0}`, one vector per free
    /// column of the echelon form.
    pub fn right_null_space(&self) -> Vec<Vec<F>> {
        let mut reduced = self.clone();
        let pivots = reduced.row_reduce();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![F::zero(); self.cols];
            vec[free] = F::one();
            for (col, maybe_row) in pivot_set.iter().enumerate() {
                if let Some(row) = maybe_row {
                    vec[col] = F::zero() - reduced.at(*row, free);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Basis of the left null space `{x : x M = 0}` as rows.
    pub fn left_null_space(&self) -> Vec<Vec<F>> {
        self.transpose().right_null_space()
    }

    /// Row-vector application `x -> x M`.
    pub fn apply_left(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = out[j] + xi * self.at(i, j);
            }
        }
        out
    }
}

/// Rank of a list of row vectors.
pub fn rank_of_rows<F: Field>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::Zero;

    type F = Fp<32003>;

    fn f(v: u64) -> F {
        F::new(v)
    }

    #[test]
    fn rank_and_null_space() {
        // Rows (1,1,0), (0,1,1), (1,2,1): rank 2, left kernel (1,1,-1).
        let m = Matrix::from_rows(vec![
            vec![f(1), f(1), f(0)],
            vec![f(0), f(1), f(1)],
            vec![f(1), f(2), f(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let kernel = m.left_null_space();
        assert_eq!(kernel.len(), 1);
        for x in &kernel {
            assert!(m.apply_left(x).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn identity_has_trivial_kernels() {
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            m.set(i, i, f(1));
        }
        assert_eq!(m.rank(), 3);
        assert!(m.left_null_space().is_empty());
        assert!(m.right_null_space().is_empty());
    }

    #[test]
    fn null_space_vectors_annihilate() {
        let m = Matrix::from_rows(vec![
            vec![f(1), f(0), f(1), f(2)],
            vec![f(0), f(1), f(1), f(1)],
        ]);
        for v in m.right_null_space() {
            for i in 0..m.rows() {
                let dot = (0..m.cols())
                    .fold(F::new(0), |acc, j| acc + m.at(i, j) * v[j]);
                assert!(dot.is_zero());
            }
        }
        assert_eq!(m.right_null_space().len(), 2);
    }

    #[test]
    fn rank_of_row_lists() {
        assert_eq!(rank_of_rows::<F>(&[]), 0);
        assert_eq!(rank_of_rows(&[vec![f(0), f(0)]]), 0);
        assert_eq!(rank_of_rows(&[vec![f(1), f(2)], vec![f(2), f(4)]]), 1);
    }
}
