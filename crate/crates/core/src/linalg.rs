//! Dense exact linear algebra over the rationals: reduced row echelon form,
//! kernels, affine solve, rank and small determinants. Sizes here are tiny
//! (dozens of rows/columns), so plain Gaussian elimination is enough.

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{rat_int, Rat};

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![vec![rat_int(0); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        debug_assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::new(n, n);
        for i in 0..n {
            m.data[i][i] = rat_int(1);
        }
        m
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// column of each pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].clone();
            for x in self.data[row].iter_mut() {
                *x = &*x / &inv;
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let f = self.data[r][col].clone();
                    for c in 0..self.cols {
                        let t = &self.data[row][c] * &f;
                        self.data[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = Some(prow);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![rat_int(0); self.cols];
            v[free] = rat_int(1);
            for (col, prow) in pivot_set.iter().enumerate() {
                if let Some(prow) = prow {
                    v[col] = -&m.data[*prow][free];
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b`. Returns the canonical particular solution (free
    /// variables set to zero) or `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut aug = Mat::new(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r][c] = self.data[r][c].clone();
            }
            aug.data[r][self.cols] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![rat_int(0); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.data[prow][self.cols].clone();
        }
        Some(x)
    }

    /// Solve `M x = b` for several right-hand sides at once (columns of `bs`).
    pub fn solve_many(&self, bs: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
        bs.iter().map(|b| self.solve(b)).collect()
    }

    /// Determinant by fraction-friendly Gaussian elimination.
    pub fn det(&self) -> Result<Rat, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = rat_int(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(rat_int(0));
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let inv = m[col][col].clone();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &inv;
                for c in col..n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn mat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.data
            .iter()
            .map(|row| dot(row, v))
            .collect()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = rat_int(0);
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    Mat::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn kernel_of_single_relation() {
        let m = Mat::from_rows(vec![vec![rat_int(1), rat_int(1)]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![rat_int(-1), rat_int(1)]]);
        for v in &k {
            assert!(m.mat_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Mat::identity(2).kernel().is_empty());
    }

    #[test]
    fn rank_nullity() {
        let m = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ]);
        assert_eq!(m.rank() + m.kernel().len(), m.cols);
        for v in m.kernel() {
            assert!(m.mat_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ]);
        let x = m.solve(&[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let sing = Mat::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ]);
        assert!(sing.solve(&[rat_int(0), rat_int(1)]).is_none());
        assert!(sing.solve(&[rat_int(1), rat_int(2)]).is_some());
    }

    #[test]
    fn determinant() {
        let m = Mat::from_rows(vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(7), rat_int(4)],
        ]);
        assert_eq!(m.det().unwrap(), rat_int(2));
        let sw = Mat::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ]);
        assert_eq!(sw.det().unwrap(), rat_int(-1));
    }

    #[test]
    fn affine_rank_of_segment_and_triangle() {
        let seg = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(2), rat_int(2)],
        ];
        assert_eq!(affine_rank(&seg), 1);
        let tri = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(affine_rank(&tri), 2);
    }
}
