//! Dense integer matrices over i128.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)]
                        .checked_add(a.checked_mul(other[(k, j)]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)];
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self[(i, a)] = -self[(i, a)];
        }
    }

    /// row[to] += q * row[from]
    pub fn add_row_mul(&mut self, to: usize, from: usize, q: i128) {
        for j in 0..self.cols {
            let v = self[(from, j)].checked_mul(q).expect("overflow");
            self[(to, j)] = self[(to, j)].checked_add(v).expect("overflow");
        }
    }

    /// col[to] += q * col[from]
    pub fn add_col_mul(&mut self, to: usize, from: usize, q: i128) {
        for i in 0..self.rows {
            let v = self[(i, from)].checked_mul(q).expect("overflow");
            self[(i, to)] = self[(i, to)].checked_add(v).expect("overflow");
        }
    }

    /// Determinant by fraction-free Bareiss elimination. Exact, for modest sizes.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[(i, k)] != 0) else {
                    return 0;
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(k, k)] * m[(i, j)] - m[(i, k)] * m[(k, j)];
                    m[(i, j)] = num / prev;
                }
                m[(i, k)] = 0;
            }
            prev = m[(k, k)];
        }
        sign * m[(n - 1, n - 1)]
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_det() {
        let a = IMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let b = IMat::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IMat::from_rows(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.det(), -2);
        assert_eq!(IMat::identity(5).det(), 1);
        assert_eq!(IMat::zeros(3, 3).det(), 0);
    }
}
