//! Smith normal form over the integers.

use super::AlgebraError;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix, AlgebraError> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = a.checked_mul(o[(k, j)]).and_then(|p| p.checked_add(out[(i, j)]));
                    out[(i, j)] = v.ok_or(AlgebraError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> Result<i128, AlgebraError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(AlgebraError::Overflow)?;
                    a[i][j] = v / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<(), AlgebraError> {
        for j in 0..self.cols {
            let v = self[(src, j)].checked_mul(q).and_then(|p| p.checked_add(self[(dst, j)]));
            self[(dst, j)] = v.ok_or(AlgebraError::Overflow)?;
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<(), AlgebraError> {
        for i in 0..self.rows {
            let v = self[(i, src)].checked_mul(q).and_then(|p| p.checked_add(self[(i, dst)]));
            self[(i, dst)] = v.ok_or(AlgebraError::Overflow)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `u * m * v = d`, with `v_inv` the inverse of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols)).take_while(|&i| self.d[(i, i)] != 0).count()
    }

    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.d[(i, i)]).collect()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<(), AlgebraError> {
        self.a.add_row(dst, src, q)?;
        self.u.add_row(dst, src, q)
    }

    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<(), AlgebraError> {
        self.a.add_col(dst, src, q)?;
        self.v.add_col(dst, src, q)?;
        self.v_inv.add_row(src, dst, q.checked_neg().ok_or(AlgebraError::Overflow)?)
    }
}

/// Smith normal form with deterministic pivoting: the pivot is the entry of
/// least nonzero absolute value in the remaining block, first in row-major
/// order.
pub fn snf(m: &Matrix) -> Result<Snf, AlgebraError> {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work { a: m.clone(), u: Matrix::identity(r), v: Matrix::identity(c), v_inv: Matrix::identity(c) };
    for t in 0..r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = w.a[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let p = w.a[(t, t)];
            let mut dirty = false;
            for i in t + 1..r {
                let q = w.a[(i, t)] / p;
                if q != 0 {
                    w.add_row(i, t, -q)?;
                }
                dirty |= w.a[(i, t)] != 0;
            }
            for j in t + 1..c {
                let q = w.a[(t, j)] / p;
                if q != 0 {
                    w.add_col(j, t, -q)?;
                }
                dirty |= w.a[(t, j)] != 0;
            }
            if dirty {
                // bring the smallest remainder in row t or column t to the pivot
                let mut best = (t, t, p.abs());
                for i in t + 1..r {
                    let x = w.a[(i, t)].abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..c {
                    let x = w.a[(t, j)].abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                } else if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| w.a[(i, j)] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1)?,
                None => break,
            }
        }
        if w.a[(t, t)] < 0 {
            w.a.negate_row(t);
            w.u.negate_row(t);
        }
    }
    Ok(Snf { u: w.u, d: w.a, v: w.v, v_inv: w.v_inv })
}
