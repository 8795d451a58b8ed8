//! Exact dense linear algebra over the rationals: reduced row echelon form,
//! null spaces and linear solves.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RationalMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    /// Reduces in place to reduced row echelon form and returns the pivot columns.
    /// Zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            if !inv.is_one() {
                for x in self.data[r][c..].iter_mut() {
                    *x *= &inv;
                }
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let factor = self.data[i][c].clone();
                for (x, p) in self.data[i][c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r);
        self.rows = r;
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, returned in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -m.data[row][f].clone();
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return basis;
        }
        let mut k = RationalMatrix::from_rows(self.cols, std::mem::take(&mut basis));
        k.rref();
        k.data
    }

    /// Solves `self * x = b`. Returns the particular solution with all free
    /// variables set to zero together with the kernel dimension, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
        assert_eq!(b.len(), self.rows);
        let rows = self
            .data
            .iter()
            .zip(b)
            .map(|(row, x)| {
                let mut r = row.clone();
                r.push(x.clone());
                r
            })
            .collect();
        let mut aug = RationalMatrix::from_rows(self.cols + 1, rows);
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[row][self.cols].clone();
        }
        Some((x, self.cols - pivots.len()))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Determinant by fraction-carrying elimination; panics unless square.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] * &inv;
                for j in c..n {
                    let sub = &factor * &m[c][j];
                    m[i][j] -= sub;
                }
            }
        }
        det
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
