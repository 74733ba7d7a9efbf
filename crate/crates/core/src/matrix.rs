//! Dense square matrices over the rationals with fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let dim = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { rows: dim, row, len: r.len() });
            }
        }
        Ok(Matrix { dim, rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::diagonal((0..dim).map(|_| Rational::one()).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Matrix { dim, rows: vec![vec![Rational::zero(); dim]; dim] }
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        let dim = entries.len();
        let mut m = Matrix::zero(dim);
        for (i, e) in entries.into_iter().enumerate() {
            m.rows[i][i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.rows[j][i].clone()).collect())
            .collect();
        Matrix { dim: self.dim, rows }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.rows[i][j] != self.rows[j][i])
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Matrix { dim: self.dim, rows })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * c).collect())
            .collect();
        Matrix { dim: self.dim, rows }
    }

    /// Each row multiplied by the lcm of its denominators, and the product of
    /// those multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let l = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                total *= &l;
                r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect();
        (rows, total)
    }

    /// Fraction-free (Bareiss) elimination with row pivoting. Returns the rank
    /// and the signed determinant of the leading pivot block.
    fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
        let n = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut negate = false;
        for col in 0..cols {
            if rank == n {
                break;
            }
            let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                negate = !negate;
            }
            for i in rank + 1..n {
                for j in col + 1..cols {
                    let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        let det = if rank == n { if negate { -prev } else { prev } } else { BigInt::zero() };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        Matrix::bareiss(self.integer_rows().0).0
    }

    pub fn det(&self) -> Rational {
        let (rows, scale) = self.integer_rows();
        let (_, det) = Matrix::bareiss(rows);
        Rational::new(det, scale)
    }

    /// Characteristic polynomial `det(x I - A)`, lowest degree first, computed by
    /// similarity reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut h = self.rows.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t = h[m][m - 1].clone();
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] / &t;
                let (top, bottom) = h.split_at_mut(i);
                for (x, y) in bottom[0].iter_mut().zip(&top[m]) {
                    *x -= &u * y;
                }
                for row in h.iter_mut() {
                    let d = &u * &row[i];
                    row[m] += d;
                }
            }
        }
        let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for m in 1..=n {
            // (x - h[m-1][m-1]) * p[m-1]
            let prev = &p[m - 1];
            let mut next = vec![Rational::zero(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &h[m - 1][m - 1];
            }
            let mut t = Rational::one();
            for i in (1..m).rev() {
                t *= &h[i][i - 1];
                if t.is_zero() {
                    break;
                }
                let f = &h[i - 1][m - 1] * &t;
                for (k, c) in p[i - 1].iter().enumerate() {
                    next[k] -= &f * c;
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}
