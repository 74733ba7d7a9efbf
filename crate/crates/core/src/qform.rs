//! Exact symmetric bilinear forms: rank, signature and congruence.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// Inertia of a real quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize, null: usize) -> Self {
        Signature { pos, neg, null }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    /// Signature of the negated form.
    pub fn flip(&self) -> Signature {
        Signature { pos: self.neg, neg: self.pos, null: self.null }
    }

    pub fn is_definite(&self) -> bool {
        self.null == 0 && (self.pos == 0 || self.neg == 0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

/// A symmetric matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: Matrix,
}

impl QuadraticForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if let Some((i, j)) = matrix.first_asymmetry() {
            return Err(Error::NotSymmetric(i, j));
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        QuadraticForm::new(Matrix::from_rows(rows)?)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        QuadraticForm::new(Matrix::from_i64(rows)?)
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        QuadraticForm { matrix: Matrix::diagonal(entries) }
    }

    pub fn identity(dim: usize) -> Self {
        QuadraticForm { matrix: Matrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        self.matrix.rows()
    }

    pub fn neg(&self) -> QuadraticForm {
        QuadraticForm { matrix: self.matrix.scale(&rational::int(-1)) }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: &Rational, other: &QuadraticForm, b: &Rational) -> Result<QuadraticForm> {
        let matrix = self.matrix.scale(a).add(&other.matrix.scale(b))?;
        Ok(QuadraticForm { matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn det(&self) -> Rational {
        self.matrix.det()
    }

    pub fn signature(&self) -> Signature {
        signature(self)
    }
}

/// Inertia read off the characteristic polynomial. Every root is real, so
/// Descartes' count of sign variations is exact for the positive roots, and
/// the multiplicity of zero is the number of vanishing low coefficients.
pub fn signature(f: &QuadraticForm) -> Signature {
    let cp = f.matrix.charpoly();
    let null = cp.iter().take_while(|c| c.is_zero()).count();
    let mut pos = 0;
    let mut last = 0;
    for s in cp.iter().map(rational::sign).filter(|&s| s != 0) {
        if last != 0 && s != last {
            pos += 1;
        }
        last = s;
    }
    let sig = Signature { pos, neg: f.dim() - pos - null, null };
    debug_assert_eq!(sig.rank(), f.rank(), "charpoly rank disagrees with elimination");
    sig
}

/// `Aᵀ F A`.
pub fn congruence(f: &QuadraticForm, a: &Matrix) -> Result<QuadraticForm> {
    if a.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: a.dim() });
    }
    if a.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    let matrix = a.transpose().mul(&f.matrix)?.mul(a)?;
    Ok(QuadraticForm { matrix })
}
