//! Exact Gaussian elimination over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, Rational};
use crate::tensor::KVector;
use crate::multi_index::MultiIndex;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from columns of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * pv;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Kernel basis: one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in rref.pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &c) in rref.pivots.iter().enumerate() {
                let a = rref.matrix.get(row, free);
                if !a.is_zero() {
                    v[c] = -a;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = rhs` with free variables set to 0.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, r) in rhs.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, r.clone());
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &c) in rref.pivots.iter().enumerate() {
            x[c] = rref.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec())
        .expect("equal-length vectors")
        .rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let cols: Vec<Vec<Rational>> = basis.to_vec();
    Matrix::from_columns(v.len(), &cols).solve(v).is_some()
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn rref_rows(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rref = Matrix::from_rows(vectors.to_vec())
        .expect("equal-length vectors")
        .rref();
    (0..rref.rank()).map(|i| rref.matrix.row(i).to_vec()).collect()
}

/// Square rational matrix read as the linear vector field `x -> Ax` or the
/// linear map `x -> Ax`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearEndo(Matrix);

impl LinearEndo {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::InvalidInput(format!(
                "linear endomorphism must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        Self(m)
    }

    /// The matrix unit `E_ij` (field `x_j d/dx_i`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, Rational::one());
        Self(m)
    }

    /// Row-major flattening of length `n^2`.
    pub fn from_flat(n: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), n * n);
        let rows = flat.chunks(n).map(<[Rational]>::to_vec).collect();
        Self(Matrix::from_rows(rows).expect("square"))
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.0.to_rows().into_iter().flatten().collect()
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo> {
        Ok(Self(self.0.mul(&other.0)?))
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &LinearEndo) -> Result<LinearEndo> {
        let ab = self.0.mul(&other.0)?;
        let ba = other.0.mul(&self.0)?;
        let flat: Vec<Rational> = ab
            .to_rows()
            .into_iter()
            .flatten()
            .zip(ba.to_rows().into_iter().flatten())
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_flat(self.dim(), &flat))
    }

    pub fn determinant(&self) -> Rational {
        self.0.determinant().expect("square")
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim()).fold(Rational::zero(), |acc, i| acc + self.entry(i, i))
    }

    /// The linear vector field `(Ax)^i d/dx^i`.
    pub fn vector_field(&self) -> KVector {
        let n = self.dim();
        let mut x = KVector::zero(n, 1);
        for i in 0..n {
            let mut comp = Polynomial::zero(n);
            for j in 0..n {
                let a = self.entry(i, j);
                if !a.is_zero() {
                    comp += &Polynomial::var(n, j).scale(a);
                }
            }
            x.add_term(MultiIndex::single(i), comp);
        }
        x
    }
}

impl fmt::Display for LinearEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .to_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
