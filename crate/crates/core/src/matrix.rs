use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Permutation, SetPartition};
use crate::error::{Error, Result};

/// Dense square complex matrix, row-major, with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "{} entries cannot form a {n}x{n} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / n + 1,
                pos % n + 1
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(n, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} in a {n}-row matrix",
                bad.len()
            )));
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// All-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| Complex64::new(1.0, 0.0))
    }

    /// `P[i][sigma(i)] = 1`.
    pub fn permutation(sigma: &Permutation) -> Self {
        Self::from_fn(sigma.len(), |i, j| {
            Complex64::new(if sigma.apply(i) == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// 0/1 matrix with ones exactly where `i` and `j` share a block.
    pub fn partition(pi: &SetPartition) -> Self {
        let labels = pi.labels();
        Self::from_fn(pi.n(), |i, j| {
            Complex64::new(if labels[i] == labels[j] { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `M[b]`: rows and columns restricted to `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Matrix {
        let k = indices.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                data.push(self[(i, j)]);
            }
        }
        Matrix { n: k, data }
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// `P^T M P` for the permutation matrix `P` of `sigma`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Matrix {
        let mut inverse = vec![0; sigma.len()];
        for (i, &x) in sigma.images().iter().enumerate() {
            inverse[x] = i;
        }
        Self::from_fn(self.n, |i, j| self[(inverse[i], inverse[j])])
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).norm() <= tol))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_same_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_dim(other)?;
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_dim(other)?;
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).map(|k| self[(i, k)] * other[(k, j)]).sum()
        }))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    /// Panics on a dimension mismatch; see [`Matrix::try_add`].
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on a dimension mismatch; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|z| z.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
