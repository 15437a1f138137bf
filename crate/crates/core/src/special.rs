//! Closed forms for structured matrices. Each has a `materialize` (or
//! [`Matrix`] constructor) counterpart so it can be compared with the
//! generic engines.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    falling_factorial, rencontres_c, rising_factorial, Permutation, SetPartition,
};
use crate::error::{guard, Error, Result};
use crate::matrix::Matrix;
use crate::numeric::c;

/// Largest dimension accepted by [`per_alpha_homsym`].
pub const MAX_HOMSYM_N: usize = 10;

/// `per_alpha(P_sigma) = alpha^{#cycles(sigma)}`.
pub fn per_alpha_permutation_matrix(sigma: &Permutation, alpha: Complex64) -> Complex64 {
    alpha.powu(sigma.cycle_count() as u32)
}

/// `per_alpha` of the 0/1 co-membership matrix of `pi`: the product of
/// `alpha^{up |b|}` over blocks.
pub fn per_alpha_partition_matrix(pi: &SetPartition, alpha: Complex64) -> Complex64 {
    pi.blocks()
        .iter()
        .map(|b| rising_factorial(alpha, b.len()))
        .product()
}

/// The `(n1 + n2)`-square matrix with constant blocks
/// `[[a11, a12], [a21, a22]]` of sizes `n1` and `n2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
    pub n1: usize,
    pub n2: usize,
}

impl BlockSpec {
    pub fn new([a11, a12, a21, a22]: [Complex64; 4], n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidArgument(
                "block sizes must be positive".into(),
            ));
        }
        Ok(Self {
            a11,
            a12,
            a21,
            a22,
            n1,
            n2,
        })
    }

    pub fn dim(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn materialize(&self) -> Matrix {
        let n1 = self.n1;
        Matrix::from_fn(self.dim(), |i, j| match (i < n1, j < n1) {
            (true, true) => self.a11,
            (true, false) => self.a12,
            (false, true) => self.a21,
            (false, false) => self.a22,
        })
    }
}

/// Closed form for the two-block matrix:
///
/// ```text
/// a11^n1 a22^n2 alpha^{up n2} sum_{j=0}^{min(n1,n2)} (alpha+j)^{up (n1-j)} n1^{down j} n2^{down j} rho^j / j!
/// ```
///
/// with `rho = a12 a21 / (a11 a22)`. The factor `(alpha+j)^{up (n1-j)}` is
/// `alpha^{up n1} / alpha^{up j}` after cancellation, so the sum stays finite
/// for every `alpha`.
pub fn per_alpha_block2(block: &BlockSpec, alpha: Complex64) -> Result<Complex64> {
    let zero = c(0.0);
    if block.a11 == zero || block.a22 == zero {
        return Err(Error::Unsupported(
            "block closed form needs non-zero diagonal blocks".into(),
        ));
    }
    let (n1, n2) = (block.n1, block.n2);
    let rho = block.a12 * block.a21 / (block.a11 * block.a22);
    let mut sum = zero;
    let mut rho_pow = c(1.0);
    let mut j_factorial = 1.0;
    for j in 0..=n1.min(n2) {
        if j > 0 {
            rho_pow *= rho;
            j_factorial *= j as f64;
        }
        let count = falling_factorial(n1 as f64, j) * falling_factorial(n2 as f64, j);
        sum += rising_factorial(alpha + j as f64, n1 - j) * rho_pow * (count / j_factorial);
    }
    Ok(block.a11.powu(n1 as u32) * block.a22.powu(n2 as u32) * rising_factorial(alpha, n2) * sum)
}

/// `n x n` matrix with `a` on the diagonal and `b` elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomSymSpec {
    pub a: Complex64,
    pub b: Complex64,
    pub n: usize,
}

impl HomSymSpec {
    pub fn new(a: Complex64, b: Complex64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(Self { a, b, n })
    }

    pub fn materialize(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| if i == j { self.a } else { self.b })
    }
}

/// `a^n sum_{k,l} c(n,k,l) alpha^k d^{n-l}` with `d = b/a`, where `c(n,k,l)`
/// counts permutations with `k` cycles and `l` fixed points.
pub fn per_alpha_homsym(hom: &HomSymSpec, alpha: Complex64) -> Result<Complex64> {
    let n = hom.n;
    guard("homogeneously symmetric closed form", n, MAX_HOMSYM_N)?;
    if hom.a == c(0.0) {
        return Err(Error::Unsupported(
            "diagonal value is zero; the ratio b/a is undefined".into(),
        ));
    }
    let d = hom.b / hom.a;
    let mut sum = c(0.0);
    for k in 1..=n {
        for l in 0..=n {
            let count = rencontres_c(n, k, l)
                .to_f64()
                .expect("counts up to 10! fit in f64");
            if count != 0.0 {
                sum += alpha.powu(k as u32) * d.powu((n - l) as u32) * count;
            }
        }
    }
    Ok(hom.a.powu(n as u32) * sum)
}
