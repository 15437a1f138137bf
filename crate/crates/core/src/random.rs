//! Seeded random inputs for identity checks and tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::combinatorics::SetPartition;
use crate::matrix::Matrix;

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Entries i.i.d. standard complex Gaussian.
pub fn complex_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(n, |_, _| complex_normal(rng))
}

/// Entries i.i.d. standard real Gaussian.
pub fn real_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(n, |_, _| Complex64::new(rng.sample(StandardNormal), 0.0))
}

/// Gram matrix `G^T G` of a real Gaussian square factor; symmetric positive
/// semi-definite (almost surely definite).
pub fn psd_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = real_matrix(n, rng);
    &g.transpose() * &g
}

/// Uniform random restricted growth string, i.e. a random set partition
/// (not uniform over partitions).
pub fn set_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SetPartition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    SetPartition::from_labels(&labels).expect("n >= 1")
}
