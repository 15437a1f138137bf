//! Exact and Monte-Carlo computation of alpha-permanents.
//!
//! The alpha-permanent of an `n x n` complex matrix `M` is
//!
//! ```text
//! per_alpha(M) = sum over permutations s of alpha^{#cycles(s)} * prod_j M[j][s(j)]
//! ```
//!
//! so `per_1` is the permanent and `per_{-1}(-M)` the determinant. The crate
//! provides:
//!
//! - [`combinatorics`]: permutations, set and integer partitions, Stirling,
//!   Bell and generalised rencontres numbers.
//! - [`exact`]: permutation-sum, cofactor and block-determinant engines, plus
//!   evaluators for the decomposition, sum and product identities.
//! - [`special`]: closed forms for permutation, partition, 2x2-block and
//!   homogeneously symmetric matrices.
//! - [`immanants`]: symmetric-group characters, immanants and the expansion
//!   of `per_alpha` in the immanant basis.
//! - [`sampler`]: Pitman-Ewens random partitions and importance-sampling
//!   estimators.
//!
//! ```
//! use alphaperm::{exact, Matrix};
//! use num_complex::Complex64;
//!
//! let j3 = Matrix::ones(3);
//! let v = exact::per_alpha_def(&j3, Complex64::new(1.0, 0.0)).unwrap();
//! assert_eq!(v.re, 6.0);
//! ```

#![forbid(unsafe_code)]

pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod immanants;
pub mod io;
pub mod matrix;
pub mod numeric;
pub mod random;
pub mod sampler;
pub mod special;

pub use combinatorics::{IntegerPartition, Permutation, SetPartition};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use num_complex::Complex64;
