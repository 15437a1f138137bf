//! Pitman–Ewens random set partitions and importance-sampling estimators of
//! the alpha-permanent.
//!
//! The partition estimator samples `pi` from a Pitman–Ewens law and averages
//! `(-alpha)^{down #pi} det(M . pi) / P(pi)`, whose expectation is
//! `(-1)^n per_alpha(M)`. For `alpha = -k` and a proposal restricted to at
//! most `k` blocks, every weight of a positive semi-definite matrix is
//! non-negative, which is where this estimator is useful.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cycle_count_of, factorial_u64, falling_factorial, mask_of, rising_factorial, SetPartition,
};
use crate::error::{Error, Result};
use crate::exact::{det, negative_integer};
use crate::matrix::Matrix;

/// Tolerance used when deciding whether `-theta / a` is an integer.
const INTEGER_TOL: f64 = 1e-9;
/// Block determinants are cached by bitmask up to this dimension.
const MAX_CACHED_N: usize = 20;

/// Parameters `(a, theta)` of the two-parameter Ewens law.
///
/// Admissible when `0 <= a < 1` and `theta > -a`, or when `a < 0` and
/// `theta = m * (-a)` for an integer `m >= 1`; in the second case partitions
/// have at most `m` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PitmanEwensParams {
    a: f64,
    theta: f64,
    max_blocks: Option<usize>,
}

impl PitmanEwensParams {
    pub fn new(a: f64, theta: f64) -> Result<Self> {
        let bad = Error::InadmissibleParams { a, theta };
        if !a.is_finite() || !theta.is_finite() {
            return Err(bad);
        }
        if (0.0..1.0).contains(&a) {
            return if theta > -a {
                Ok(Self {
                    a,
                    theta,
                    max_blocks: None,
                })
            } else {
                Err(bad)
            };
        }
        if a < 0.0 {
            let m = -theta / a;
            let rounded = m.round();
            if rounded >= 1.0 && (m - rounded).abs() <= INTEGER_TOL * rounded {
                return Ok(Self {
                    a,
                    // Snap so that theta + m a vanishes exactly.
                    theta: -rounded * a,
                    max_blocks: Some(rounded as usize),
                });
            }
        }
        Err(bad)
    }

    /// Ewens law with strength `theta` (`a = 0`).
    pub fn ewens(theta: f64) -> Result<Self> {
        Self::new(0.0, theta)
    }

    /// `a = -1`, `theta = k`: partitions with at most `k` blocks.
    pub fn restricted(k: usize) -> Result<Self> {
        Self::new(-1.0, k as f64)
    }

    /// The restricted law for `alpha = -k`, Ewens(0, 1) otherwise.
    pub fn default_for(alpha: f64) -> Self {
        match negative_integer(Complex64::new(alpha, 0.0)) {
            Some(k) => Self::restricted(k),
            None => Self::ewens(1.0),
        }
        .expect("default parameters are admissible")
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Block-count bound of the restricted regime.
    pub fn max_blocks(&self) -> Option<usize> {
        self.max_blocks
    }
}

/// Sequential seating: element `i + 1` joins block `b` with weight
/// `|b| - a` or opens a new block with weight `theta + a K`, out of `i + theta`.
pub fn pe_sample<R: Rng + ?Sized>(
    n: usize,
    params: &PitmanEwensParams,
    rng: &mut R,
) -> Result<SetPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (a, theta) = (params.a, params.theta);
    let mut labels = Vec::with_capacity(n);
    let mut sizes: Vec<usize> = Vec::new();
    labels.push(0);
    sizes.push(1);
    for i in 1..n {
        let open = if params.max_blocks == Some(sizes.len()) {
            0.0
        } else {
            theta + a * sizes.len() as f64
        };
        let mut u = rng.gen::<f64>() * (i as f64 + theta);
        let mut choice = None;
        for (b, &size) in sizes.iter().enumerate() {
            u -= size as f64 - a;
            if u < 0.0 {
                choice = Some(b);
                break;
            }
        }
        // Rounding can leave a sliver past the last block; it goes to the new
        // block only when that has positive weight.
        let label = match choice {
            Some(b) => b,
            None if open > 0.0 => sizes.len(),
            None => sizes.len() - 1,
        };
        if label == sizes.len() {
            sizes.push(0);
        }
        sizes[label] += 1;
        labels.push(label);
    }
    SetPartition::from_labels(&labels)
}

/// Probability of `pi` under the Pitman–Ewens law:
/// `prod_{i=1}^{K-1} (theta + i a) / (theta + 1)^{up (n-1)} * prod_b (1 - a)^{up (|b| - 1)}`.
pub fn pe_prob(pi: &SetPartition, params: &PitmanEwensParams) -> f64 {
    let (a, theta) = (params.a, params.theta);
    if params.max_blocks.is_some_and(|m| pi.block_count() > m) {
        return 0.0;
    }
    let opens: f64 = (1..pi.block_count())
        .map(|i| theta + i as f64 * a)
        .product();
    let joins: f64 = pi
        .blocks()
        .iter()
        .map(|b| rising_factorial(1.0 - a, b.len() - 1))
        .product();
    opens * joins / rising_factorial(theta + 1.0, pi.n() - 1)
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: f64,
    /// Sample standard deviation of the weights (divisor `N - 1`) over `sqrt(N)`.
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub target_alpha: f64,
    /// Proposal law; `None` for the uniform-permutation estimator.
    pub params: Option<PitmanEwensParams>,
}

impl EstimateReport {
    /// `stderr / |estimate|`; infinite for a zero estimate with spread.
    pub fn relative_stderr(&self) -> f64 {
        if self.stderr == 0.0 {
            0.0
        } else {
            self.stderr / self.estimate.abs()
        }
    }
}

fn check_inputs(m: &Matrix, n_samples: usize) -> Result<()> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(
            "at least two samples are needed for a standard error".into(),
        ));
    }
    if !m.is_real() {
        return Err(Error::InvalidArgument(
            "the estimators take real matrices".into(),
        ));
    }
    Ok(())
}

fn mean_and_stderr(weights: &[f64]) -> (f64, f64) {
    let n = weights.len() as f64;
    let mean = weights.iter().sum::<f64>() / n;
    let var = weights.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// The importance weights `(-alpha)^{down #pi} det(M . pi) / P(pi)` of
/// `n_samples` partitions drawn with `ChaCha8Rng::seed_from_u64(seed)`.
pub fn partition_weights(
    m: &Matrix,
    alpha: f64,
    params: &PitmanEwensParams,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    check_inputs(m, n_samples)?;
    let n = m.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: Vec<Option<f64>> = if n <= MAX_CACHED_N {
        vec![None; 1 << n]
    } else {
        Vec::new()
    };
    let mut block_det = |block: &[usize]| -> f64 {
        if cache.is_empty() {
            return det(&m.principal_submatrix(block)).re;
        }
        let mask = mask_of(block);
        *cache[mask as usize].get_or_insert_with(|| det(&m.principal_submatrix(block)).re)
    };
    let mut weights = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let pi = pe_sample(n, params, &mut rng)?;
        let p = pe_prob(&pi, params);
        if !p.is_finite() || p <= 0.0 {
            return Err(Error::ProbabilityUnderflow);
        }
        let coeff = falling_factorial(-alpha, pi.block_count());
        let d: f64 = if coeff == 0.0 {
            0.0
        } else {
            pi.blocks().iter().map(|b| block_det(b)).product()
        };
        weights.push(coeff * d / p);
    }
    Ok(weights)
}

/// Importance-sampling estimate of `per_alpha(M)` from Pitman–Ewens
/// partitions: `(-1)^n` times the mean of [`partition_weights`].
pub fn is_estimate_partitions(
    m: &Matrix,
    alpha: f64,
    params: &PitmanEwensParams,
    n_samples: usize,
    seed: u64,
) -> Result<EstimateReport> {
    let weights = partition_weights(m, alpha, params, n_samples, seed)?;
    let (mean, stderr) = mean_and_stderr(&weights);
    let sign = if m.n().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(EstimateReport {
        estimate: sign * mean,
        stderr,
        n_samples,
        seed,
        target_alpha: alpha,
        params: Some(*params),
    })
}

/// Plain importance sampling over uniformly random permutations: the mean of
/// `n! alpha^{#s} prod_j M[j][s(j)]`.
pub fn is_estimate_permutations_uniform(
    m: &Matrix,
    alpha: f64,
    n_samples: usize,
    seed: u64,
) -> Result<EstimateReport> {
    check_inputs(m, n_samples)?;
    let n = m.n();
    let n_factorial = if n <= 20 {
        factorial_u64(n) as f64
    } else {
        (1..=n).map(|i| i as f64).product()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut weights = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        sigma.shuffle(&mut rng);
        let prod: f64 = sigma
            .iter()
            .enumerate()
            .map(|(j, &s)| m[(j, s)].re)
            .product();
        weights.push(n_factorial * alpha.powi(cycle_count_of(&sigma) as i32) * prod);
    }
    let (estimate, stderr) = mean_and_stderr(&weights);
    Ok(EstimateReport {
        estimate,
        stderr,
        n_samples,
        seed,
        target_alpha: alpha,
        params: None,
    })
}
