//! Exact alpha-permanent engines, the determinant, and evaluators for the
//! right-hand sides of the decomposition, sum and product identities.
//!
//! `per_alpha(M) = sum over permutations s of alpha^{#cycles(s)} prod_j M[j][s(j)]`.
//! Every function here is a finite sum; the `rhs_*` evaluators exist so the
//! identities can be checked against [`per_alpha_def`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cycle_count_of, elements_of, falling_factorial, visit_permutations, visit_rgs, SetPartition,
};
use crate::error::{guard, Error, Result};
use crate::matrix::Matrix;
use crate::numeric::c;

/// Largest matrix for which the permutation sum is evaluated.
pub const MAX_DEFINITION_N: usize = 12;
/// Largest matrix for sums over all set partitions.
pub const MAX_PARTITION_SUM_N: usize = 10;
/// Largest matrix for the truncated (`beta = -k`) determinant expansion.
pub const MAX_TRUNCATED_N: usize = 14;
/// Largest matrix for the `n^n`-term product identity.
pub const MAX_PRODUCT_IDENTITY_N: usize = 7;

/// Relative size below which an LU pivot counts as exactly zero.
const SINGULAR_PIVOT_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Direct sum over all permutations.
    Definition,
    /// Recursive expansion along the last row.
    Cofactor,
    /// Weighted sum of block determinants over set partitions.
    DetDecomposition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaPermanentResult {
    pub value: Complex64,
    pub method: Method,
    /// Permutations (or set partitions, for `DetDecomposition`) summed over.
    pub terms_evaluated: u64,
}

/// Evaluates `per_alpha(m)` with the chosen engine.
pub fn per_alpha(m: &Matrix, alpha: Complex64, method: Method) -> Result<AlphaPermanentResult> {
    let n = m.n();
    let (value, terms_evaluated) = match method {
        Method::Definition => (per_alpha_def(m, alpha)?, factorial(n)),
        Method::Cofactor => (per_alpha_cofactor(m, alpha)?, factorial(n)),
        Method::DetDecomposition => {
            let (value, terms) = det_expansion(m, alpha)?;
            (value, terms)
        }
    };
    Ok(AlphaPermanentResult {
        value,
        method,
        terms_evaluated,
    })
}

fn factorial(n: usize) -> u64 {
    (2..=n as u64).product()
}

/// `per_alpha` from the permutation-sum definition.
pub fn per_alpha_def(m: &Matrix, alpha: Complex64) -> Result<Complex64> {
    guard("alpha-permanent by definition", m.n(), MAX_DEFINITION_N)?;
    Ok(definition_sum(m, alpha))
}

fn definition_sum(m: &Matrix, alpha: Complex64) -> Complex64 {
    let n = m.n();
    let powers = powers_of(alpha, n);
    let zero = c(0.0);
    let mut total = zero;
    visit_permutations(n, |p| {
        let mut prod = c(1.0);
        for (j, &s) in p.iter().enumerate() {
            prod *= m[(j, s)];
        }
        if prod != zero {
            total += powers[cycle_count_of(p)] * prod;
        }
    });
    total
}

fn powers_of(x: Complex64, n: usize) -> Vec<Complex64> {
    std::iter::successors(Some(c(1.0)), |p| Some(p * x))
        .take(n + 1)
        .collect()
}

/// `per_alpha` of the principal submatrix on `mask`; the empty matrix has
/// alpha-permanent one.
fn per_alpha_on(m: &Matrix, mask: u32, alpha: Complex64) -> Complex64 {
    if mask == 0 {
        return c(1.0);
    }
    definition_sum(&m.principal_submatrix(&elements_of(mask)), alpha)
}

/// `per_alpha` by cofactor expansion along the last row:
/// `alpha M[n][n] per(M^(n,n)) + sum_{j != n} M[n][j] per(M^(n,j))`.
///
/// For `j != n` the minor `M^(n,j)` drops row `n` and column `j` and moves
/// column `n` into slot `j`, which keeps rows and columns paired so that the
/// cycle count of the shortened permutation is unchanged.
pub fn per_alpha_cofactor(m: &Matrix, alpha: Complex64) -> Result<Complex64> {
    guard(
        "alpha-permanent by cofactor expansion",
        m.n(),
        MAX_DEFINITION_N,
    )?;
    let mut cols: Vec<usize> = (0..m.n()).collect();
    Ok(cofactor_rec(m, alpha, m.n(), &mut cols))
}

fn cofactor_rec(m: &Matrix, alpha: Complex64, k: usize, cols: &mut [usize]) -> Complex64 {
    if k == 0 {
        return c(1.0);
    }
    let zero = c(0.0);
    let r = k - 1;
    let mut total = zero;
    let diag = m[(r, cols[r])];
    if diag != zero {
        total += alpha * diag * cofactor_rec(m, alpha, r, cols);
    }
    for j in 0..r {
        let entry = m[(r, cols[j])];
        if entry == zero {
            continue;
        }
        let saved = cols[j];
        cols[j] = cols[r];
        total += entry * cofactor_rec(m, alpha, r, cols);
        cols[j] = saved;
    }
    total
}

/// Determinant by LU factorisation with partial pivoting. A pivot column
/// whose largest entry is below `1e-12` times the largest row norm yields 0.
pub fn det(m: &Matrix) -> Complex64 {
    let n = m.n();
    let mut a = m.as_slice().to_vec();
    let scale = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let zero = c(0.0);
    if scale == 0.0 {
        return zero;
    }
    let tol = SINGULAR_PIVOT_REL * scale;
    let mut d = c(1.0);
    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs < tol {
            return zero;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            d = -d;
        }
        let pivot = a[col * n + col];
        d *= pivot;
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == zero {
                continue;
            }
            for j in col + 1..n {
                let upper = a[col * n + j];
                a[r * n + j] -= factor * upper;
            }
        }
    }
    d
}

fn det_on(m: &Matrix, mask: u32) -> Complex64 {
    if mask == 0 {
        return c(1.0);
    }
    det(&m.principal_submatrix(&elements_of(mask)))
}

fn check_partition(m: &Matrix, pi: &SetPartition) -> Result<()> {
    if pi.n() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: pi.n(),
        });
    }
    Ok(())
}

/// Hadamard product of `m` with the 0/1 matrix of `pi`: entries linking
/// different blocks are zeroed.
pub fn mask(m: &Matrix, pi: &SetPartition) -> Result<Matrix> {
    check_partition(m, pi)?;
    let labels = pi.labels();
    Ok(Matrix::from_fn(m.n(), |i, j| {
        if labels[i] == labels[j] {
            m[(i, j)]
        } else {
            c(0.0)
        }
    }))
}

/// `per_alpha` of the masked matrix, computed as the product over blocks of
/// `per_alpha(M[b])`.
pub fn per_alpha_masked(m: &Matrix, pi: &SetPartition, alpha: Complex64) -> Result<Complex64> {
    check_partition(m, pi)?;
    let mut prod = c(1.0);
    for block in pi.blocks() {
        guard("alpha-permanent of a block", block.len(), MAX_DEFINITION_N)?;
        prod *= definition_sum(&m.principal_submatrix(block), alpha);
    }
    Ok(prod)
}

/// Sums `weight[#pi] * prod_{b in pi} block_value(b)` over set partitions with
/// at most `max_blocks` blocks. Block values are cached by bitmask. Returns
/// the sum and the number of partitions enumerated.
fn partition_sum(
    n: usize,
    max_blocks: usize,
    weights: &[Complex64],
    mut block_value: impl FnMut(u32) -> Complex64,
) -> (Complex64, u64) {
    let zero = c(0.0);
    let mut cache: Vec<Option<Complex64>> = vec![None; 1 << n];
    let mut masks = vec![0u32; n];
    let mut total = zero;
    let mut terms = 0u64;
    visit_rgs(n, max_blocks, |labels, k| {
        terms += 1;
        let w = weights[k];
        if w == zero {
            return;
        }
        masks[..k].fill(0);
        for (i, &l) in labels.iter().enumerate() {
            masks[l] |= 1 << i;
        }
        let mut prod = w;
        for &mk in &masks[..k] {
            let v = *cache[mk as usize].get_or_insert_with(|| block_value(mk));
            prod *= v;
            if prod == zero {
                break;
            }
        }
        total += prod;
    });
    (total, terms)
}

/// `sum_pi beta^{down #pi} per_alpha(M . pi)`, which equals
/// `per_{alpha beta}(M)`.
pub fn rhs_decomposition(m: &Matrix, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    let n = m.n();
    guard("set-partition decomposition", n, MAX_PARTITION_SUM_N)?;
    let weights: Vec<_> = (0..=n).map(|k| falling_factorial(beta, k)).collect();
    Ok(partition_sum(n, n, &weights, |mk| per_alpha_on(m, mk, alpha)).0)
}

/// Returns `Some(k)` when `beta` is the negative integer `-k`.
pub fn negative_integer(beta: Complex64) -> Option<usize> {
    (beta.im.abs() < 1e-12 && beta.re <= -1.0 && beta.re.fract() == 0.0)
        .then(|| (-beta.re) as usize)
}

/// `per_beta(M) = (-1)^n sum_pi (-beta)^{down #pi} det(M . pi)`.
///
/// When `beta = -k` the weight `k^{down #pi}` vanishes beyond `k` blocks, so
/// only partitions with at most `k` blocks are enumerated.
pub fn per_alpha_via_det(m: &Matrix, beta: Complex64) -> Result<Complex64> {
    Ok(det_expansion(m, beta)?.0)
}

fn det_expansion(m: &Matrix, beta: Complex64) -> Result<(Complex64, u64)> {
    let n = m.n();
    let max_blocks = match negative_integer(beta) {
        Some(k) => {
            guard("truncated determinant expansion", n, MAX_TRUNCATED_N)?;
            k.min(n)
        }
        None => {
            guard("determinant expansion", n, MAX_PARTITION_SUM_N)?;
            n
        }
    };
    let weights: Vec<_> = (0..=n).map(|k| falling_factorial(-beta, k)).collect();
    let (sum, terms) = partition_sum(n, max_blocks, &weights, |mk| det_on(m, mk));
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sum * sign, terms))
}

/// `sum_pi (-1)^{down #pi} det(M . pi)`, which equals `(-1)^n per(M)`.
pub fn rhs_permanent_via_det(m: &Matrix) -> Result<Complex64> {
    let sign = if m.n().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(per_alpha_via_det(m, c(1.0))? * sign)
}

/// `sum_pi (-1/alpha)^{down #pi} per_alpha(M . pi)`, which equals
/// `(-1)^n det(M)`.
pub fn rhs_det_expansion(m: &Matrix, alpha: Complex64) -> Result<Complex64> {
    if alpha == c(0.0) {
        return Err(Error::InvalidArgument("alpha must be non-zero".into()));
    }
    rhs_decomposition(m, alpha, -alpha.inv())
}

/// `sum_{#pi <= k} k^{down #pi} per_alpha(M . pi)`, which equals
/// `per_{k alpha}(M)`.
pub fn rhs_infinite_divisibility(m: &Matrix, alpha: Complex64, k: usize) -> Result<Complex64> {
    let n = m.n();
    guard("set-partition decomposition", n, MAX_PARTITION_SUM_N)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let kk = c(k as f64);
    let weights: Vec<_> = (0..=n).map(|j| falling_factorial(kk, j)).collect();
    Ok(partition_sum(n, k.min(n), &weights, |mk| per_alpha_on(m, mk, alpha)).0)
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

/// `sum_{b subset [n]} per_alpha(A I_b + B I_{b^c})`, where row `i` of the
/// mixed matrix comes from `A` when `i` is in `b` and from `B` otherwise.
/// Equals `per_alpha(A + B)`. Subsets are visited as ascending bitmasks.
pub fn rhs_sum_identity(a: &Matrix, b: &Matrix, alpha: Complex64) -> Result<Complex64> {
    check_pair(a, b)?;
    let n = a.n();
    guard("sum identity", n, MAX_PARTITION_SUM_N)?;
    let mut total = c(0.0);
    for subset in 0u32..(1 << n) {
        let mixed = Matrix::from_fn(n, |i, j| {
            if subset & (1 << i) != 0 {
                a[(i, j)]
            } else {
                b[(i, j)]
            }
        });
        total += definition_sum(&mixed, alpha);
    }
    Ok(total)
}

/// `sum_{b subset [n]} alpha^{n - |b|} per_alpha(A[b])`, which equals
/// `per_alpha(A + I)`.
pub fn per_alpha_plus_identity(a: &Matrix, alpha: Complex64) -> Result<Complex64> {
    let n = a.n();
    guard("identity-shift expansion", n, MAX_DEFINITION_N)?;
    let powers = powers_of(alpha, n);
    let mut total = c(0.0);
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as usize;
        total += powers[n - size] * per_alpha_on(a, subset, alpha);
    }
    Ok(total)
}

/// `sum_{x in [n]^n} per_alpha(B_x) prod_j A[j][x_j]`, where row `j` of `B_x`
/// is row `x_j` of `B`. Equals `per_alpha(A B)`.
pub fn rhs_product_identity(a: &Matrix, b: &Matrix, alpha: Complex64) -> Result<Complex64> {
    check_pair(a, b)?;
    let n = a.n();
    guard("product identity", n, MAX_PRODUCT_IDENTITY_N)?;
    let zero = c(0.0);
    let mut x = vec![0usize; n];
    let mut total = zero;
    loop {
        let coeff: Complex64 = x.iter().enumerate().map(|(j, &xj)| a[(j, xj)]).product();
        if coeff != zero {
            let bx = Matrix::from_fn(n, |i, j| b[(x[i], j)]);
            total += coeff * definition_sum(&bx, alpha);
        }
        // Odometer increment over [n]^n.
        let mut pos = 0;
        while pos < n {
            x[pos] += 1;
            if x[pos] < n {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{
        bell_upto, permutations, rising_factorial, set_partitions, Permutation,
    };
    use crate::numeric::{approx_eq, relative_error};
    use crate::random;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Signed permutation sum, independent of the LU path.
    fn det_brute(m: &Matrix) -> Complex64 {
        permutations(m.n())
            .unwrap()
            .map(|s| {
                let prod: Complex64 = (0..m.n()).map(|j| m[(j, s.apply(j))]).product();
                prod * s.sign() as f64
            })
            .sum()
    }

    #[test]
    fn definition_examples() {
        assert_eq!(per_alpha_def(&Matrix::ones(3), c(1.0)).unwrap(), c(6.0));
        let alpha = cx(0.3, -1.2);
        let v = per_alpha_def(&Matrix::identity(3), alpha).unwrap();
        assert!((v - alpha * alpha * alpha).norm() < 1e-14);
        assert!(matches!(
            per_alpha_def(&Matrix::identity(13), c(1.0)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn permanent_and_determinant_special_cases() {
        let mut r = rng(1);
        let m = random::complex_matrix(5, &mut r);
        let d = per_alpha_def(&-&m, c(-1.0)).unwrap();
        assert!(relative_error(d, det_brute(&m)) < 1e-12);
        // alpha = 1 is the permanent.
        let per: Complex64 = permutations(5)
            .unwrap()
            .map(|s| (0..5).map(|j| m[(j, s.apply(j))]).product::<Complex64>())
            .sum();
        assert!(relative_error(per_alpha_def(&m, c(1.0)).unwrap(), per) < 1e-12);
    }

    #[test]
    fn cofactor_examples() {
        let alpha = cx(-0.4, 0.9);
        let one = Matrix::from_rows(&[vec![cx(2.0, 1.0)]]).unwrap();
        assert_eq!(
            per_alpha_cofactor(&one, alpha).unwrap(),
            alpha * cx(2.0, 1.0)
        );

        let m = Matrix::from_real(2, &[1.5, -2.0, 0.5, 3.0]).unwrap();
        let expected = alpha * alpha * 1.5 * 3.0 + alpha * (-2.0 * 0.5);
        assert!((per_alpha_cofactor(&m, alpha).unwrap() - expected).norm() < 1e-14);

        let mut r = rng(2);
        for _ in 0..5 {
            let m = random::complex_matrix(6, &mut r);
            let a = random::complex_normal(&mut r);
            let lhs = per_alpha_cofactor(&m, a).unwrap();
            let rhs = per_alpha_def(&m, a).unwrap();
            assert!(relative_error(lhs, rhs) < 1e-10);
        }
    }

    #[test]
    fn det_examples() {
        for n in 1..6 {
            assert!((det(&Matrix::identity(n)) - c(1.0)).norm() < 1e-15);
        }
        let mut m = Matrix::from_real(3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(det(&m).norm() < 1e-10);
        m[(2, 2)] = c(4.0);
        assert!((det(&m) - c(-3.0)).norm() < 1e-12);
        assert_eq!(det(&Matrix::zeros(3)), c(0.0));

        let mut r = rng(3);
        for _ in 0..10 {
            let m = random::complex_matrix(5, &mut r);
            assert!(relative_error(det(&m), det_brute(&m)) < 1e-9);
        }
    }

    #[test]
    fn mask_examples() {
        let mut r = rng(4);
        let m = random::complex_matrix(5, &mut r);
        assert_eq!(mask(&m, &SetPartition::one_block(5)).unwrap(), m);
        let diag = mask(&m, &SetPartition::singletons(5)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { m[(i, j)] } else { c(0.0) };
                assert_eq!(diag[(i, j)], expected);
            }
        }
        assert!(mask(&m, &SetPartition::one_block(4)).is_err());
    }

    #[test]
    fn masked_permanent_is_block_product() {
        let mut r = rng(5);
        for _ in 0..10 {
            let m = random::complex_matrix(6, &mut r);
            let pi = random::set_partition(6, &mut r);
            let a = random::complex_normal(&mut r);
            let direct = per_alpha_def(&mask(&m, &pi).unwrap(), a).unwrap();
            let blocks = per_alpha_masked(&m, &pi, a).unwrap();
            assert!(relative_error(blocks, direct) < 1e-10, "{pi}");
        }
        let m = random::complex_matrix(5, &mut r);
        let a = cx(1.1, 0.2);
        let singles = per_alpha_masked(&m, &SetPartition::singletons(5), a).unwrap();
        let expected: Complex64 = (0..5).map(|i| a * m[(i, i)]).product();
        assert!(relative_error(singles, expected) < 1e-12);
        let whole = per_alpha_masked(&m, &SetPartition::one_block(5), a).unwrap();
        assert!(relative_error(whole, per_alpha_def(&m, a).unwrap()) < 1e-12);
    }

    #[test]
    fn decomposition_examples() {
        let mut r = rng(6);
        let m = random::complex_matrix(5, &mut r);
        // alpha = beta = -1 gives the permanent; written with block
        // determinants it is (-1)^n per(M) = sum_pi (-1)^{down #pi} det(M . pi).
        let per = per_alpha_def(&m, c(1.0)).unwrap();
        let rhs = rhs_decomposition(&m, c(-1.0), c(-1.0)).unwrap();
        assert!(relative_error(rhs, per) < 1e-8);
        let dets: Complex64 = set_partitions(5, None)
            .unwrap()
            .map(|pi| {
                let d: Complex64 = pi
                    .blocks()
                    .iter()
                    .map(|b| det(&m.principal_submatrix(b)))
                    .product();
                falling_factorial(c(-1.0), pi.block_count()) * d
            })
            .sum();
        assert!(relative_error(dets, -per) < 1e-8);
        assert!(relative_error(rhs_permanent_via_det(&m).unwrap(), dets) < 1e-12);

        let a = cx(0.8, -0.3);
        let at_one = rhs_decomposition(&m, a, c(1.0)).unwrap();
        assert!(relative_error(at_one, per_alpha_def(&m, a).unwrap()) < 1e-10);

        let m = random::real_matrix(5, &mut r);
        let rhs = rhs_decomposition(&m, c(0.7), c(-1.3)).unwrap();
        assert!(relative_error(rhs, per_alpha_def(&m, c(-0.91)).unwrap()) < 1e-8);
    }

    #[test]
    fn via_det_examples() {
        let mut r = rng(7);
        for n in 1..=6 {
            let m = random::complex_matrix(n, &mut r);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let v = per_alpha_via_det(&m, c(-1.0)).unwrap();
            assert!(relative_error(v, det(&m) * sign) < 1e-12);
        }
        let m = random::complex_matrix(6, &mut r);
        for beta in [c(-2.0), c(-3.0), c(-2.5), c(1.0), cx(0.4, 0.7)] {
            let v = per_alpha_via_det(&m, beta).unwrap();
            assert!(
                relative_error(v, per_alpha_def(&m, beta).unwrap()) < 1e-8,
                "{beta}"
            );
        }
        assert!(per_alpha_via_det(&Matrix::identity(11), c(0.5)).is_err());
        assert!(per_alpha_via_det(&Matrix::identity(11), c(-2.0)).is_ok());
        assert!(per_alpha_via_det(&Matrix::identity(15), c(-2.0)).is_err());
    }

    #[test]
    fn negative_integer_detection() {
        assert_eq!(negative_integer(c(-3.0)), Some(3));
        assert_eq!(negative_integer(cx(-2.0, 1e-13)), Some(2));
        assert_eq!(negative_integer(cx(-2.0, 1e-6)), None);
        assert_eq!(negative_integer(c(-2.5)), None);
        assert_eq!(negative_integer(c(0.0)), None);
        assert_eq!(negative_integer(c(2.0)), None);
    }

    #[test]
    fn term_counts() {
        let m = Matrix::ones(6);
        let def = per_alpha(&m, c(2.0), Method::Definition).unwrap();
        assert_eq!(def.terms_evaluated, 720);
        for k in 1..=4usize {
            let r = per_alpha(&m, c(-(k as f64)), Method::DetDecomposition).unwrap();
            assert_eq!(r.terms_evaluated, bell_upto(6, k).to_u64().unwrap());
            assert!(approx_eq(
                r.value,
                rising_factorial(c(-(k as f64)), 6),
                1e-9
            ));
        }
    }

    #[test]
    fn sum_identity_examples() {
        let mut r = rng(8);
        let a = random::complex_matrix(4, &mut r);
        let alpha = cx(-0.6, 0.5);
        let only_a = rhs_sum_identity(&a, &Matrix::zeros(4), alpha).unwrap();
        assert!(relative_error(only_a, per_alpha_def(&a, alpha).unwrap()) < 1e-12);

        let b = random::complex_matrix(4, &mut r);
        let rhs = rhs_sum_identity(&a, &b, alpha).unwrap();
        assert!(relative_error(rhs, per_alpha_def(&(&a + &b), alpha).unwrap()) < 1e-9);

        let doubled = rhs_sum_identity(&a, &a, alpha).unwrap();
        let expected = per_alpha_def(&a.scale(c(2.0)), alpha).unwrap();
        assert!(relative_error(doubled, expected) < 1e-9);
        assert!(rhs_sum_identity(&a, &Matrix::zeros(3), alpha).is_err());
    }

    #[test]
    fn plus_identity_examples() {
        let alpha = cx(1.7, -0.2);
        let v = per_alpha_plus_identity(&Matrix::zeros(4), alpha).unwrap();
        assert!(relative_error(v, alpha.powu(4)) < 1e-12);

        let mut r = rng(9);
        let a = random::complex_matrix(5, &mut r);
        let lhs = det(&(&a + &Matrix::identity(5)));
        let rhs: Complex64 = (0u32..32).map(|s| det_on(&a, s)).sum();
        assert!(relative_error(rhs, lhs) < 1e-9);
        let via_alpha = per_alpha_plus_identity(&a, c(-1.0)).unwrap();
        // per_{-1}(A + I) = (-1)^n det(A + I).
        assert!(relative_error(via_alpha, -lhs) < 1e-9);

        let shifted = &a + &Matrix::identity(5);
        let lhs = per_alpha_def(&shifted, alpha).unwrap();
        assert!(relative_error(per_alpha_plus_identity(&a, alpha).unwrap(), lhs) < 1e-9);
    }

    #[test]
    fn product_identity_examples() {
        let mut r = rng(10);
        let b = random::complex_matrix(4, &mut r);
        let alpha = cx(0.3, 0.3);
        let v = rhs_product_identity(&Matrix::identity(4), &b, alpha).unwrap();
        assert!(relative_error(v, per_alpha_def(&b, alpha).unwrap()) < 1e-12);

        // n = 2 by hand: x ranges over four index pairs.
        let a = random::complex_matrix(2, &mut r);
        let b = random::complex_matrix(2, &mut r);
        let per2 =
            |m: &Matrix| alpha * alpha * m[(0, 0)] * m[(1, 1)] + alpha * m[(0, 1)] * m[(1, 0)];
        let mut by_hand = c(0.0);
        for x0 in 0..2 {
            for x1 in 0..2 {
                let bx = Matrix::from_fn(2, |i, j| b[([x0, x1][i], j)]);
                by_hand += a[(0, x0)] * a[(1, x1)] * per2(&bx);
            }
        }
        let ab = &a * &b;
        assert!((by_hand - per2(&ab)).norm() < 1e-12 * (1.0 + per2(&ab).norm()));
        assert!((rhs_product_identity(&a, &b, alpha).unwrap() - by_hand).norm() < 1e-12);

        let a = random::complex_matrix(4, &mut r);
        let b = random::complex_matrix(4, &mut r);
        let rhs = rhs_product_identity(&a, &b, c(-2.0)).unwrap();
        assert!(relative_error(rhs, per_alpha_def(&(&a * &b), c(-2.0)).unwrap()) < 1e-9);
        assert!(rhs_product_identity(&Matrix::identity(8), &Matrix::identity(8), alpha).is_err());
    }

    #[test]
    fn engines_agree() {
        let mut r = rng(11);
        for n in 1..=7 {
            let m = random::complex_matrix(n, &mut r);
            let a = random::complex_normal(&mut r);
            let def = per_alpha_def(&m, a).unwrap();
            assert!(approx_eq(per_alpha_cofactor(&m, a).unwrap(), def, 1e-8));
            assert!(approx_eq(per_alpha_via_det(&m, a).unwrap(), def, 1e-8));
        }
    }

    #[test]
    fn determinant_expansion_in_alpha_permanents() {
        let mut r = rng(12);
        for n in 1..=6 {
            let m = random::complex_matrix(n, &mut r);
            let a = cx(0.37 + n as f64 * 0.1, -0.61);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = rhs_det_expansion(&m, a).unwrap();
            assert!(relative_error(rhs, det(&m) * sign) < 1e-8);
        }
        assert!(rhs_det_expansion(&Matrix::identity(2), c(0.0)).is_err());
    }

    #[test]
    fn infinite_divisibility() {
        let mut r = rng(13);
        for k in [2usize, 3] {
            let m = random::complex_matrix(5, &mut r);
            let a = random::complex_normal(&mut r);
            let rhs = rhs_infinite_divisibility(&m, a, k).unwrap();
            let lhs = per_alpha_def(&m, a * k as f64).unwrap();
            assert!(relative_error(rhs, lhs) < 1e-8);
        }
    }

    #[test]
    fn conjugation_invariance() {
        let mut r = rng(14);
        let m = random::complex_matrix(5, &mut r);
        let a = cx(-1.4, 0.25);
        let base = per_alpha_def(&m, a).unwrap();
        for s in permutations(5).unwrap().step_by(7) {
            let v = per_alpha_def(&m.conjugate_by(&s), a).unwrap();
            assert!(relative_error(v, base) < 1e-10);
        }
    }

    #[test]
    fn all_ones_gives_rising_factorial() {
        for n in 1..=8 {
            for a in [c(1.0), c(-2.0), cx(0.5, 0.5), c(-2.5)] {
                let v = per_alpha_def(&Matrix::ones(n), a).unwrap();
                assert!(approx_eq(v, rising_factorial(a, n), 1e-10));
            }
        }
    }

    #[test]
    fn psd_block_determinants_are_non_negative() {
        let mut r = rng(15);
        let m = random::psd_matrix(6, &mut r);
        for pi in set_partitions(6, None).unwrap() {
            let d: Complex64 = pi
                .blocks()
                .iter()
                .map(|b| det(&m.principal_submatrix(b)))
                .product();
            assert!(d.re >= -1e-10 && d.im.abs() < 1e-10);
        }
    }

    #[test]
    fn permutation_matrix_cycle_weight() {
        let s = Permutation::from_one_line(&[2, 3, 1, 5, 4]).unwrap();
        let v = per_alpha_def(&Matrix::permutation(&s), c(3.0)).unwrap();
        assert_eq!(v, c(9.0));
    }
}
