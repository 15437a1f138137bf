//! Symmetric-group characters, immanants, and the expansion of the
//! alpha-permanent in the immanant basis.
//!
//! Integer partitions are always listed in reverse-lexicographic order, so
//! index `i` refers to the same partition in the character table, the class
//! sums, and every coefficient vector.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{
    factorial_u64, falling_factorial, integer_partitions, refines_partition, set_partitions,
    visit_permutations, IntegerPartition, Permutation, SetPartition,
};
use crate::error::{guard, Error, Result};
use crate::exact::{mask, per_alpha_masked};
use crate::matrix::Matrix;
use crate::numeric::c;

/// Largest `n` with a character table.
pub const MAX_CHARACTER_N: usize = 10;
/// Largest matrix for immanants and `c_lambda`.
pub const MAX_IMMANANT_N: usize = 9;
/// Largest `n` for the cofactor solve and the immanant expansion.
pub const MAX_COEFFICIENT_N: usize = 8;
/// Largest matrix for the double sums over partitions and characters.
pub const MAX_DOUBLE_SUM_N: usize = 6;

/// Character table of the symmetric group on `n` letters.
/// `values[i][j]` is the character of `partitions[i]` on the class with cycle
/// type `partitions[j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<IntegerPartition>,
    pub values: Vec<Vec<i64>>,
    pub class_sizes: Vec<u64>,
}

impl CharacterTable {
    /// Shared, lazily built table for `n`.
    pub fn get(n: usize) -> Result<&'static CharacterTable> {
        static TABLES: [OnceLock<CharacterTable>; MAX_CHARACTER_N + 1] =
            [const { OnceLock::new() }; MAX_CHARACTER_N + 1];
        guard("character table", n, MAX_CHARACTER_N)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(TABLES[n].get_or_init(|| Self::build(n)))
    }

    fn build(n: usize) -> Self {
        let partitions = integer_partitions(n);
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|nu| murnaghan_nakayama(lambda.parts(), nu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let class_sizes = partitions
            .iter()
            .map(IntegerPartition::class_size)
            .collect();
        Self {
            n,
            partitions,
            values,
            class_sizes,
        }
    }

    /// Position of `lambda` in [`CharacterTable::partitions`].
    pub fn index_of(&self, lambda: &IntegerPartition) -> Result<usize> {
        if lambda.size() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: lambda.size(),
            });
        }
        Ok(self
            .partitions
            .iter()
            .position(|p| p == lambda)
            .expect("every partition of n is listed"))
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }
}

/// Character value by removing rim hooks of length `nu[0], nu[1], ..` from
/// `shape`. Hooks are removed on the beta-set (first-column hook lengths):
/// a rim hook of length `r` is a bead moved from `b` to an empty `b - r`,
/// with sign `(-1)^{beads strictly between}`.
fn murnaghan_nakayama(
    shape: &[usize],
    rest: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    let Some((&r, tail)) = rest.split_first() else {
        return i64::from(shape.is_empty());
    };
    let key = (shape.to_vec(), rest.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (len - 1 - k))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&smaller, tail, memo);
    }
    memo.insert(key, total);
    total
}

/// `chi_lambda` on the class of cycle type `nu`.
pub fn character(lambda: &IntegerPartition, nu: &IntegerPartition) -> Result<i64> {
    if lambda.size() != nu.size() {
        return Err(Error::DimensionMismatch {
            expected: lambda.size(),
            found: nu.size(),
        });
    }
    let table = CharacterTable::get(lambda.size())?;
    Ok(table.values[table.index_of(lambda)?][table.index_of(nu)?])
}

/// `sum over permutations of cycle type nu of prod_j M[j][s(j)]`, one entry
/// per partition in table order.
fn class_sums(m: &Matrix, table: &CharacterTable) -> Vec<Complex64> {
    let n = m.n();
    let index: HashMap<Vec<usize>, usize> = table
        .partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.parts().to_vec(), i))
        .collect();
    let mut sums = vec![c(0.0); table.len()];
    let mut seen = vec![false; n];
    let mut cycle_type = Vec::with_capacity(n);
    visit_permutations(n, |p| {
        let prod: Complex64 = p.iter().enumerate().map(|(j, &s)| m[(j, s)]).product();
        if prod == c(0.0) {
            return;
        }
        seen.fill(false);
        cycle_type.clear();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            cycle_type.push(len);
        }
        cycle_type.sort_unstable_by(|a, b| b.cmp(a));
        sums[index[&cycle_type]] += prod;
    });
    sums
}

fn immanants_from_sums(table: &CharacterTable, sums: &[Complex64]) -> Vec<Complex64> {
    table
        .values
        .iter()
        .map(|row| row.iter().zip(sums).map(|(&x, &s)| s * x as f64).sum())
        .collect()
}

/// `Im_lambda(M) = sum_s chi_lambda(s) prod_j M[j][s(j)]`.
pub fn immanant(m: &Matrix, lambda: &IntegerPartition) -> Result<Complex64> {
    let n = m.n();
    guard("immanant", n, MAX_IMMANANT_N)?;
    if lambda.size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    let table = CharacterTable::get(n)?;
    let row = &table.values[table.index_of(lambda)?];
    let sums = class_sums(m, table);
    Ok(row.iter().zip(&sums).map(|(&x, &s)| s * x as f64).sum())
}

/// `c_lambda(alpha) = (1/n!) sum_nu |class nu| alpha^{#nu} chi_lambda(nu)`.
pub fn c_lambda(alpha: Complex64, lambda: &IntegerPartition) -> Result<Complex64> {
    let n = lambda.size();
    guard("c_lambda", n, MAX_IMMANANT_N)?;
    let table = CharacterTable::get(n)?;
    Ok(c_lambda_in(table, alpha, table.index_of(lambda)?))
}

fn c_lambda_in(table: &CharacterTable, alpha: Complex64, row: usize) -> Complex64 {
    let total: Complex64 = table.values[row]
        .iter()
        .zip(&table.class_sizes)
        .zip(&table.partitions)
        .map(|((&x, &size), nu)| alpha.powu(nu.len() as u32) * (size as f64 * x as f64))
        .sum();
    total / factorial_u64(table.n) as f64
}

/// Coefficients of `alpha^{#s}` in the irreducible characters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientVector {
    pub alpha: Complex64,
    pub partitions: Vec<IntegerPartition>,
    pub c: Vec<Complex64>,
}

/// Exact determinant by fraction-free elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn table_as_bigint(table: &CharacterTable) -> Vec<Vec<BigInt>> {
    table
        .values
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Exact determinant of the character table.
pub fn character_determinant(n: usize) -> Result<BigInt> {
    guard("character determinant", n, MAX_COEFFICIENT_N)?;
    Ok(bareiss_det(table_as_bigint(CharacterTable::get(n)?)))
}

/// Signed cofactor matrix `Y[i][j] = (-1)^{i+j} det(X without row i, column j)`
/// of the character table `X`, one minor determinant per entry.
/// It satisfies `Y X^T = det(X) I`.
pub fn cofactor_matrix(n: usize) -> Result<Vec<Vec<BigInt>>> {
    guard("cofactor matrix", n, MAX_COEFFICIENT_N)?;
    let x = table_as_bigint(CharacterTable::get(n)?);
    let p = x.len();
    Ok((0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let minor: Vec<Vec<BigInt>> = (0..p)
                        .filter(|&r| r != i)
                        .map(|r| {
                            (0..p)
                                .filter(|&col| col != j)
                                .map(|col| x[r][col].clone())
                                .collect()
                        })
                        .collect();
                    let d = bareiss_det(minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect())
}

/// Solves `alpha^{#nu} = sum_lambda c_lambda chi_lambda(nu)` for `c` with the
/// cofactor formula `c = Y A / det X`, where `A[nu] = alpha^{#nu}`.
pub fn solve_coefficients(alpha: Complex64, n: usize) -> Result<CoefficientVector> {
    guard("coefficient solve", n, MAX_COEFFICIENT_N)?;
    let table = CharacterTable::get(n)?;
    let det_x = character_determinant(n)?;
    let y = cofactor_matrix(n)?;
    // |det X| can exceed f64's exact range, but Y/det X is the inverse of X^T
    // and has small entries, so the ratio is formed per entry.
    let det_abs = det_x.abs().to_f64().expect("finite");
    let det_sign = if det_x.is_negative() { -1.0 } else { 1.0 };
    let a: Vec<Complex64> = table
        .partitions
        .iter()
        .map(|nu| alpha.powu(nu.len() as u32))
        .collect();
    let coeffs = y
        .iter()
        .map(|row| {
            row.iter()
                .zip(&a)
                .map(|(yij, &aj)| aj * (det_sign * yij.to_f64().expect("finite") / det_abs))
                .sum()
        })
        .collect();
    Ok(CoefficientVector {
        alpha,
        partitions: table.partitions.clone(),
        c: coeffs,
    })
}

/// `sum_lambda c_lambda(alpha) Im_lambda(M)`.
pub fn per_via_immanants(m: &Matrix, alpha: Complex64) -> Result<Complex64> {
    let n = m.n();
    guard("immanant expansion", n, MAX_COEFFICIENT_N)?;
    let table = CharacterTable::get(n)?;
    let imm = immanants_from_sums(table, &class_sums(m, table));
    Ok((0..table.len())
        .map(|i| c_lambda_in(table, alpha, i) * imm[i])
        .sum())
}

/// `sum_lambda c_lambda(-beta) sum_pi (-alpha/beta)^{down #pi} Im_lambda(M . pi)`,
/// which equals `per_alpha(M)` for any non-zero `beta`.
pub fn per_immanant_decomposition_rhs(
    m: &Matrix,
    alpha: Complex64,
    beta: Complex64,
) -> Result<Complex64> {
    let n = m.n();
    guard("immanant decomposition", n, MAX_DOUBLE_SUM_N)?;
    if beta == c(0.0) {
        return Err(Error::InvalidArgument("beta must be non-zero".into()));
    }
    let table = CharacterTable::get(n)?;
    let coeffs: Vec<Complex64> = (0..table.len())
        .map(|i| c_lambda_in(table, -beta, i))
        .collect();
    let ratio = -alpha / beta;
    let mut total = c(0.0);
    for pi in set_partitions(n, None)? {
        let weight = falling_factorial(ratio, pi.block_count());
        let imm = immanants_from_sums(table, &class_sums(&mask(m, &pi)?, table));
        let inner: Complex64 = coeffs.iter().zip(&imm).map(|(a, b)| a * b).sum();
        total += weight * inner;
    }
    Ok(total)
}

/// Both sides of the Möbius-inversion identity for the block structure `pi`.
///
/// The left side is `[sum over s whose cycles are the blocks of pi of
/// prod_j M[j][s(j)]]` times `(1/n!) sum_nu sum_s beta^{#s} chi_nu(pi) chi_nu(s)`;
/// the right side is `sum_{pi' <= pi} per_beta(M . pi')` weighted by
/// `prod_{b in pi} (-1)^{k_b - 1} (k_b - 1)!`, with `k_b` the number of blocks
/// of `pi'` inside `b`.
pub fn mobius_identity_check(
    m: &Matrix,
    beta: Complex64,
    pi: &SetPartition,
) -> Result<(Complex64, Complex64)> {
    let n = m.n();
    guard("Mobius identity", n, MAX_DOUBLE_SUM_N)?;
    if pi.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.n(),
        });
    }
    let table = CharacterTable::get(n)?;

    let mut matching = c(0.0);
    visit_permutations(n, |p| {
        let sigma = Permutation::new(p.to_vec()).expect("valid permutation");
        if sigma.cycle_partition() == *pi {
            matching += p
                .iter()
                .enumerate()
                .map(|(j, &s)| m[(j, s)])
                .product::<Complex64>();
        }
    });
    let class_of_pi = table.index_of(&pi.block_sizes())?;
    let mut char_sum = c(0.0);
    for row in &table.values {
        let chi_pi = row[class_of_pi] as f64;
        let over_sigma: Complex64 = row
            .iter()
            .zip(&table.class_sizes)
            .zip(&table.partitions)
            .map(|((&x, &size), nu)| beta.powu(nu.len() as u32) * (size as f64 * x as f64))
            .sum();
        char_sum += over_sigma * chi_pi;
    }
    let lhs = matching * char_sum / factorial_u64(n) as f64;

    let labels = pi.labels();
    let mut rhs = c(0.0);
    for finer in set_partitions(n, None)? {
        if !refines_partition(&finer, pi)? {
            continue;
        }
        let mut inside = vec![0usize; pi.block_count()];
        for b in finer.blocks() {
            inside[labels[b[0]]] += 1;
        }
        let mobius: f64 = inside
            .iter()
            .map(|&k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * factorial_u64(k - 1) as f64
            })
            .product();
        rhs += per_alpha_masked(m, &finer, beta)? * mobius;
    }
    Ok((lhs, rhs))
}
