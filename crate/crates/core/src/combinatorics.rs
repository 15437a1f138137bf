//! Permutations, set partitions, integer partitions and the counting
//! functions built on them.
//!
//! All indices are zero-based internally. `Display` impls and the
//! `from_one_line` constructor use the customary one-based notation.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, Num, One, Zero};
use serde::Serialize;

use crate::error::{guard, Error, Result};

/// Largest `n` accepted by [`permutations`].
pub const MAX_PERMUTATION_N: usize = 12;
/// Largest `n` accepted by [`set_partitions`].
pub const MAX_PARTITION_N: usize = 14;

const STIRLING_TABLE_N: usize = 48;
const RENCONTRES_TABLE_N: usize = 24;

/// `x (x - 1) ... (x - j + 1)`, with the empty product equal to one.
pub fn falling_factorial<T>(x: T, j: usize) -> T
where
    T: Num + Copy + FromPrimitive,
{
    (0..j).fold(T::one(), |acc, i| {
        acc * (x - T::from_usize(i).expect("index representable"))
    })
}

/// `x (x + 1) ... (x + j - 1)`, with the empty product equal to one.
pub fn rising_factorial<T>(x: T, j: usize) -> T
where
    T: Num + Copy + FromPrimitive,
{
    (0..j).fold(T::one(), |acc, i| {
        acc * (x + T::from_usize(i).expect("index representable"))
    })
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn factorial_u64(n: usize) -> u64 {
    (2..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A bijection on `{0, .., n-1}` stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from zero-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from one-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "one-line notation is one-based".into(),
            ));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn long_cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count_of(&self.images)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .count()
    }

    /// Cycles as element lists, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths; labels the conjugacy class.
    pub fn cycle_type(&self) -> IntegerPartition {
        IntegerPartition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
            .expect("cycle lengths are positive")
    }

    /// The set partition whose blocks are the cycles.
    pub fn cycle_partition(&self) -> SetPartition {
        let mut cycles = self.cycles();
        for cycle in &mut cycles {
            cycle.sort_unstable();
        }
        SetPartition::from_canonical_blocks(self.len(), cycles)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        if (self.len() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, ")")
    }
}

/// Number of cycles, fixed points included.
pub fn cycle_count(sigma: &Permutation) -> usize {
    sigma.cycle_count()
}

pub(crate) fn cycle_count_of(images: &[usize]) -> usize {
    if images.len() > 64 {
        return Permutation {
            images: images.to_vec(),
        }
        .cycles()
        .len();
    }
    let mut seen = 0u64;
    let mut count = 0;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        count += 1;
        let mut j = start;
        while seen & (1 << j) == 0 {
            seen |= 1 << j;
            j = images[j];
        }
    }
    count
}

/// Rearranges `p` into the next permutation in lexicographic order.
/// Returns `false` once `p` was the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub(crate) fn visit_permutations(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        if !next_permutation(&mut p) {
            break;
        }
    }
}

/// Lexicographic stream of all permutations of `0..n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let p = self.current.take()?;
        let mut succ = p.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation { images: p })
    }
}

/// All `n!` permutations of `0..n`, lexicographic order. `1 <= n <= 12`.
pub fn permutations(n: usize) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    guard("permutation enumeration", n, MAX_PERMUTATION_N)?;
    Ok(Permutations {
        current: Some((0..n).collect()),
    })
}

// ---------------------------------------------------------------------------
// Set partitions
// ---------------------------------------------------------------------------

/// A partition of `{0, .., n-1}` into non-empty blocks.
///
/// Canonical form: blocks are sorted by their smallest element and elements
/// ascend within each block, so derived `Eq`/`Hash` are structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalises an arbitrary block list.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidSetPartition(format!(
                        "element {x} outside 0..{n}"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidSetPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidSetPartition(format!(
                "element {missing} is not covered"
            )));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// One-based convenience constructor, e.g. `[[1, 2], [3]]`.
    pub fn from_one_based(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let shifted = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        x.checked_sub(1).ok_or_else(|| {
                            Error::InvalidSetPartition("one-based elements start at 1".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(n, shifted)
    }

    /// Items `i` and `j` share a block iff `labels[i] == labels[j]`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidSetPartition("empty ground set".into()));
        }
        let mut order: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            match order.iter().position(|&l| l == label) {
                Some(b) => blocks[b].push(i),
                None => {
                    order.push(label);
                    blocks.push(vec![i]);
                }
            }
        }
        Ok(Self {
            n: labels.len(),
            blocks,
        })
    }

    pub(crate) fn from_canonical_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
        Self { n, blocks }
    }

    pub fn one_block(n: usize) -> Self {
        Self {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Restricted growth string: `labels()[i]` is the index of `i`'s block.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        labels
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        let labels = self.labels();
        labels[i] == labels[j]
    }

    /// Block sizes sorted descending.
    pub fn block_sizes(&self) -> IntegerPartition {
        IntegerPartition::from_unsorted(self.blocks.iter().map(Vec::len).collect())
            .expect("blocks are non-empty")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            write!(f, "{{")?;
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

pub(crate) fn mask_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0u32, |m, &x| m | (1 << x))
}

pub(crate) fn elements_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Steps a restricted growth string to its lexicographic successor, keeping
/// at most `max_blocks` distinct labels. `prefix_max[i]` caches
/// `max(rgs[..=i])`.
fn next_rgs(rgs: &mut [usize], prefix_max: &mut [usize], max_blocks: usize) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let bound = prefix_max[i - 1] + 1;
        if rgs[i] < bound && rgs[i] + 1 < max_blocks {
            rgs[i] += 1;
            prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
            for j in i + 1..n {
                rgs[j] = 0;
                prefix_max[j] = prefix_max[i];
            }
            return true;
        }
    }
    false
}

/// Calls `f(labels, block_count)` for every restricted growth string of
/// length `n` using at most `max_blocks` labels, in lexicographic order.
pub(crate) fn visit_rgs(n: usize, max_blocks: usize, mut f: impl FnMut(&[usize], usize)) {
    if n == 0 || max_blocks == 0 {
        return;
    }
    let mut rgs = vec![0; n];
    let mut prefix_max = vec![0; n];
    loop {
        f(&rgs, prefix_max[n - 1] + 1);
        if !next_rgs(&mut rgs, &mut prefix_max, max_blocks) {
            break;
        }
    }
}

/// Stream of set partitions in restricted-growth-string lexicographic order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    prefix_max: Vec<usize>,
    max_blocks: usize,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let k = self.prefix_max[n - 1] + 1;
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        if !next_rgs(&mut self.rgs, &mut self.prefix_max, self.max_blocks) {
            self.done = true;
        }
        Some(SetPartition { n, blocks })
    }
}

/// Every partition of `0..n`, optionally restricted to at most `max_blocks`
/// blocks. `1 <= n <= 14`.
pub fn set_partitions(n: usize, max_blocks: Option<usize>) -> Result<SetPartitions> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if max_blocks == Some(0) {
        return Err(Error::InvalidArgument(
            "max_blocks must be at least 1".into(),
        ));
    }
    guard("set partition enumeration", n, MAX_PARTITION_N)?;
    Ok(SetPartitions {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        max_blocks: max_blocks.unwrap_or(n),
        done: false,
    })
}

/// Whether every cycle of `sigma` lies inside a single block of `pi`.
pub fn refines(sigma: &Permutation, pi: &SetPartition) -> Result<bool> {
    if sigma.len() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: pi.n(),
            found: sigma.len(),
        });
    }
    let labels = pi.labels();
    Ok(sigma
        .images()
        .iter()
        .enumerate()
        .all(|(i, &j)| labels[i] == labels[j]))
}

/// Whether every block of `finer` lies inside a single block of `coarser`.
pub fn refines_partition(finer: &SetPartition, coarser: &SetPartition) -> Result<bool> {
    if finer.n() != coarser.n() {
        return Err(Error::DimensionMismatch {
            expected: coarser.n(),
            found: finer.n(),
        });
    }
    let labels = coarser.labels();
    Ok(finer
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&x| labels[x] == labels[b[0]])))
}

/// Number of blocks of `pi` that meet `block`.
pub fn restrict_blocks(pi: &SetPartition, block: &[usize]) -> usize {
    let labels = pi.labels();
    let mut hit = vec![false; pi.block_count()];
    for &x in block {
        if let Some(&l) = labels.get(x) {
            hit[l] = true;
        }
    }
    hit.into_iter().filter(|&h| h).count()
}

// ---------------------------------------------------------------------------
// Integer partitions
// ---------------------------------------------------------------------------

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidIntegerPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIntegerPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIntegerPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// `(n)`
    pub fn row(n: usize) -> Self {
        Self { parts: vec![n] }
    }

    /// `(1, .., 1)`
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Order of the centraliser of a permutation with this cycle type:
    /// `prod_i i^{m_i} m_i!`.
    pub fn centralizer_order(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] == part {
                m += 1;
                i += 1;
                z *= part as u64 * m;
            }
        }
        z
    }

    /// Size of the conjugacy class of this cycle type.
    pub fn class_size(&self) -> u64 {
        factorial_u64(self.size()) / self.centralizer_order()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first and
/// `(1, .., 1)` last.
pub fn integer_partitions(n: usize) -> Vec<IntegerPartition> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut parts = vec![n];
    loop {
        out.push(IntegerPartition {
            parts: parts.clone(),
        });
        // Rightmost part greater than one gets decremented; the freed units
        // are regrouped in parts no larger than the new value.
        let Some(idx) = parts.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = parts.len() - idx - 1;
        let value = parts[idx] - 1;
        parts.truncate(idx);
        parts.push(value);
        let mut rest = ones + 1;
        while rest > 0 {
            let take = rest.min(value);
            parts.push(take);
            rest -= take;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

fn stirling2_table() -> &'static Vec<Vec<BigUint>> {
    static TABLE: OnceLock<Vec<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| stirling2_rows(STIRLING_TABLE_N))
}

fn stirling2_rows(max_n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = if k < n {
                    prev[k].clone() * k
                } else {
                    BigUint::zero()
                };
                let open = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    BigUint::zero()
                };
                stay + open
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Stirling number of the second kind: partitions of an `n`-set into
/// exactly `k` blocks. Zero when `k > n`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n <= STIRLING_TABLE_N {
        stirling2_table()[n][k].clone()
    } else {
        stirling2_rows(n)[n][k].clone()
    }
}

/// Set partitions of an `n`-set with at most `k` blocks.
pub fn bell_upto(n: usize, k: usize) -> BigUint {
    (1..=k.min(n)).map(|j| stirling2(n, j)).sum()
}

pub fn bell(n: usize) -> BigUint {
    if n == 0 {
        BigUint::one()
    } else {
        bell_upto(n, n)
    }
}

type RencontresTable = Vec<Vec<Vec<BigUint>>>;

fn rencontres_table() -> &'static RencontresTable {
    static TABLE: OnceLock<RencontresTable> = OnceLock::new();
    TABLE.get_or_init(|| rencontres_rows(RENCONTRES_TABLE_N))
}

/// `table[n][k][l]` by insertion of the last element: as a new fixed point,
/// into one of the `n-1-l` positions of a non-trivial cycle, or into one of
/// the `l+1` fixed points of a smaller permutation.
fn rencontres_rows(max_n: usize) -> RencontresTable {
    let mut table: RencontresTable = Vec::with_capacity(max_n + 1);
    table.push(vec![vec![BigUint::one()]]);
    for n in 1..=max_n {
        let prev = &table[n - 1];
        let get = |k: usize, l: usize| -> BigUint {
            prev.get(k)
                .and_then(|row| row.get(l))
                .cloned()
                .unwrap_or_default()
        };
        let mut layer = vec![vec![BigUint::zero(); n + 1]; n + 1];
        for (k, row) in layer.iter_mut().enumerate() {
            for (l, cell) in row.iter_mut().enumerate() {
                let mut v = BigUint::zero();
                if k >= 1 && l >= 1 {
                    v += get(k - 1, l - 1);
                }
                if n - 1 > l {
                    v += get(k, l) * (n - 1 - l);
                }
                v += get(k, l + 1) * (l + 1);
                *cell = v;
            }
        }
        table.push(layer);
    }
    table
}

/// Generalised rencontres number: permutations of `[n]` with exactly `k`
/// cycles and exactly `l` fixed points. Zero outside the support.
pub fn rencontres_c(n: usize, k: usize, l: usize) -> BigUint {
    if k > n || l > n {
        return BigUint::zero();
    }
    if n <= RENCONTRES_TABLE_N {
        rencontres_table()[n][k][l].clone()
    } else {
        rencontres_rows(n)[n][k][l].clone()
    }
}

/// Fixed-point-free permutations of `[n]` with `k` cycles.
pub fn derangement_g(n: usize, k: usize) -> BigUint {
    rencontres_c(n, k, 0)
}

/// Permutations of `[n]` with exactly `l` fixed points.
pub fn rencontres_f(n: usize, l: usize) -> BigUint {
    (0..=n).map(|k| rencontres_c(n, k, l)).sum()
}
