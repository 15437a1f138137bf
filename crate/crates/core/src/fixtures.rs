//! Published reference data: the 8x8 test matrix `X1` and the printed tables
//! of `c(n, k, l)` for `n = 2..=10`.
//!
//! Both are transcribed exactly as printed, so they are suitable for checking
//! the code against the publication, not the other way round; in particular
//! the printed `n = 2` table is kept even where it disagrees with the count.

use crate::io::{parse_matrix, MatrixFormat};
use crate::matrix::Matrix;

/// Upper triangle of `X1`, two decimals, in `csv-upper-triangular-symmetric`
/// layout.
pub const X1_UPPER_CSV: &str = "\
# X1: symmetric positive definite 8x8 test matrix (upper triangle)
4.42,3.13,3.14,3.45,4.01,3.85,3.39,2.70
2.70,1.99,2.44,3.07,2.83,2.27,1.84
3.52,2.26,2.73,2.43,2.85,2.36
3.57,3.01,3.17,2.93,1.90
4.12,3.69,3.01,2.03
3.91,3.03,2.08
3.27,2.22
2.33
";

pub fn x1() -> Matrix {
    parse_matrix(X1_UPPER_CSV, MatrixFormat::CsvUpperTriangularSymmetric)
        .expect("embedded fixture parses")
}

/// Printed "Actual" values for `X1` at `alpha = -2, -3, -2.5, 1`, with the
/// relative tolerance implied by the printed precision.
pub const X1_PRINTED_VALUES: [(f64, f64, f64); 4] = [
    (-2.0, 407.52, 0.005),
    (-3.0, 117488.0, 0.005),
    (-2.5, -44088.0, 0.005),
    (1.0, 1.6e8, 0.05),
];

/// Printed rows `k = 1..=n` of each table; blank trailing cells are omitted.
const PRINTED: [&[&[u64]]; 9] = [
    // n = 2
    &[&[1], &[0, 2, 1]],
    // n = 3
    &[&[2], &[0, 3], &[0, 0, 0, 1]],
    // n = 4
    &[&[6], &[3, 8], &[0, 0, 6], &[0, 0, 0, 0, 1]],
    // n = 5
    &[
        &[24],
        &[20, 30],
        &[0, 15, 20],
        &[0, 0, 0, 10],
        &[0, 0, 0, 0, 0, 1],
    ],
    // n = 6
    &[
        &[120],
        &[130, 144],
        &[15, 120, 90],
        &[0, 0, 45, 40],
        &[0, 0, 0, 0, 15],
        &[0, 0, 0, 0, 0, 0, 1],
    ],
    // n = 7
    &[
        &[720],
        &[924, 840],
        &[210, 910, 504],
        &[0, 105, 420, 210],
        &[0, 0, 0, 105, 70],
        &[0, 0, 0, 0, 0, 21],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ],
    // n = 8
    &[
        &[5040],
        &[7308, 5760],
        &[2380, 7392, 3360],
        &[105, 1680, 3640, 1344],
        &[0, 0, 420, 1120, 420],
        &[0, 0, 0, 0, 210, 112],
        &[0, 0, 0, 0, 0, 0, 28],
        &[0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
    // n = 9
    &[
        &[40320],
        &[64224, 45360],
        &[26432, 65772, 25920],
        &[2520, 21420, 33264, 10080],
        &[0, 945, 7560, 10920, 3024],
        &[0, 0, 0, 1260, 2520, 756],
        &[0, 0, 0, 0, 0, 378, 168],
        &[0, 0, 0, 0, 0, 0, 0, 36],
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
    // n = 10
    &[
        &[362880],
        &[623376, 403200],
        &[303660, 642240, 226800],
        &[44100, 264320, 328860, 86400],
        &[945, 25200, 107100, 110880, 25200],
        &[0, 0, 4725, 25200, 27300, 6048],
        &[0, 0, 0, 0, 3150, 5040, 1260],
        &[0, 0, 0, 0, 0, 0, 630, 240],
        &[0, 0, 0, 0, 0, 0, 0, 0, 45],
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
];

/// Smallest and largest `n` with a printed table.
pub const PRINTED_TABLE_RANGE: (usize, usize) = (2, 10);

/// The printed table for `n` as `rows[k - 1][l]`, `k = 1..=n`, `l = 0..=n`,
/// with blanks as zero. `None` outside [`PRINTED_TABLE_RANGE`].
pub fn printed_rencontres_table(n: usize) -> Option<Vec<Vec<u64>>> {
    let (lo, hi) = PRINTED_TABLE_RANGE;
    if !(lo..=hi).contains(&n) {
        return None;
    }
    Some(
        PRINTED[n - lo]
            .iter()
            .map(|row| {
                let mut padded = row.to_vec();
                padded.resize(n + 1, 0);
                padded
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det;

    #[test]
    fn x1_is_symmetric_positive_definite() {
        let m = x1();
        assert_eq!(m.n(), 8);
        assert!(m.is_real() && m.is_symmetric(0.0));
        assert_eq!(m[(0, 0)].re, 4.42);
        assert_eq!(m[(0, 7)].re, 2.70);
        assert_eq!(m[(7, 0)].re, 2.70);
        // Sylvester: every leading principal minor is positive.
        for k in 1..=8 {
            let idx: Vec<usize> = (0..k).collect();
            assert!(det(&m.principal_submatrix(&idx)).re > 0.0, "k={k}");
        }
    }

    #[test]
    fn table_shapes() {
        assert!(printed_rencontres_table(1).is_none());
        assert!(printed_rencontres_table(11).is_none());
        for n in 2..=10 {
            let t = printed_rencontres_table(n).unwrap();
            assert_eq!(t.len(), n);
            assert!(t.iter().all(|r| r.len() == n + 1));
            assert_eq!(t[n - 1][n], 1);
        }
        assert_eq!(printed_rencontres_table(10).unwrap()[2][2], 226800);
    }
}
