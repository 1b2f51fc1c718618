//! Mixed degrees on products of projective lines.

use num_rational::BigRational;
use num_traits::Zero;

/// Multilinear degree of `prod_k O(rows[k])` on `(P^1)^m`: the permanent of
/// the square matrix `rows`.
pub fn mixed_degree(rows: &[Vec<BigRational>]) -> BigRational {
    let m = rows.len();
    assert!(rows.iter().all(|r| r.len() == m), "mixed_degree needs a square matrix");
    assert!(m < 24, "mixed_degree supports at most 23 factors");
    // dp[mask]: permanent of the first popcount(mask) rows on the columns in mask
    let mut dp = vec![BigRational::zero(); 1 << m];
    dp[0] = num_traits::One::one();
    for mask in 1usize..(1 << m) {
        let k = mask.count_ones() as usize - 1;
        let mut acc = BigRational::zero();
        for (j, a) in rows[k].iter().enumerate() {
            if mask & (1 << j) != 0 && !a.is_zero() && !dp[mask ^ (1 << j)].is_zero() {
                acc += a * &dp[mask ^ (1 << j)];
            }
        }
        dp[mask] = acc;
    }
    dp[(1 << m) - 1].clone()
}

/// Integer permanent used by the engine, where rows are small.
pub(crate) fn permanent(rows: &[Vec<i64>]) -> i128 {
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == m));
    if m == 0 {
        return 1;
    }
    let mut dp = vec![0i128; 1 << m];
    dp[0] = 1;
    for mask in 1usize..(1 << m) {
        let k = mask.count_ones() as usize - 1;
        let mut acc = 0i128;
        for (j, &a) in rows[k].iter().enumerate() {
            if a != 0 && mask & (1 << j) != 0 {
                acc += a as i128 * dp[mask ^ (1 << j)];
            }
        }
        dp[mask] = acc;
    }
    dp[(1 << m) - 1]
}
