//! Counting non-decreasing level sequences.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;

use crate::exact::{binomial, e_lower_bound};

/// Number of non-decreasing sequences of length `t` over `{1..=L}`:
/// `C(t + L - 1, t)`.
pub fn count_legal_sequences(levels: u64, t: u64) -> BigUint {
    assert!(levels >= 1, "need at least one level");
    binomial(t + levels - 1, t)
}

/// The balls-in-bins count `C(t + L, t)`, which also admits a zero first gap
/// and therefore exceeds [`count_legal_sequences`] for `L >= 1, t >= 1`.
pub fn stars_and_bars_count(levels: u64, t: u64) -> BigUint {
    binomial(t + levels, t)
}

/// Probability that `t` independent uniform levels in `{1..=L}` are
/// non-decreasing, exactly.
pub fn legal_path_probability(levels: u64, t: u64) -> BigRational {
    let num = BigInt::from(count_legal_sequences(levels, t));
    let den = BigInt::from(BigUint::from(levels).pow(t as u32));
    BigRational::new(num, den)
}

/// Whether `legal_path_probability(L, t) <= (e (t + L) / (L t))^t`.
///
/// Decided exactly: the right side is replaced by a rational lower bound
/// (using a rational `e_lo < e`), so a `true` answer is rigorous.
pub fn legal_path_bound_holds(levels: u64, t: u64) -> bool {
    assert!(t >= 1, "bound is stated for t >= 1");
    let t_u32 = t as u32;
    let base = e_lower_bound()
        * BigRational::new(BigInt::from(t + levels), BigInt::from(levels * t));
    let rhs = Pow::pow(base, t_u32);
    legal_path_probability(levels, t) <= rhs
}
