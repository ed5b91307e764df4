//! Exact big-integer and big-rational helpers.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `C(n, k)` exactly; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// A rational strictly below `e`: the Taylor partial sum with 30 terms.
pub fn e_lower_bound() -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for i in 1..=30u64 {
        sum += &term;
        term /= BigRational::from_integer(i.into());
    }
    sum
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
    }

    #[test]
    fn e_bound_is_tight_and_below() {
        let e = to_f64(&e_lower_bound());
        assert!(e <= std::f64::consts::E);
        assert!(std::f64::consts::E - e < 1e-15);
    }
}
