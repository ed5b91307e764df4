//! Hash-induced rankings of `[n]`.
//!
//! A [`RankingFunction`] is a member of the degree-`(k-1)` polynomial family
//! over a prime field, range-reduced to levels `1..=L`:
//!
//! ```text
//! level(v) = 1 + (poly(v) mod p) mod L
//! ```
//!
//! Any `k` distinct points get independent uniform field values; the final
//! `mod L` adds a bias of at most `L/p` per value, which the default modulus
//! makes negligible. The ranking orders ids by `(level, id)`.

mod balance;
pub(crate) mod field;
mod legal;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use balance::{level_balance_check, BalanceReport};
pub use legal::{
    count_legal_sequences, legal_path_bound_holds, legal_path_probability, stars_and_bars_count,
};

use crate::error::{param_err, Result};
use field::{add_mod, mul_mod, next_prime, MERSENNE_61};

/// Slack factor between the modulus and `n * L`.
const MODULUS_SLACK: u64 = 1 << 10;

/// The rank `(level, id)` of a vertex; ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rank {
    pub level: u32,
    pub id: usize,
}

/// A sampled hash `h: [n] -> [L]` and the ordering it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingFunction {
    n: usize,
    levels: u32,
    p: u64,
    coeffs: Vec<u64>,
    seed: Vec<u8>,
}

/// Serializable description from which a ranking is rebuilt exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingParams {
    pub n: usize,
    #[serde(rename = "L")]
    pub levels: u32,
    pub k: usize,
    pub seed_hex: String,
    pub p: u64,
}

impl RankingFunction {
    /// Samples the family member selected by `seed`.
    ///
    /// The `k` coefficients are drawn from a ChaCha20 stream keyed by the
    /// SHA-256 digest of the seed, so the same seed always yields the same
    /// function.
    pub fn sample(n: usize, levels: u32, k: usize, seed: &[u8]) -> Result<Self> {
        let p = default_modulus(n, levels);
        Self::sample_with_modulus(n, levels, k, seed, p)
    }

    /// Like [`RankingFunction::sample`] with an explicit prime modulus.
    pub fn sample_with_modulus(n: usize, levels: u32, k: usize, seed: &[u8], p: u64) -> Result<Self> {
        check_shape(n, levels, k, p)?;
        let digest: [u8; 32] = Sha256::digest(seed).into();
        let mut rng = ChaCha20Rng::from_seed(digest);
        let coeffs = (0..k).map(|_| rng.random_range(0..p)).collect();
        Ok(Self {
            n,
            levels,
            p,
            coeffs,
            seed: seed.to_vec(),
        })
    }

    /// A function with explicitly chosen coefficients (constant term first).
    pub fn from_coefficients(n: usize, levels: u32, p: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_shape(n, levels, coeffs.len(), p)?;
        if coeffs.iter().any(|&c| c >= p) {
            return param_err("coefficients must be reduced modulo p");
        }
        Ok(Self {
            n,
            levels,
            p,
            coeffs,
            seed: Vec::new(),
        })
    }

    pub fn from_params(params: &RankingParams) -> Result<Self> {
        let seed = parse_seed_hex(&params.seed_hex)?;
        Self::sample_with_modulus(params.n, params.levels, params.k, &seed, params.p)
    }

    pub fn params(&self) -> RankingParams {
        RankingParams {
            n: self.n,
            levels: self.levels,
            k: self.k(),
            seed_hex: format!("0x{}", hex::encode(&self.seed)),
            p: self.p,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Bits of true randomness: `k * ceil(log2 p)`.
    pub fn seed_bits(&self) -> u64 {
        self.k() as u64 * (64 - (self.p - 1).leading_zeros()) as u64
    }

    /// Raw polynomial value in the field, by Horner's rule.
    pub fn field_value(&self, v: usize) -> u64 {
        let p = self.p;
        let x = v as u64 % p;
        if p == MERSENNE_61 && self.coeffs.len() >= 16 {
            return mersenne_eval(&self.coeffs, x);
        }
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    /// Level of `v`, in `1..=L`.
    pub fn level(&self, v: usize) -> u32 {
        1 + (self.field_value(v) % self.levels as u64) as u32
    }

    pub fn rank(&self, v: usize) -> Rank {
        Rank {
            level: self.level(v),
            id: v,
        }
    }

    /// Whether `u` comes strictly before `v` in the induced ordering.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank(u) < self.rank(v)
    }

    pub fn compare(&self, u: usize, v: usize) -> Ordering {
        self.rank(u).cmp(&self.rank(v))
    }
}

const LANES: usize = 8;

#[inline(always)]
fn fold61(y: u128) -> u64 {
    ((y as u64) & MERSENNE_61) + (y >> 61) as u64
}

/// Horner's rule modulo 2^61 - 1 over eight interleaved chains in `x^8`.
/// Accumulators stay below 2^62 and are reduced fully only at the end.
fn mersenne_eval(coeffs: &[u64], x: u64) -> u64 {
    let p = MERSENNE_61;
    let mut pows = [1u64; LANES];
    for j in 1..LANES {
        pows[j] = mul_mod(pows[j - 1], x, p);
    }
    let x8 = mul_mod(pows[LANES - 1], x, p);
    let mut acc = [0u64; LANES];
    let mut chunks = coeffs.rchunks_exact(LANES);
    for chunk in &mut chunks {
        for j in 0..LANES {
            let t = fold61(acc[j] as u128 * x8 as u128) + chunk[j];
            acc[j] = (t & p) + (t >> 61);
        }
    }
    let mut total = 0;
    for j in 0..LANES {
        total = add_mod(total, mul_mod(acc[j] % p, pows[j], p), p);
    }
    for &c in chunks.remainder().iter().rev() {
        total = add_mod(mul_mod(total, x, p), c, p);
    }
    total
}

fn check_shape(n: usize, levels: u32, k: usize, p: u64) -> Result<()> {
    if levels == 0 {
        return param_err("ranking: L must be at least 1");
    }
    if k == 0 {
        return param_err("ranking: k must be at least 1");
    }
    if !field::is_prime(p) || p >= 1 << 62 {
        return param_err(format!("ranking: modulus {p} must be a prime below 2^62"));
    }
    if (p as u128) < n as u128 || p < levels as u64 {
        return param_err(format!("ranking: modulus {p} must be at least max(n, L)"));
    }
    Ok(())
}

/// Prime modulus of at least `n * L * 2^10`: the Mersenne prime 2^61 - 1 when
/// that suffices, otherwise the next prime above the target.
pub fn default_modulus(n: usize, levels: u32) -> u64 {
    let target = (n.max(1) as u128) * (levels.max(1) as u128) * MODULUS_SLACK as u128;
    if target <= MERSENNE_61 as u128 {
        MERSENNE_61
    } else {
        next_prime(target.min((1u128 << 62) - 1 - (1 << 20)) as u64)
    }
}

/// Default level count: `4 * ceil(d)` rounded up to a power of two.
pub fn default_levels(d: f64) -> u32 {
    let base = (4.0 * d.max(0.0).ceil()) as u32;
    base.max(1).next_power_of_two()
}

/// Default independence: `ceil(6 * d * c * log2 n)`, at least 1.
pub fn default_k(d: f64, n: usize, c: f64) -> usize {
    let log_n = (n.max(2) as f64).log2();
    ((6.0 * d * c * log_n).ceil() as usize).max(1)
}

/// Parses `0xBEEF`/`beef` style hex into bytes (odd lengths get a leading 0).
pub fn parse_seed_hex(s: &str) -> Result<Vec<u8>> {
    let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    if digits.is_empty() {
        return param_err("seed: empty hex string");
    }
    let padded = if digits.len() % 2 == 1 {
        format!("0{digits}")
    } else {
        digits.to_string()
    };
    hex::decode(&padded).or_else(|e| param_err(format!("seed {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleaved_evaluation_matches_horner() {
        for k in (1..=20).chain([33, 270]) {
            for p in [MERSENNE_61, 1_000_003] {
                let rf = RankingFunction::sample_with_modulus(5000, 16, k, &[k as u8], p).unwrap();
                for v in [0usize, 1, 2, 17, 4999] {
                    let x = v as u64 % p;
                    let horner = rf
                        .coeffs
                        .iter()
                        .rev()
                        .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p as u128);
                    assert_eq!(rf.field_value(v) as u128, horner, "k={k} p={p} v={v}");
                }
            }
        }
    }

    #[test]
    fn degree_zero_polynomial_is_constant() {
        let rf = RankingFunction::sample(100, 8, 1, b"x").unwrap();
        let first = rf.level(0);
        assert!((0..100).all(|v| rf.level(v) == first));
        // ties broken by id: the ordering is the id order
        assert!((1..100).all(|v| rf.precedes(v - 1, v)));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = RankingFunction::sample(1000, 16, 10, &[0xbe, 0xef]).unwrap();
        let b = RankingFunction::sample(1000, 16, 10, &[0xbe, 0xef]).unwrap();
        assert_eq!(a, b);
        assert!((0..1000).all(|v| a.level(v) == b.level(v)));
        let c = RankingFunction::sample(1000, 16, 10, &[0xbe, 0xee]).unwrap();
        assert!((0..1000).any(|v| a.level(v) != c.level(v)));
    }

    #[test]
    fn levels_in_range() {
        let rf = RankingFunction::sample(5000, 16, 20, b"range").unwrap();
        assert!((0..5000).all(|v| (1..=16).contains(&rf.level(v))));
    }

    #[test]
    fn tie_broken_by_id() {
        // level(v) = 1 + (c0 mod 8): constant 1 -> every level is 2
        let rf = RankingFunction::from_coefficients(10, 8, 11, vec![1]).unwrap();
        assert_eq!(rf.level(1), 2);
        assert_eq!(rf.level(5), 2);
        assert!(rf.precedes(1, 5));
        assert!(!rf.precedes(5, 1));
        assert!(!rf.precedes(3, 3));
    }

    #[test]
    fn lower_level_first() {
        // level(v) = 1 + (v mod 11) mod 8
        let rf = RankingFunction::from_coefficients(10, 8, 11, vec![0, 1]).unwrap();
        assert_eq!(rf.level(2), 3);
        assert_eq!(rf.level(8), 1);
        assert!(rf.precedes(8, 2));
    }

    #[test]
    fn params_round_trip() {
        let rf = RankingFunction::sample(300, 8, 5, &[0x0b, 0xee, 0xf0]).unwrap();
        let json = serde_json::to_string(&rf.params()).unwrap();
        assert!(json.contains("\"L\":8"));
        let back: RankingParams = serde_json::from_str(&json).unwrap();
        assert_eq!(RankingFunction::from_params(&back).unwrap(), rf);
    }

    #[test]
    fn seed_hex_parsing() {
        assert_eq!(parse_seed_hex("0xBEEF").unwrap(), vec![0xbe, 0xef]);
        assert_eq!(parse_seed_hex("abc").unwrap(), vec![0x0a, 0xbc]);
        assert!(parse_seed_hex("0x").is_err());
        assert!(parse_seed_hex("zz").is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(RankingFunction::sample(10, 0, 1, b"s").is_err());
        assert!(RankingFunction::sample(10, 4, 0, b"s").is_err());
        assert!(RankingFunction::sample_with_modulus(10, 4, 2, b"s", 12).is_err());
        assert!(RankingFunction::sample_with_modulus(20, 4, 2, b"s", 11).is_err());
    }

    #[test]
    fn defaults() {
        assert_eq!(default_levels(3.0), 16);
        assert_eq!(default_levels(2.0), 8);
        assert_eq!(default_levels(0.0), 1);
        assert_eq!(default_k(3.0, 1 << 16, 1.0), 288);
        assert_eq!(default_modulus(1 << 16, 16), MERSENNE_61);
        assert!(default_modulus(1 << 16, 16) >= (1 << 16) * 16 * 1024);
    }

    #[test]
    fn seed_bits_reported() {
        let rf = RankingFunction::sample(1 << 16, 16, 288, b"s").unwrap();
        assert_eq!(rf.seed_bits(), 288 * 61);
    }
}
