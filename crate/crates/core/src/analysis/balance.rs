use rand::Rng;
use serde::Serialize;

use super::report::Verdict;
use crate::error::{param_err, Result};
use crate::graph::{generate, GeneratorSpec, GraphOracle};
use crate::ordering::{default_k, level_balance_check, RankingFunction};
use crate::par::{map_indexed, trial_rng, Execution};
use crate::vicinity::{containing_vicinity, explore, trial_ranking_seed, LevelCache, Traversal};

/// Allowed fraction of qualifying explorations with a level over `2m/L`.
pub const OVERLOAD_FRACTION: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct BalanceParams {
    pub n: usize,
    pub d: f64,
    #[serde(rename = "L")]
    pub levels: u32,
    pub k: Option<usize>,
    pub seeds: usize,
    pub centers_per_seed: usize,
    /// Explorations hashing fewer ids are not counted; default `L log2 n`.
    pub min_m: Option<usize>,
    pub budget: usize,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BalanceTally {
    pub explorations: usize,
    pub qualifying: usize,
    pub overloaded: usize,
    pub fraction: f64,
    pub worst_ratio: f64,
    pub mean_m: f64,
}

impl BalanceTally {
    fn add(&mut self, m: usize, ratio: f64, min_m: usize) {
        self.explorations += 1;
        if m >= min_m {
            self.qualifying += 1;
            self.mean_m += m as f64;
            self.worst_ratio = self.worst_ratio.max(ratio);
            if ratio > 2.0 {
                self.overloaded += 1;
            }
        }
    }

    fn merge(&mut self, other: &BalanceTally) {
        self.explorations += other.explorations;
        self.qualifying += other.qualifying;
        self.overloaded += other.overloaded;
        self.worst_ratio = self.worst_ratio.max(other.worst_ratio);
        self.mean_m += other.mean_m;
    }

    fn finish(&mut self) {
        if self.qualifying > 0 {
            self.fraction = self.overloaded as f64 / self.qualifying as f64;
            self.mean_m /= self.qualifying as f64;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BalanceExperimentReport {
    pub params: BalanceParams,
    pub min_m: usize,
    pub k: usize,
    /// Hash queries of relevant-vicinity explorations.
    pub relevant: BalanceTally,
    /// Hash queries of containing-vicinity explorations.
    pub containing: BalanceTally,
    pub verdicts: Vec<Verdict>,
}

impl BalanceExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Per-level load of the hash queries made by vicinity explorations, over
/// many ranking seeds, one fresh graph per seed.
pub fn level_balance_experiment(params: &BalanceParams, exec: Execution) -> Result<BalanceExperimentReport> {
    if params.n < 2 || params.levels < 1 {
        return param_err("level balance: need n >= 2 and L >= 1");
    }
    let k = params.k.unwrap_or_else(|| default_k(params.d, params.n, 1.0));
    let min_m = params
        .min_m
        .unwrap_or_else(|| (params.levels as f64 * (params.n as f64).log2()).ceil() as usize);
    let per_seed = map_indexed(exec, params.seeds, |s| -> Result<(BalanceTally, BalanceTally)> {
        let graph = generate(&GeneratorSpec::Gnp {
            n: params.n,
            d: params.d,
            rng_seed: params.rng_seed.wrapping_add(s as u64),
        })?;
        let seed = trial_ranking_seed(params.rng_seed, s);
        let rf = RankingFunction::sample(params.n, params.levels, k, &seed.to_le_bytes())?;
        let mut rng = trial_rng(params.rng_seed, s as u64);
        let (mut rel, mut cont) = (BalanceTally::default(), BalanceTally::default());
        for _ in 0..params.centers_per_seed {
            let v = rng.random_range(0..params.n);
            let mut cache = LevelCache::new(&rf);
            explore(&mut GraphOracle::new(&graph), &mut cache, v, params.budget, Traversal::DepthFirst)?;
            let hashed = cache.hashed_ids();
            rel.add(hashed.len(), level_balance_check(&rf, &hashed)?.max_ratio, min_m);
            let cv = containing_vicinity(&mut GraphOracle::new(&graph), &rf, v, params.budget)?;
            cont.add(cv.hashed.len(), level_balance_check(&rf, &cv.hashed)?.max_ratio, min_m);
        }
        Ok((rel, cont))
    });
    let (mut relevant, mut containing) = (BalanceTally::default(), BalanceTally::default());
    for r in per_seed {
        let (a, b) = r?;
        relevant.merge(&a);
        containing.merge(&b);
    }
    relevant.finish();
    containing.finish();
    let verdict = |name: &str, t: &BalanceTally| {
        Verdict::new(
            name,
            t.qualifying > 0 && t.fraction < OVERLOAD_FRACTION,
            format!(
                "{} of {} explorations with m >= {min_m} have a level above 2m/L (fraction {:.2e}, limit {OVERLOAD_FRACTION:e}; worst ratio {:.3})",
                t.overloaded, t.qualifying, t.fraction, t.worst_ratio
            ),
        )
    };
    let verdicts = vec![
        verdict("relevant_vicinity_balance", &relevant),
        verdict("containing_vicinity_balance", &containing),
    ];
    Ok(BalanceExperimentReport {
        params: params.clone(),
        min_m,
        k,
        relevant,
        containing,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_counts_everything() {
        let p = BalanceParams {
            n: 1 << 10,
            d: 3.0,
            levels: 16,
            k: Some(20),
            seeds: 3,
            centers_per_seed: 50,
            min_m: Some(1),
            budget: 1_000_000,
            rng_seed: 4,
        };
        let r = level_balance_experiment(&p, Execution::default()).unwrap();
        assert_eq!(r.relevant.explorations, 150);
        assert_eq!(r.relevant.qualifying, 150);
        // tiny hashed sets are routinely unbalanced
        assert!(r.relevant.overloaded > 0);
        assert!(r.containing.mean_m >= r.relevant.mean_m);
    }
}
