use rand::Rng;
use serde::{Deserialize, Serialize};

use super::report::Verdict;
use crate::error::{param_err, Error, Result};
use crate::graph::{generate, GeneratorSpec, GraphOracle};
use crate::ordering::{default_k, default_levels, RankingFunction};
use crate::par::{map_indexed, trial_rng, Execution};
use crate::stats::{linear_slope, log_log_slope};
use crate::vicinity::{relevant_vicinity, trial_ranking_seed, VicinityRecord};

/// Threshold on fitted log-log slopes for "does not grow with n".
pub const FLAT_SLOPE: f64 = 0.15;
/// `t_v > TAIL_FACTOR * log2 n` counts as a tail event.
pub const TAIL_FACTOR: f64 = 8.0;
/// Allowed tail-event fraction per grid point.
pub const TAIL_FRACTION: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gnp,
    Regular,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(Family::Gnp),
            "regular" => Ok(Family::Regular),
            other => param_err(format!("unknown family {other:?}")),
        }
    }
}

impl Family {
    pub fn spec(self, n: usize, d: f64, rng_seed: u64) -> Result<GeneratorSpec> {
        Ok(match self {
            Family::Gnp => GeneratorSpec::Gnp { n, d, rng_seed },
            Family::Regular => {
                if d.fract() != 0.0 || d < 0.0 {
                    return param_err(format!("regular: degree must be a whole number, got {d}"));
                }
                GeneratorSpec::Regular {
                    n,
                    d: d as usize,
                    rng_seed,
                }
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingParams {
    pub family: Family,
    pub n_grid: Vec<usize>,
    pub d: f64,
    /// Inquiries per grid point.
    pub inquiries: usize,
    /// Independent (graph, ranking seed) pairs per grid point; inquiries are
    /// split evenly across them.
    pub groups: usize,
    #[serde(rename = "L")]
    pub levels: Option<u32>,
    pub k: Option<usize>,
    pub budget: usize,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub log2_n: f64,
    #[serde(rename = "L")]
    pub levels: u32,
    pub k: usize,
    pub inquiries: usize,
    pub budget_exceeded: usize,
    pub mean_t_v: f64,
    pub max_t_v: usize,
    pub max_over_log2_n: f64,
    pub tail_fraction: f64,
    pub mean_t_e: f64,
    pub mean_t_e_squared: f64,
    pub mean_queries: f64,
    /// Every inquiry used exactly `t_v` queries.
    pub queries_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub params: ScalingParams,
    pub rows: Vec<ScalingRow>,
    pub slope_t_e: f64,
    pub slope_t_e_squared: f64,
    /// Log-log slope of the maximum `t_v` against `log2 n`.
    pub slope_max_t_v: f64,
    /// Linear slope of `max t_v / log2 n` against `log2 n`.
    pub slope_max_ratio: f64,
    pub records: Vec<VicinityRecord>,
    pub verdicts: Vec<Verdict>,
}

impl ScalingReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Only the verdicts on `t_e` and `t_e^2`.
    pub fn moment_verdicts(&self) -> Vec<Verdict> {
        self.verdicts
            .iter()
            .filter(|v| v.name.starts_with("slope_t_e"))
            .cloned()
            .collect()
    }
}

fn row(n: usize, levels: u32, k: usize, records: &[VicinityRecord]) -> ScalingRow {
    let ok: Vec<&VicinityRecord> = records.iter().filter(|r| !r.budget_exceeded).collect();
    let count = ok.len().max(1) as f64;
    let log2_n = (n as f64).log2();
    let max_t_v = ok.iter().map(|r| r.t_v).max().unwrap_or(0);
    let tail = ok.iter().filter(|r| r.t_v as f64 > TAIL_FACTOR * log2_n).count();
    ScalingRow {
        n,
        log2_n,
        levels,
        k,
        inquiries: records.len(),
        budget_exceeded: records.len() - ok.len(),
        mean_t_v: ok.iter().map(|r| r.t_v as f64).sum::<f64>() / count,
        max_t_v,
        max_over_log2_n: max_t_v as f64 / log2_n,
        // overruns are certainly above the tail threshold
        tail_fraction: (tail + records.len() - ok.len()) as f64 / records.len().max(1) as f64,
        mean_t_e: ok.iter().map(|r| r.t_e as f64).sum::<f64>() / count,
        mean_t_e_squared: ok.iter().map(|r| (r.t_e * r.t_e) as f64).sum::<f64>() / count,
        mean_queries: ok.iter().map(|r| r.queries as f64).sum::<f64>() / count,
        queries_match: ok.iter().all(|r| r.queries == r.t_v as u64),
    }
}

/// Relevant-vicinity statistics across a grid of graph sizes, with fitted
/// growth rates for the size tail and the first two moments of `t_e`.
pub fn scaling_experiment(params: &ScalingParams, exec: Execution) -> Result<ScalingReport> {
    if params.groups == 0 || params.inquiries < params.groups {
        return param_err("scaling: need 1 <= groups <= inquiries");
    }
    if params.n_grid.len() < 2 || params.n_grid.iter().any(|&n| n < 2) {
        return param_err("scaling: need at least two grid sizes, each >= 2");
    }
    let levels = params.levels.unwrap_or_else(|| default_levels(params.d));
    let mut rows = Vec::new();
    let mut all_records = Vec::new();
    for (gi, &n) in params.n_grid.iter().enumerate() {
        let k = params.k.unwrap_or_else(|| default_k(params.d, n, 1.0));
        let per_group = params.inquiries / params.groups;
        let extra = params.inquiries % params.groups;
        let stream = params.rng_seed ^ ((gi as u64) << 40);
        let groups = map_indexed(exec, params.groups, |g| -> Result<Vec<VicinityRecord>> {
            let graph = generate(&params.family.spec(n, params.d, stream.wrapping_add(g as u64))?)?;
            let seed = trial_ranking_seed(stream, g);
            let rf = RankingFunction::sample(n, levels, k, &seed.to_le_bytes())?;
            let mut rng = trial_rng(stream, g as u64);
            let count = per_group + usize::from(g < extra);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let center = rng.random_range(0..n);
                let mut oracle = GraphOracle::new(&graph);
                let (t_v, t_e, queries, exceeded) =
                    match relevant_vicinity(&mut oracle, &rf, center, params.budget) {
                        Ok(v) => (v.t_v, v.t_e, v.queries, false),
                        Err(Error::BudgetExceeded { .. }) => (0, 0, oracle.queries(), true),
                        Err(e) => return Err(e),
                    };
                out.push(VicinityRecord {
                    n,
                    d: params.d,
                    levels,
                    k,
                    seed,
                    center,
                    t_v,
                    t_e,
                    queries,
                    budget_exceeded: exceeded,
                });
            }
            Ok(out)
        });
        let mut records = Vec::with_capacity(params.inquiries);
        for g in groups {
            records.extend(g?);
        }
        rows.push(row(n, levels, k, &records));
        all_records.extend(records);
    }

    let fit = |f: &dyn Fn(&ScalingRow) -> (f64, f64)| rows.iter().map(f).collect::<Vec<_>>();
    let slope_t_e = log_log_slope(&fit(&|r| (r.n as f64, r.mean_t_e)));
    let slope_t_e_squared = log_log_slope(&fit(&|r| (r.n as f64, r.mean_t_e_squared)));
    let slope_max_t_v = log_log_slope(&fit(&|r| (r.log2_n, r.max_t_v as f64)));
    let slope_max_ratio = linear_slope(&fit(&|r| (r.log2_n, r.max_over_log2_n)));

    let worst_tail = rows.iter().map(|r| r.tail_fraction).fold(0.0, f64::max);
    let verdicts = vec![
        Verdict::new(
            "max_t_v_at_most_linear_in_log_n",
            slope_max_t_v <= 1.0,
            format!(
                "log-log slope of max t_v vs log2 n = {slope_max_t_v:.3} (limit 1); ratios {:?}",
                rows.iter().map(|r| (r.max_over_log2_n * 100.0).round() / 100.0).collect::<Vec<_>>()
            ),
        ),
        Verdict::new(
            "tail_fraction",
            worst_tail < TAIL_FRACTION,
            format!("worst fraction with t_v > {TAIL_FACTOR} log2 n = {worst_tail:.2e} (limit {TAIL_FRACTION:e})"),
        ),
        Verdict::new(
            "slope_t_e",
            slope_t_e < FLAT_SLOPE,
            format!("log-log slope of mean t_e vs n = {slope_t_e:.4} (limit {FLAT_SLOPE})"),
        ),
        Verdict::new(
            "slope_t_e_squared",
            slope_t_e_squared < FLAT_SLOPE,
            format!("log-log slope of mean t_e^2 vs n = {slope_t_e_squared:.4} (limit {FLAT_SLOPE})"),
        ),
        Verdict::new(
            "queries_equal_t_v",
            rows.iter().all(|r| r.queries_match),
            "every inquiry used exactly t_v neighbor queries",
        ),
    ];
    Ok(ScalingReport {
        params: params.clone(),
        rows,
        slope_t_e,
        slope_t_e_squared,
        slope_max_t_v,
        slope_max_ratio,
        records: all_records,
        verdicts,
    })
}

/// The moment part of [`scaling_experiment`]: mean `t_e` and `t_e^2` should
/// not grow with `n`.
pub fn expected_moment_experiment(
    family: Family,
    n_grid: &[usize],
    d: f64,
    trials: usize,
    rng_seed: u64,
    exec: Execution,
) -> Result<ScalingReport> {
    let params = ScalingParams {
        family,
        n_grid: n_grid.to_vec(),
        d,
        inquiries: trials,
        groups: trials.clamp(1, 20),
        levels: None,
        k: None,
        budget: crate::vicinity::DEFAULT_BUDGET,
        rng_seed,
    };
    let mut report = scaling_experiment(&params, exec)?;
    report.verdicts = report.moment_verdicts();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_edges_no_growth() {
        let r = expected_moment_experiment(Family::Gnp, &[64, 256, 1024], 0.0, 200, 1, Execution::default()).unwrap();
        assert!(r.rows.iter().all(|row| row.mean_t_e == 0.0 && row.max_t_v == 1));
        assert_eq!((r.slope_t_e, r.slope_t_e_squared), (0.0, 0.0));
        assert!(r.passed());
    }

    #[test]
    fn perfect_matching_has_at_most_one_edge() {
        let r = expected_moment_experiment(Family::Regular, &[64, 256, 1024], 1.0, 300, 2, Execution::default()).unwrap();
        assert!(r.records.iter().all(|rec| rec.t_e == 1 && rec.t_v <= 2));
        assert!(r.passed());
    }

    #[test]
    fn rejects_bad_grids() {
        let mut p = ScalingParams {
            family: Family::Gnp,
            n_grid: vec![100],
            d: 3.0,
            inquiries: 10,
            groups: 2,
            levels: None,
            k: None,
            budget: 1000,
            rng_seed: 0,
        };
        assert!(scaling_experiment(&p, Execution::Sequential).is_err());
        p.n_grid = vec![100, 200];
        p.groups = 0;
        assert!(scaling_experiment(&p, Execution::Sequential).is_err());
        assert!(Family::Regular.spec(10, 2.5, 0).is_err());
    }

    #[test]
    fn reproducible_across_execution_modes() {
        let p = ScalingParams {
            family: Family::Gnp,
            n_grid: vec![128, 512],
            d: 3.0,
            inquiries: 60,
            groups: 4,
            levels: None,
            k: None,
            budget: 100_000,
            rng_seed: 3,
        };
        let a = scaling_experiment(&p, Execution::Sequential).unwrap();
        let b = scaling_experiment(&p, Execution::Parallel).unwrap();
        assert_eq!(a.records, b.records);
    }
}
