use rand::Rng;
use serde::Serialize;

use super::relevant_vicinity;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphOracle};
use crate::ordering::RankingFunction;
use crate::par::{map_indexed, trial_rng, Execution};
use crate::stats::Summary;

/// One `(seed, center)` exploration, as emitted in JSON lines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VicinityRecord {
    pub n: usize,
    pub d: f64,
    #[serde(rename = "L")]
    pub levels: u32,
    pub k: usize,
    pub seed: u64,
    pub center: usize,
    pub t_v: usize,
    pub t_e: usize,
    pub queries: u64,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VicinityStats {
    pub records: Vec<VicinityRecord>,
    pub t_v: Summary,
    pub t_e: Summary,
    pub t_e_squared: Summary,
    pub queries: Summary,
    pub budget_exceeded: usize,
}

impl VicinityStats {
    pub fn from_records(records: Vec<VicinityRecord>) -> Self {
        let ok: Vec<&VicinityRecord> = records.iter().filter(|r| !r.budget_exceeded).collect();
        let col = |f: &dyn Fn(&VicinityRecord) -> f64| ok.iter().map(|r| f(r)).collect::<Vec<_>>();
        Self {
            t_v: Summary::of(&col(&|r| r.t_v as f64)),
            t_e: Summary::of(&col(&|r| r.t_e as f64)),
            t_e_squared: Summary::of(&col(&|r| (r.t_e * r.t_e) as f64)),
            queries: Summary::of(&col(&|r| r.queries as f64)),
            budget_exceeded: records.len() - ok.len(),
            records,
        }
    }
}

/// Ranking seed used for trial `t` of a run with master seed `master`.
pub fn trial_ranking_seed(master: u64, t: usize) -> u64 {
    use rand::RngCore;
    trial_rng(master, t as u64 ^ 0x5eed_0000_0000_0000).next_u64()
}

/// Samples `trials` ranking seeds and, per seed, `sample_size` uniformly
/// random centers, exploring each center's relevant vicinity.
///
/// Budget overruns are recorded, not fatal.
#[allow(clippy::too_many_arguments)]
pub fn vicinity_stats(
    graph: &Graph,
    d: f64,
    levels: u32,
    k: usize,
    sample_size: usize,
    trials: usize,
    rng_seed: u64,
    budget: usize,
    exec: Execution,
) -> Result<VicinityStats> {
    let n = graph.num_vertices();
    if n == 0 {
        return Ok(VicinityStats::from_records(Vec::new()));
    }
    let per_trial = map_indexed(exec, trials, |t| -> Result<Vec<VicinityRecord>> {
        let seed = trial_ranking_seed(rng_seed, t);
        let rf = RankingFunction::sample(n, levels, k, &seed.to_le_bytes())?;
        let mut rng = trial_rng(rng_seed, t as u64);
        let mut out = Vec::with_capacity(sample_size);
        for _ in 0..sample_size {
            let center = rng.random_range(0..n);
            let mut oracle = GraphOracle::new(graph);
            let record = |t_v, t_e, queries, budget_exceeded| VicinityRecord {
                n,
                d,
                levels,
                k,
                seed,
                center,
                t_v,
                t_e,
                queries,
                budget_exceeded,
            };
            out.push(match relevant_vicinity(&mut oracle, &rf, center, budget) {
                Ok(v) => record(v.t_v, v.t_e, v.queries, false),
                Err(Error::BudgetExceeded { .. }) => record(0, 0, oracle.queries(), true),
                Err(e) => return Err(e),
            });
        }
        Ok(out)
    });
    let mut records = Vec::with_capacity(trials * sample_size);
    for chunk in per_trial {
        records.extend(chunk?);
    }
    Ok(VicinityStats::from_records(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_trivial() {
        let g = Graph::empty(50);
        let s = vicinity_stats(&g, 0.0, 1, 1, 10, 3, 1, 100, Execution::default()).unwrap();
        assert_eq!(s.records.len(), 30);
        assert!(s.records.iter().all(|r| r.t_v == 1 && r.t_e == 0 && r.queries == 1));
    }

    #[test]
    fn budget_overruns_are_counted() {
        let g = Graph::complete(30);
        let s = vicinity_stats(&g, 29.0, 1, 1, 5, 2, 7, 3, Execution::Sequential).unwrap();
        assert!(s.budget_exceeded > 0);
    }

    #[test]
    fn reproducible() {
        let g = Graph::path(200);
        let a = vicinity_stats(&g, 2.0, 8, 4, 20, 4, 99, 1000, Execution::Sequential).unwrap();
        let b = vicinity_stats(&g, 2.0, 8, 4, 20, 4, 99, 1000, Execution::Parallel).unwrap();
        assert_eq!(a.records, b.records);
    }
}
