use std::collections::{HashSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use super::Graph;
use crate::error::{param_err, Error, Result};
use crate::par::{map_indexed, trial_rng, Execution};
use crate::stats::Summary;

/// Threshold on `edges / (d |S|)` used by the exposure bound.
pub const EXPOSURE_RATIO_LIMIT: f64 = 6.0;

const START_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct ExposureReport {
    pub subset_size: usize,
    pub d: f64,
    pub trials: usize,
    /// Per trial: edges with an endpoint in the exposed set, over `d * s`.
    pub ratios: Vec<f64>,
    pub summary: Summary,
    /// Fraction of trials whose ratio exceeds [`EXPOSURE_RATIO_LIMIT`].
    pub exceed_fraction: f64,
}

/// Repeated adaptive exposures of `s` vertices in BFS order from a random
/// start, measuring how many edges touch the exposed set.
pub fn exposure_neighborhood_experiment(
    graph: &Graph,
    d: f64,
    s: usize,
    trials: usize,
    rng_seed: u64,
    exec: Execution,
) -> Result<ExposureReport> {
    if s == 0 {
        return param_err("exposure: subset size must be at least 1");
    }
    if d <= 0.0 {
        return param_err("exposure: d must be positive");
    }
    if s > graph.num_vertices() {
        return param_err(format!(
            "exposure: subset size {s} exceeds vertex count {}",
            graph.num_vertices()
        ));
    }
    let counts = map_indexed(exec, trials, |t| {
        let mut rng = trial_rng(rng_seed, t as u64);
        for _ in 0..START_ATTEMPTS {
            let start = rng.random_range(0..graph.num_vertices());
            if let Some(edges) = expose_bfs(graph, start, s) {
                return Ok(edges);
            }
        }
        Err(Error::Parameter(format!(
            "exposure: no component of size >= {s} found from {START_ATTEMPTS} random starts"
        )))
    });
    let ratios = counts
        .into_iter()
        .map(|c| c.map(|edges| edges as f64 / (d * s as f64)))
        .collect::<Result<Vec<_>>>()?;
    let exceed = ratios.iter().filter(|&&r| r > EXPOSURE_RATIO_LIMIT).count();
    Ok(ExposureReport {
        subset_size: s,
        d,
        trials,
        summary: Summary::of(&ratios),
        exceed_fraction: if trials == 0 { 0.0 } else { exceed as f64 / trials as f64 },
        ratios,
    })
}

/// Exposes `s` vertices in BFS order and returns the number of distinct edges
/// with an endpoint in the exposed set, or `None` if the component is smaller
/// than `s`.
pub(crate) fn expose_bfs(graph: &Graph, start: usize, s: usize) -> Option<usize> {
    let mut exposed = HashSet::with_capacity(s);
    let mut discovered = HashSet::new();
    let mut queue = VecDeque::from([start]);
    discovered.insert(start);
    let mut edges = 0;
    while exposed.len() < s {
        let u = queue.pop_front()?;
        // new edges: those not leading back into the already exposed set
        for &w in graph.adjacent(u) {
            if !exposed.contains(&w) {
                edges += 1;
            }
            if discovered.insert(w) {
                queue.push_back(w);
            }
        }
        exposed.insert(u);
    }
    Some(edges)
}
