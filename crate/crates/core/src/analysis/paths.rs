use num_bigint::BigUint;
use serde::Serialize;

use super::report::Verdict;
use crate::error::{param_err, Error, Result};
use crate::graph::{generate, GeneratorSpec, Graph};
use crate::par::{map_indexed, Execution};
use crate::stats::Summary;

/// Largest count [`count_simple_paths`] will enumerate.
pub const PATH_BUDGET: u64 = 100_000_000;

/// Number of simple paths with `t` edges starting at `v`, by exhaustive
/// depth-first enumeration.
pub fn count_simple_paths(graph: &Graph, v: usize, t: usize) -> Result<BigUint> {
    if v >= graph.num_vertices() {
        return param_err(format!("paths: vertex {v} out of range"));
    }
    let mut on_path = vec![false; graph.num_vertices()];
    on_path[v] = true;
    let mut count = 0u64;
    extend(graph, v, t, &mut on_path, &mut count)?;
    Ok(BigUint::from(count))
}

fn extend(graph: &Graph, u: usize, left: usize, on_path: &mut [bool], count: &mut u64) -> Result<()> {
    if left == 0 {
        *count += 1;
        if *count > PATH_BUDGET {
            return Err(Error::BudgetExceeded {
                center: u,
                budget: PATH_BUDGET as usize,
            });
        }
        return Ok(());
    }
    for &w in graph.adjacent(u) {
        if !on_path[w] {
            on_path[w] = true;
            extend(graph, w, left - 1, on_path, count)?;
            on_path[w] = false;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PathCountReport {
    pub n: usize,
    pub d: f64,
    pub t: usize,
    pub graphs: usize,
    pub counts: Vec<u64>,
    pub summary: Summary,
    /// `d^t`.
    pub bound: f64,
    pub verdict: Verdict,
}

/// Mean number of simple length-`t` paths from vertex 0 of `G(n, d/(n-1))`
/// over independently generated graphs, against `d^t`.
pub fn simple_path_experiment(
    n: usize,
    d: f64,
    t: usize,
    graphs: usize,
    rng_seed: u64,
    exec: Execution,
) -> Result<PathCountReport> {
    if n == 0 {
        return param_err("paths: need n >= 1");
    }
    let counts = map_indexed(exec, graphs, |i| -> Result<u64> {
        let g = generate(&GeneratorSpec::Gnp {
            n,
            d,
            rng_seed: rng_seed.wrapping_add(i as u64),
        })?;
        let c = count_simple_paths(&g, 0, t)?;
        Ok(u64::try_from(c).expect("bounded by the path budget"))
    })
    .into_iter()
    .collect::<Result<Vec<u64>>>()?;
    let summary = Summary::of(&counts.iter().map(|&c| c as f64).collect::<Vec<_>>());
    let bound = d.powi(t as i32);
    let passed = summary.mean - 5.0 * summary.std_err <= bound;
    let verdict = Verdict::new(
        "mean_below_d_pow_t",
        passed,
        format!("mean {:.4} (SE {:.4}) vs d^t = {bound:.4}", summary.mean, summary.std_err),
    );
    Ok(PathCountReport {
        n,
        d,
        t,
        graphs,
        counts,
        summary,
        bound,
        verdict,
    })
}
