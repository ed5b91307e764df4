use std::collections::VecDeque;

use rand::seq::SliceRandom;
use serde::Serialize;

use super::report::Verdict;
use crate::error::{param_err, Result};
use crate::graph::{generate, GeneratorSpec, Graph};
use crate::par::{map_indexed, trial_rng, Execution};
use crate::stats::Summary;

/// Relative tolerance for per-level means.
pub const LEVEL_TOLERANCE: f64 = 0.10;
/// Relative tolerance for the overall mean against its exact value.
pub const MEAN_TOLERANCE: f64 = 0.02;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeLevelRow {
    pub level: usize,
    pub mean: f64,
    pub std_err: f64,
    /// `d^l / l!`.
    pub stated: f64,
    /// `d^l / (l+1)!`: each of the `d^l` depth-`l` vertices is a member
    /// exactly when its `l + 1` root-path vertices arrive in reverse order.
    pub exact: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport {
    pub d: usize,
    pub depth: usize,
    pub trials: usize,
    pub vertices: usize,
    pub size: Summary,
    /// `sum_l d^l / (l+1)!` over the tree's depths.
    pub exact_mean: f64,
    /// `2^(d/2)`.
    pub lower_bound: f64,
    pub levels: Vec<TreeLevelRow>,
    pub verdicts: Vec<Verdict>,
}

impl TightnessReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

/// Depth of every vertex from `root`.
pub fn depths(graph: &Graph, root: usize) -> Vec<usize> {
    let mut depth = vec![usize::MAX; graph.num_vertices()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in graph.adjacent(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    depth
}

/// Relevant vicinity of `v` when `position[u]` is the arrival time of `u`.
pub fn vicinity_under_order(graph: &Graph, position: &[usize], v: usize) -> Vec<usize> {
    let mut seen = vec![false; graph.num_vertices()];
    seen[v] = true;
    let mut members = vec![v];
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in graph.adjacent(u) {
            if !seen[w] && position[w] < position[u] {
                seen[w] = true;
                members.push(w);
                stack.push(w);
            }
        }
    }
    members
}

/// Root vicinity of the complete `d`-ary tree under uniformly random
/// arrival orders (Fisher–Yates shuffles, not the hash family).
pub fn tightness_experiment(
    d: usize,
    depth: usize,
    trials: usize,
    rng_seed: u64,
    exec: Execution,
) -> Result<TightnessReport> {
    if d < 1 || trials == 0 {
        return param_err("tightness: need d >= 1 and trials >= 1");
    }
    let tree = generate(&GeneratorSpec::Tree { d, depth })?;
    let n = tree.num_vertices();
    let depth_of = depths(&tree, 0);
    let per_trial = map_indexed(exec, trials, |t| {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut trial_rng(rng_seed, t as u64));
        let mut position = vec![0; n];
        for (i, &u) in order.iter().enumerate() {
            position[u] = i;
        }
        let mut per_level = vec![0usize; depth + 1];
        for u in vicinity_under_order(&tree, &position, 0) {
            per_level[depth_of[u]] += 1;
        }
        per_level
    });

    let sizes: Vec<f64> = per_trial.iter().map(|c| c.iter().sum::<usize>() as f64).collect();
    let size = Summary::of(&sizes);
    let levels: Vec<TreeLevelRow> = (0..=depth)
        .map(|l| {
            let s = Summary::of(&per_trial.iter().map(|c| c[l] as f64).collect::<Vec<_>>());
            let width = (d as f64).powi(l as i32);
            TreeLevelRow {
                level: l,
                mean: s.mean,
                std_err: s.std_err,
                stated: width / factorial(l),
                exact: width / factorial(l + 1),
            }
        })
        .collect();
    let exact_mean: f64 = levels.iter().map(|r| r.exact).sum();
    let lower_bound = 2f64.powf(d as f64 / 2.0);
    let checked = depth.min(d / 2);

    let within = |mean: f64, target: f64, tol: f64| (mean - target).abs() <= tol * target;
    let mut verdicts = vec![Verdict::new(
        "mean_matches_exact",
        within(size.mean, exact_mean, MEAN_TOLERANCE),
        format!("mean {:.4} vs exact {exact_mean:.4} (tolerance {MEAN_TOLERANCE})", size.mean),
    )];
    if 2 * depth >= d {
        verdicts.push(Verdict::new(
            "mean_at_least_2_pow_half_d",
            exact_mean >= lower_bound && size.mean + 5.0 * size.std_err >= lower_bound,
            format!(
                "mean {:.4} (SE {:.4}), exact {exact_mean:.4} vs 2^(d/2) = {lower_bound:.4}",
                size.mean, size.std_err
            ),
        ));
    }
    let describe = |pick: &dyn Fn(&TreeLevelRow) -> f64| {
        levels[..=checked]
            .iter()
            .map(|r| format!("l={}: {:.4} vs {:.4}", r.level, r.mean, pick(r)))
            .collect::<Vec<_>>()
            .join("; ")
    };
    verdicts.push(Verdict::new(
        "levels_match_d_pow_l_over_l_factorial",
        levels[..=checked].iter().all(|r| within(r.mean, r.stated, LEVEL_TOLERANCE)),
        describe(&|r| r.stated),
    ));
    verdicts.push(Verdict::new(
        "levels_match_d_pow_l_over_l_plus_1_factorial",
        levels[..=checked].iter().all(|r| within(r.mean, r.exact, LEVEL_TOLERANCE)),
        describe(&|r| r.exact),
    ));

    Ok(TightnessReport {
        d,
        depth,
        trials,
        vertices: n,
        size,
        exact_mean,
        lower_bound,
        levels,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Mean root-vicinity size per depth over all arrival orders.
    fn enumerate(d: usize, depth: usize) -> Vec<f64> {
        let tree = generate(&GeneratorSpec::Tree { d, depth }).unwrap();
        let depth_of = depths(&tree, 0);
        let perms = permutations(tree.num_vertices());
        let mut totals = vec![0usize; depth + 1];
        for position in &perms {
            for u in vicinity_under_order(&tree, position, 0) {
                totals[depth_of[u]] += 1;
            }
        }
        totals.iter().map(|&t| t as f64 / perms.len() as f64).collect()
    }

    #[test]
    fn two_children_average_two() {
        // 3! orders; each child joins in the 3 orders where it precedes the root
        let e = enumerate(2, 1);
        assert_eq!(e, vec![1.0, 1.0]);
        assert_eq!(e.iter().sum::<f64>(), 2.0);
    }

    #[test]
    fn enumeration_matches_l_plus_1_factorial() {
        for (d, depth) in [(2, 2), (3, 1), (1, 5), (2, 1)] {
            let e = enumerate(d, depth);
            for (l, &mean) in e.iter().enumerate() {
                let exact = (d as f64).powi(l as i32) / factorial(l + 1);
                assert!((mean - exact).abs() < 1e-12, "d={d} depth={depth} l={l}: {mean} vs {exact}");
            }
        }
        // the depth-2 vertices of the binary tree average 2/3, not 2^2/2! = 2
        assert!((enumerate(2, 2)[2] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_near_exact() {
        let r = tightness_experiment(2, 1, 20_000, 5, Execution::default()).unwrap();
        assert!((r.size.mean - 2.0).abs() < 0.05);
        assert!(r.verdict("levels_match_d_pow_l_over_l_plus_1_factorial").unwrap().passed);
    }

    #[test]
    fn reproducible() {
        let a = tightness_experiment(3, 3, 500, 8, Execution::Sequential).unwrap();
        let b = tightness_experiment(3, 3, 500, 8, Execution::Parallel).unwrap();
        assert_eq!(a.size, b.size);
    }

    #[test]
    fn vicinity_follows_decreasing_paths() {
        let g = Graph::path(4);
        // arrivals 3, 0, 1, 2: from vertex 0 only vertex 1 arrives earlier
        assert_eq!(vicinity_under_order(&g, &[3, 0, 1, 2], 0), vec![0, 1]);
        assert_eq!(vicinity_under_order(&g, &[0, 1, 2, 3], 3), vec![3, 2, 1, 0]);
    }
}
