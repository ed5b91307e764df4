use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{param_err, Error, Result};

const REGULAR_ATTEMPTS: usize = 100;

/// Parameters for one of the supported d-light graph families.
///
/// Every family is reproducible from its parameters and `rng_seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GeneratorSpec {
    /// Random `d`-regular simple graph on `n` vertices (pairing model).
    Regular { n: usize, d: usize, rng_seed: u64 },
    /// Erdős–Rényi `G(n, d/(n-1))`.
    Gnp { n: usize, d: f64, rng_seed: u64 },
    /// `n` consumers (ids `0..n`), `m` producers (ids `n..n+m`); each consumer
    /// links to `d` distinct producers chosen uniformly.
    Bipartite {
        n: usize,
        m: usize,
        d: usize,
        rng_seed: u64,
    },
    /// Complete `d`-ary tree of the given depth, numbered in BFS order from the
    /// root `0`.
    Tree { d: usize, depth: usize },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Regular { n, d, .. } => {
                if d >= n && !(n == 0 && d == 0) {
                    return param_err(format!("regular: need d < n (d = {d}, n = {n})"));
                }
                if (n * d) % 2 != 0 {
                    return param_err(format!("regular: n*d must be even (n = {n}, d = {d})"));
                }
            }
            GeneratorSpec::Gnp { n, d, .. } => {
                let max = n.saturating_sub(1) as f64;
                if !(d >= 0.0 && d <= max) {
                    return param_err(format!("gnp: need 0 <= d <= n-1 (d = {d}, n = {n})"));
                }
            }
            GeneratorSpec::Bipartite { m, d, .. } => {
                if d > m {
                    return param_err(format!("bipartite: need d <= m (d = {d}, m = {m})"));
                }
            }
            GeneratorSpec::Tree { d, .. } => {
                if d < 1 {
                    return param_err("tree: need d >= 1");
                }
            }
        }
        Ok(())
    }
}

/// Generates a graph from the requested family.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    match *spec {
        GeneratorSpec::Regular { n, d, rng_seed } => regular(n, d, rng_seed),
        GeneratorSpec::Gnp { n, d, rng_seed } => Ok(gnp(n, d, rng_seed)),
        GeneratorSpec::Bipartite { n, m, d, rng_seed } => Ok(bipartite(n, m, d, rng_seed)),
        GeneratorSpec::Tree { d, depth } => Ok(tree(d, depth)),
    }
}

fn regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REGULAR_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::Generation(format!(
        "no simple {d}-regular pairing on {n} vertices after {REGULAR_ATTEMPTS} attempts"
    )))
}

/// One pass of the pairing model. Pairs of points are drawn uniformly from
/// the unmatched ones; a pair that would create a loop or a repeated edge is
/// redrawn, and the pass is abandoned if redraws keep failing.
fn try_pairing(n: usize, d: usize, rng: &mut impl Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
    let mut edges = Vec::with_capacity(n * d / 2);
    while !points.is_empty() {
        let mut placed = false;
        for _ in 0..(8 * points.len()).max(64) {
            let i = rng.random_range(0..points.len());
            let j = rng.random_range(0..points.len());
            let (u, v) = (points[i], points[j]);
            if i == j || u == v || seen.contains(&(u.min(v), u.max(v))) {
                continue;
            }
            seen.insert((u.min(v), u.max(v)));
            edges.push((u, v));
            let (hi, lo) = if i > j { (i, j) } else { (j, i) };
            points.swap_remove(hi);
            points.swap_remove(lo);
            placed = true;
            break;
        }
        if !placed {
            return None;
        }
    }
    Some(edges)
}

fn gnp(n: usize, d: f64, seed: u64) -> Graph {
    if n < 2 || d == 0.0 {
        return Graph::empty(n);
    }
    let p = d / (n - 1) as f64;
    if p >= 1.0 {
        return Graph::complete(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    // geometric skipping over the lower triangle (Batagelj & Brandes)
    let log_q = (1.0 - p).ln();
    let mut v = 1usize;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            let u = w as usize;
            lists[u].push(v);
            lists[v].push(u);
        }
    }
    for list in &mut lists {
        list.sort_unstable();
    }
    Graph::from_sorted_lists(lists)
}

fn bipartite(n: usize, m: usize, d: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for consumer in 0..n {
        for producer in index::sample(&mut rng, m, d) {
            lists[consumer].push(n + producer);
            lists[n + producer].push(consumer);
        }
    }
    for list in &mut lists {
        list.sort_unstable();
    }
    Graph::from_sorted_lists(lists)
}

fn tree(d: usize, depth: usize) -> Graph {
    let mut n = 1usize;
    let mut width = 1usize;
    for _ in 0..depth {
        width *= d;
        n += width;
    }
    let internal = n - width;
    let edges: Vec<_> = (0..internal)
        .flat_map(|p| (1..=d).map(move |c| (p, d * p + c)))
        .collect();
    Graph::from_edges(n, &edges).expect("tree edges are valid")
}
