//! Undirected simple graphs, the neighbor-query oracle, and graph families.
//!
//! Vertices are dense ids `0..n`. Adjacency is stored in CSR form with every
//! neighbor list strictly increasing, which makes the graph immutable and
//! freely shareable between threads once built.

mod exposure;
mod generate;
mod io;
mod line;
mod oracle;

use std::borrow::Cow;

pub use exposure::{exposure_neighborhood_experiment, ExposureReport, EXPOSURE_RATIO_LIMIT};
pub use generate::{generate, GeneratorSpec};
pub use io::{load_graph, parse_graph, save_graph, write_graph};
pub use line::LineGraph;
pub use oracle::{GraphOracle, Oracle};

use crate::error::{param_err, Result};

/// Anything that can hand out neighbor lists for the dense id range `0..len()`.
///
/// Implemented by [`Graph`] (vertices) and [`LineGraph`] (edges of a graph,
/// adjacent when they share an endpoint). Exploration code is written against
/// this trait so vertex and edge problems share one code path.
pub trait Adjacency: Sync {
    /// Number of items (vertices, or edges for a line graph).
    fn len(&self) -> usize;

    /// Sorted neighbor ids of `x`. `x` must be `< len()`.
    fn neighbors(&self, x: usize) -> Cow<'_, [usize]>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An immutable undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    // edge_base[u] = number of edges (a, b) with a < b and a < u
    edge_base: Vec<usize>,
    // index into u's neighbor list of the first neighbor greater than u
    upper_start: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// Rejects self-loops, out-of-range ids and duplicate edges (in either
    /// orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return param_err(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                return param_err(format!("self-loop at vertex {u}"));
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        for (u, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return param_err(format!("duplicate edge ({}, {})", u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_sorted_lists(lists))
    }

    /// Assembles the CSR arrays from per-vertex sorted, deduplicated lists.
    pub(crate) fn from_sorted_lists(lists: Vec<Vec<usize>>) -> Self {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        let mut edge_base = Vec::with_capacity(n + 1);
        let mut upper_start = Vec::with_capacity(n);
        let mut edges_so_far = 0;
        offsets.push(0);
        for (u, list) in lists.into_iter().enumerate() {
            let split = list.partition_point(|&w| w < u);
            upper_start.push(split);
            edge_base.push(edges_so_far);
            edges_so_far += list.len() - split;
            targets.extend(list);
            offsets.push(targets.len());
        }
        edge_base.push(edges_so_far);
        Self {
            offsets,
            targets,
            edge_base,
            upper_start,
        }
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_lists(vec![Vec::new(); n])
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let lists = (0..n)
            .map(|u| (0..n).filter(|&w| w != u).collect())
            .collect();
        Self::from_sorted_lists(lists)
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    /// Neighbor list of `v`, strictly increasing.
    ///
    /// Panics if `v` is out of range; use [`GraphOracle`] for checked,
    /// counted access.
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_vertices() && self.adjacent(u).binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order. The position
    /// of an edge in this sequence is its edge id.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_vertices()).flat_map(move |u| {
            self.adjacent(u)[self.upper_start[u]..]
                .iter()
                .map(move |&v| (u, v))
        })
    }

    /// Dense id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if b >= self.num_vertices() || a == b {
            return None;
        }
        let pos = self.adjacent(a).binary_search(&b).ok()?;
        Some(self.edge_base[a] + pos - self.upper_start[a])
    }

    /// Endpoints `(u, v)`, `u < v`, of edge `e`.
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        assert!(e < self.num_edges(), "edge id {e} out of range");
        // last vertex whose base is <= e
        let u = self.edge_base.partition_point(|&b| b <= e) - 1;
        let v = self.adjacent(u)[self.upper_start[u] + (e - self.edge_base[u])];
        (u, v)
    }

    /// Mean degree `2m / n` (0 for the empty vertex set).
    pub fn mean_degree(&self) -> f64 {
        if self.num_vertices() == 0 {
            0.0
        } else {
            self.targets.len() as f64 / self.num_vertices() as f64
        }
    }
}

impl Adjacency for Graph {
    fn len(&self) -> usize {
        self.num_vertices()
    }

    fn neighbors(&self, x: usize) -> Cow<'_, [usize]> {
        Cow::Borrowed(self.adjacent(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::from_edges(5, &[(3, 1), (0, 4), (1, 0), (2, 4)]).unwrap();
        assert_eq!(g.num_edges(), 4);
        for u in 0..5 {
            let adj = g.adjacent(u);
            assert!(adj.windows(2).all(|w| w[0] < w[1]));
            for &v in adj {
                assert!(g.adjacent(v).contains(&u));
            }
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = Graph::complete(4);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for (id, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(g.edge_id(u, v), Some(id));
            assert_eq!(g.edge_id(v, u), Some(id));
            assert_eq!(g.edge_endpoints(id), (u, v));
        }
        assert_eq!(g.edge_id(1, 1), None);
    }

    #[test]
    fn edge_ids_skip_isolated_vertices() {
        let g = Graph::from_edges(6, &[(4, 5), (0, 2)]).unwrap();
        assert_eq!(g.edge_endpoints(0), (0, 2));
        assert_eq!(g.edge_endpoints(1), (4, 5));
        assert_eq!(g.edge_id(5, 4), Some(1));
    }
}
