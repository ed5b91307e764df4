use std::borrow::Cow;

use super::{Adjacency, Graph};

/// The line graph of a [`Graph`], computed on the fly.
///
/// Items are the graph's edge ids; two edges are adjacent when they share an
/// endpoint. Neighbor lists are assembled from the two endpoints' adjacency
/// lists, so the line graph is never materialized unless asked for.
#[derive(Clone, Copy, Debug)]
pub struct LineGraph<'g> {
    graph: &'g Graph,
}

impl<'g> LineGraph<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Builds the line graph explicitly. Quadratic in the maximum degree.
    pub fn materialize(&self) -> Graph {
        let lists = (0..self.len()).map(|e| self.neighbors(e).into_owned()).collect();
        Graph::from_sorted_lists(lists)
    }
}

impl Adjacency for LineGraph<'_> {
    fn len(&self) -> usize {
        self.graph.num_edges()
    }

    fn neighbors(&self, e: usize) -> Cow<'_, [usize]> {
        let (u, v) = self.graph.edge_endpoints(e);
        let mut out = Vec::with_capacity(self.graph.degree(u) + self.graph.degree(v) - 2);
        for (end, other) in [(u, v), (v, u)] {
            for &w in self.graph.adjacent(end) {
                if w != other {
                    out.push(self.graph.edge_id(end, w).expect("adjacent pair is an edge"));
                }
            }
        }
        out.sort_unstable();
        Cow::Owned(out)
    }
}
