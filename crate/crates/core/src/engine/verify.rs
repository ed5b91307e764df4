use std::fmt;

use serde::Serialize;

use super::{Assignment, Color, MatchState, Membership};
use crate::graph::Graph;

/// A feasibility failure found by the verifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// No value for this vertex or edge.
    Missing { id: usize },
    /// Two adjacent vertices both IN.
    AdjacentIn { u: usize, v: usize },
    /// An OUT vertex or UNMATCHED edge that could be added.
    NotMaximal { id: usize },
    /// Two matched edges sharing an endpoint.
    SharedEndpoint { e: usize, f: usize, vertex: usize },
    /// Adjacent vertices with the same color.
    Conflict { u: usize, v: usize, color: u32 },
    /// Color outside `1..=max_degree + 1`.
    ColorOutOfRange { id: usize, color: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Missing { id } => write!(f, "{id}: no value"),
            Violation::AdjacentIn { u, v } => write!(f, "{u} and {v} adjacent and both IN"),
            Violation::NotMaximal { id } => write!(f, "{id}: could be added"),
            Violation::SharedEndpoint { e, f: g, vertex } => {
                write!(f, "edges {e} and {g} matched at vertex {vertex}")
            }
            Violation::Conflict { u, v, color } => write!(f, "{u} and {v} both colored {color}"),
            Violation::ColorOutOfRange { id, color } => write!(f, "{id}: color {color} out of range"),
        }
    }
}

fn missing<T: Copy>(a: &Assignment<T>, len: usize) -> Vec<Violation> {
    (0..len)
        .filter(|&i| a.get(i).is_none())
        .map(|id| Violation::Missing { id })
        .collect()
}

/// Independence and maximality. Empty means feasible.
pub fn verify_mis(graph: &Graph, a: &Assignment<Membership>) -> Vec<Violation> {
    let mut out = missing(a, graph.num_vertices());
    if !out.is_empty() {
        return out;
    }
    for (u, v) in graph.edges() {
        if a.get(u) == Some(Membership::In) && a.get(v) == Some(Membership::In) {
            out.push(Violation::AdjacentIn { u, v });
        }
    }
    for v in 0..graph.num_vertices() {
        if a.get(v) == Some(Membership::Out)
            && !graph.adjacent(v).iter().any(|&w| a.get(w) == Some(Membership::In))
        {
            out.push(Violation::NotMaximal { id: v });
        }
    }
    out
}

/// Matching property and maximality over edge ids.
pub fn verify_matching(graph: &Graph, a: &Assignment<MatchState>) -> Vec<Violation> {
    let mut out = missing(a, graph.num_edges());
    if !out.is_empty() {
        return out;
    }
    let mut matched_at: Vec<Option<usize>> = vec![None; graph.num_vertices()];
    for (e, (u, v)) in graph.edges().enumerate() {
        if a.get(e) != Some(MatchState::Matched) {
            continue;
        }
        for x in [u, v] {
            match matched_at[x] {
                Some(f) => out.push(Violation::SharedEndpoint { e: f, f: e, vertex: x }),
                None => matched_at[x] = Some(e),
            }
        }
    }
    for (e, (u, v)) in graph.edges().enumerate() {
        if a.get(e) == Some(MatchState::Unmatched) && matched_at[u].is_none() && matched_at[v].is_none() {
            out.push(Violation::NotMaximal { id: e });
        }
    }
    out
}

/// Properness and the `max_degree + 1` palette.
pub fn verify_coloring(graph: &Graph, a: &Assignment<Color>) -> Vec<Violation> {
    let mut out = missing(a, graph.num_vertices());
    if !out.is_empty() {
        return out;
    }
    let palette = graph.max_degree() as u32 + 1;
    for (id, c) in a.iter() {
        let Color(c) = c.expect("checked total");
        if c == 0 || c > palette {
            out.push(Violation::ColorOutOfRange { id, color: c });
        }
    }
    for (u, v) in graph.edges() {
        if a.get(u) == a.get(v) {
            out.push(Violation::Conflict { u, v, color: a.get(u).expect("checked total").0 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Membership::{In, Out};

    #[test]
    fn triangle_mis() {
        let g = Graph::complete(3);
        assert!(verify_mis(&g, &Assignment::from_total(vec![In, Out, Out])).is_empty());
        assert_eq!(
            verify_mis(&g, &Assignment::from_total(vec![In, In, Out])),
            vec![Violation::AdjacentIn { u: 0, v: 1 }]
        );
    }

    #[test]
    fn path_all_out_not_maximal() {
        let g = Graph::path(3);
        let v = verify_mis(&g, &Assignment::from_total(vec![Out; 3]));
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|x| matches!(x, Violation::NotMaximal { .. })));
    }

    #[test]
    fn partial_is_missing() {
        let g = Graph::path(2);
        let mut a = Assignment::new(2);
        a.set(0, In);
        assert_eq!(verify_mis(&g, &a), vec![Violation::Missing { id: 1 }]);
    }

    #[test]
    fn matching_checks() {
        use MatchState::{Matched, Unmatched};
        // path 0-1-2-3, edges 0:(0,1) 1:(1,2) 2:(2,3)
        let g = Graph::path(4);
        assert!(verify_matching(&g, &Assignment::from_total(vec![Matched, Unmatched, Matched])).is_empty());
        assert_eq!(
            verify_matching(&g, &Assignment::from_total(vec![Matched, Matched, Unmatched])),
            vec![Violation::SharedEndpoint { e: 0, f: 1, vertex: 1 }]
        );
        assert_eq!(
            verify_matching(&g, &Assignment::from_total(vec![Unmatched, Unmatched, Matched])),
            vec![Violation::NotMaximal { id: 0 }]
        );
    }

    #[test]
    fn coloring_checks() {
        let g = Graph::path(3);
        assert!(verify_coloring(&g, &Assignment::from_total(vec![Color(1), Color(2), Color(1)])).is_empty());
        assert_eq!(
            verify_coloring(&g, &Assignment::from_total(vec![Color(1), Color(1), Color(4)])),
            vec![
                Violation::ColorOutOfRange { id: 2, color: 4 },
                Violation::Conflict { u: 0, v: 1, color: 1 }
            ]
        );
    }
}
