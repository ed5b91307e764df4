use std::fmt::{self, Debug, Display};

use serde::Serialize;

/// A neighborhood-dependent online algorithm.
///
/// `decide` sees one arriving item and the already-decided values of its
/// earlier-arriving neighbors, and nothing else. Purity of `decide` is what
/// lets every LCA inquiry reproduce the same global run.
pub trait OnlineAlgorithm: Sync {
    type Output: Copy + Eq + Debug + Display + Serialize + Send + Sync;

    fn decide(&self, item: usize, earlier: &[(usize, Self::Output)]) -> Self::Output;

    /// Machine words needed to store one output value.
    fn output_words(&self, _out: &Self::Output) -> usize {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Membership {
    In,
    Out,
}

impl Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "IN",
            Membership::Out => "OUT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MatchState {
    Matched,
    Unmatched,
}

impl Display for MatchState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchState::Matched => "MATCHED",
            MatchState::Unmatched => "UNMATCHED",
        })
    }
}

/// A positive color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Color(pub u32);

impl Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Greedy maximal independent set: join unless an earlier neighbor joined.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyMis;

impl OnlineAlgorithm for GreedyMis {
    type Output = Membership;

    fn decide(&self, _v: usize, earlier: &[(usize, Membership)]) -> Membership {
        if earlier.iter().any(|&(_, o)| o == Membership::In) {
            Membership::Out
        } else {
            Membership::In
        }
    }
}

/// Greedy maximal matching on edges: match unless an earlier adjacent edge
/// is matched.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyMatching;

impl OnlineAlgorithm for GreedyMatching {
    type Output = MatchState;

    fn decide(&self, _e: usize, earlier: &[(usize, MatchState)]) -> MatchState {
        if earlier.iter().any(|&(_, o)| o == MatchState::Matched) {
            MatchState::Unmatched
        } else {
            MatchState::Matched
        }
    }
}

/// First-fit coloring: the smallest positive color no earlier neighbor uses.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyColoring;

impl OnlineAlgorithm for GreedyColoring {
    type Output = Color;

    fn decide(&self, _v: usize, earlier: &[(usize, Color)]) -> Color {
        // among |earlier| + 1 candidates at least one is free
        let mut used = vec![false; earlier.len() + 1];
        for &(_, Color(c)) in earlier {
            if let Some(slot) = used.get_mut(c as usize - 1) {
                *slot = true;
            }
        }
        let first_free = used.iter().position(|&u| !u).expect("pigeonhole");
        Color(first_free as u32 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mis_decisions() {
        assert_eq!(GreedyMis.decide(0, &[]), Membership::In);
        assert_eq!(GreedyMis.decide(0, &[(1, Membership::In)]), Membership::Out);
        assert_eq!(
            GreedyMis.decide(0, &[(1, Membership::Out), (2, Membership::Out)]),
            Membership::In
        );
    }

    #[test]
    fn matching_decisions() {
        assert_eq!(GreedyMatching.decide(0, &[]), MatchState::Matched);
        assert_eq!(GreedyMatching.decide(0, &[(1, MatchState::Matched)]), MatchState::Unmatched);
    }

    #[test]
    fn coloring_decisions() {
        assert_eq!(GreedyColoring.decide(0, &[]), Color(1));
        assert_eq!(GreedyColoring.decide(0, &[(1, Color(1)), (2, Color(2))]), Color(3));
        assert_eq!(GreedyColoring.decide(0, &[(1, Color(2))]), Color(1));
        assert_eq!(GreedyColoring.decide(0, &[(1, Color(9)), (2, Color(1))]), Color(2));
    }

    #[test]
    fn serialized_forms() {
        assert_eq!(serde_json::to_string(&Membership::In).unwrap(), "\"IN\"");
        assert_eq!(serde_json::to_string(&MatchState::Unmatched).unwrap(), "\"UNMATCHED\"");
        assert_eq!(serde_json::to_string(&Color(3)).unwrap(), "3");
    }
}
