//! Turning neighborhood-dependent online algorithms into LCAs.
//!
//! Two constructions answer a single inquiry by replaying the online
//! algorithm over the inquired item's relevant vicinity:
//!
//! * [`lca_answer_method1`] labels vicinity members by their full rank and
//!   sorts them;
//! * [`lca_answer_method2`] discovers members in descending rank, gives them
//!   short sequential labels and replays in reverse label order.
//!
//! [`global_online_run`] runs the algorithm over the whole structure in rank
//! order and is the reference every LCA answer must agree with.

mod algorithms;
mod global;
mod method1;
mod method2;
mod verify;

use std::str::FromStr;

use serde::Serialize;

pub use algorithms::{
    Color, GreedyColoring, GreedyMatching, GreedyMis, MatchState, Membership, OnlineAlgorithm,
};
pub use global::global_online_run;
pub use method1::lca_answer_method1;
pub use method2::lca_answer_method2;
pub use verify::{verify_coloring, verify_matching, verify_mis, Violation};

use crate::error::{param_err, Error, Result};
use crate::graph::{Adjacency, Oracle};
use crate::ordering::RankingFunction;
use crate::par::{map_indexed, Execution};

/// Problems with a built-in greedy online algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mis,
    Matching,
    Coloring,
}

impl Problem {
    /// Whether inquiries and rankings range over edges rather than vertices.
    pub fn on_edges(self) -> bool {
        matches!(self, Problem::Matching)
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mis" => Ok(Problem::Mis),
            "matching" => Ok(Problem::Matching),
            "coloring" => Ok(Problem::Coloring),
            other => param_err(format!("unknown problem {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Full-rank labels, sort, replay.
    #[default]
    One,
    /// Short labels assigned in descending rank, replay in reverse.
    Two,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Method::One),
            "2" => Ok(Method::Two),
            other => param_err(format!("unknown method {other:?} (expected 1 or 2)")),
        }
    }
}

/// The answer to one inquiry plus the cost of producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InquiryResult<T> {
    /// Inquired item (a vertex id, or an edge id for edge problems).
    pub vertex: usize,
    pub output: T,
    pub t_v: usize,
    pub t_e: usize,
    pub queries: u64,
    pub time_ns: u64,
    /// Counted working-set estimate in 64-bit words, seed included.
    pub peak_words: usize,
}

/// Values per item; `None` where nothing was decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment<T> {
    values: Vec<Option<T>>,
}

impl<T: Copy> Assignment<T> {
    pub fn new(len: usize) -> Self {
        Self {
            values: vec![None; len],
        }
    }

    pub fn from_total(values: Vec<T>) -> Self {
        Self {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<T> {
        self.values.get(id).copied().flatten()
    }

    pub fn set(&mut self, id: usize, value: T) {
        self.values[id] = Some(value);
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// The values as a dense vector, if every item is decided.
    pub fn to_total(&self) -> Option<Vec<T>> {
        self.values.iter().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Option<T>)> + '_ {
        self.values.iter().copied().enumerate()
    }
}

impl<T: Copy + std::fmt::Display> Assignment<T> {
    /// Text form: one `id value` line per decided item, ascending id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, v) in self.iter() {
            if let Some(v) = v {
                out.push_str(&format!("{id} {v}\n"));
            }
        }
        out
    }
}

/// Answers one inquiry with the chosen construction.
pub fn lca_answer<A, Alg>(
    method: Method,
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    alg: &Alg,
    item: usize,
    budget: usize,
) -> Result<InquiryResult<Alg::Output>>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
{
    match method {
        Method::One => lca_answer_method1(oracle, rf, alg, item, budget),
        Method::Two => lca_answer_method2(oracle, rf, alg, item, budget),
    }
}

/// Answers every listed inquiry, each with a fresh oracle, in input order.
pub fn answer_many<A, Alg>(
    structure: &A,
    rf: &RankingFunction,
    alg: &Alg,
    method: Method,
    items: &[usize],
    budget: usize,
    exec: Execution,
) -> Vec<Result<InquiryResult<Alg::Output>>>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
    Alg::Output: Send,
{
    map_indexed(exec, items.len(), |i| {
        let mut oracle = Oracle::new(structure);
        lca_answer(method, &mut oracle, rf, alg, items[i], budget)
    })
}

/// Answers all inquiries and collects the outputs into an assignment.
///
/// Fails on the first inquiry error (for example a budget overrun).
pub fn lca_assignment<A, Alg>(
    structure: &A,
    rf: &RankingFunction,
    alg: &Alg,
    method: Method,
    budget: usize,
    exec: Execution,
) -> Result<Assignment<Alg::Output>>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
{
    let items: Vec<usize> = (0..structure.len()).collect();
    let results = answer_many(structure, rf, alg, method, &items, budget, exec);
    let mut out = Assignment::new(items.len());
    for r in results {
        let r = r?;
        out.set(r.vertex, r.output);
    }
    Ok(out)
}

pub(crate) fn seed_words(rf: &RankingFunction) -> usize {
    rf.k()
}
