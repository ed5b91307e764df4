use std::collections::HashSet;

use serde::Serialize;

use super::RankingFunction;
use crate::error::{param_err, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceReport {
    /// Number of distinct queried ids.
    pub m: usize,
    /// `counts[i]` is the number of queried ids at level `i + 1`.
    pub counts: Vec<usize>,
    /// `max_l counts[l] / (m / L)`; zero when nothing was queried.
    pub max_ratio: f64,
}

/// Per-level load of a set of hash queries.
pub fn level_balance_check(rf: &RankingFunction, queried: &[usize]) -> Result<BalanceReport> {
    let mut seen = HashSet::with_capacity(queried.len());
    let mut counts = vec![0usize; rf.levels() as usize];
    for &x in queried {
        if !seen.insert(x) {
            return param_err(format!("level balance: id {x} queried twice"));
        }
        counts[rf.level(x) as usize - 1] += 1;
    }
    Ok(balance_of(counts))
}

/// Report for precomputed per-level counts.
pub(crate) fn balance_of(counts: Vec<usize>) -> BalanceReport {
    let m: usize = counts.iter().sum();
    let max = counts.iter().copied().max().unwrap_or(0);
    let max_ratio = if m == 0 {
        0.0
    } else {
        max as f64 * counts.len() as f64 / m as f64
    };
    BalanceReport {
        m,
        counts,
        max_ratio,
    }
}
