//! Exact and Monte Carlo checks of the probabilistic claims behind the
//! LCA constructions.
//!
//! Dominance statements between binomial laws are decided exactly with big
//! rationals. Quantities with no tractable exact form (vicinity sizes, path
//! counts, random-order tree vicinities, level loads) are estimated by
//! reproducible Monte Carlo with per-trial RNG streams.

mod balance;
mod dominance;
mod paths;
mod report;
mod scaling;
mod tightness;

pub use balance::{level_balance_experiment, BalanceExperimentReport, BalanceParams, BalanceTally, OVERLOAD_FRACTION};
pub use dominance::{
    binomial_cdf, builtin_sum_cases, check_stochastic_dominance, dominance_violations,
    verify_lemma_lrst, verify_sum_dominance, AlphaCheck, DistKind, DistSpec, LemmaReport, Pmf,
    SumCaseResult, SumDominanceCase, SumDominanceReport,
};
pub use paths::{count_simple_paths, simple_path_experiment, PathCountReport, PATH_BUDGET};
pub use report::{ExperimentReport, Verdict};
pub use scaling::{
    expected_moment_experiment, scaling_experiment, Family, ScalingParams, ScalingReport,
    ScalingRow, FLAT_SLOPE, TAIL_FACTOR, TAIL_FRACTION,
};
pub use tightness::{
    depths, tightness_experiment, vicinity_under_order, TightnessReport, TreeLevelRow,
    LEVEL_TOLERANCE, MEAN_TOLERANCE,
};
