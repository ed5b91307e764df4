use std::io::{self, Write};

use lcalab_core::engine::{
    answer_many, global_online_run, verify_coloring, verify_matching, verify_mis, Assignment, Color,
    GreedyColoring, GreedyMatching, GreedyMis, MatchState, Membership, Method, OnlineAlgorithm, Problem,
    Violation,
};
use lcalab_core::graph::{save_graph, write_graph, Adjacency, Graph, LineGraph};
use lcalab_core::ordering::{default_k, default_levels, RankingFunction};
use lcalab_core::par::Execution;
use lcalab_core::vicinity::vicinity_stats;
use lcalab_core::Error;
use serde::Serialize;
use serde_json::json;

use crate::args::{GenArgs, QueryArgs, StatsArgs, VerifyArgs};
use crate::exit::{CliError, CliResult, BUDGET, MISMATCH};
use crate::output::Lines;

pub fn gen(args: &GenArgs) -> CliResult<()> {
    let spec = args.model.spec()?;
    let g = lcalab_core::graph::generate(&spec)?;
    match &args.out {
        Some(path) => {
            save_graph(&g, path)?;
            let mut lines = Lines::open(None)?;
            lines.line(&json!({
                "path": path,
                "n": g.num_vertices(),
                "m": g.num_edges(),
                "max_degree": g.max_degree(),
                "spec": spec,
            }))?;
            lines.finish()?;
        }
        None => {
            let mut out = io::BufWriter::new(io::stdout().lock());
            write_graph(&g, &mut out)?;
            out.flush()?;
        }
    }
    eprintln!("n = {}, m = {}, max degree = {}", g.num_vertices(), g.num_edges(), g.max_degree());
    Ok(())
}

/// The inquired structure of a problem and the `d` behind its ranking.
fn ranking_for(problem: Problem, graph: &Graph, d: f64, ranking: &crate::args::RankingArgs) -> CliResult<RankingFunction> {
    let items = if problem.on_edges() { graph.num_edges() } else { graph.num_vertices() };
    ranking.build(items, d)
}

#[derive(Serialize)]
struct AnswerLine<T> {
    item: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge: Option<(usize, usize)>,
    #[serde(flatten)]
    body: AnswerBody<T>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AnswerBody<T> {
    Answer {
        output: T,
        t_v: usize,
        t_e: usize,
        queries: u64,
        peak_words: usize,
    },
    Failure {
        error: String,
        budget: usize,
    },
}

struct Inquiry<'a> {
    graph: &'a Graph,
    rf: &'a RankingFunction,
    method: Method,
    budget: usize,
    exec: Execution,
}

impl Inquiry<'_> {
    /// Writes one line per item and returns the number of budget overruns.
    fn answer<A, Alg>(&self, structure: &A, alg: &Alg, items: &[usize], edges: bool, lines: &mut Lines) -> CliResult<usize>
    where
        A: Adjacency + ?Sized,
        Alg: OnlineAlgorithm,
    {
        let results = answer_many(structure, self.rf, alg, self.method, items, self.budget, self.exec);
        let mut overruns = 0;
        for (&item, result) in items.iter().zip(results) {
            let body = match result {
                Ok(r) => AnswerBody::Answer {
                    output: r.output,
                    t_v: r.t_v,
                    t_e: r.t_e,
                    queries: r.queries,
                    peak_words: r.peak_words,
                },
                Err(Error::BudgetExceeded { budget, .. }) => {
                    overruns += 1;
                    AnswerBody::Failure {
                        error: "budget_exceeded".into(),
                        budget,
                    }
                }
                Err(e) => return Err(e.into()),
            };
            lines.line(&AnswerLine {
                item,
                edge: edges.then(|| self.graph.edge_endpoints(item)),
                body,
            })?;
        }
        Ok(overruns)
    }
}

pub fn query(args: &QueryArgs, exec: Execution) -> CliResult<()> {
    let graph = args.source.load()?;
    let problem = Problem::from(args.problem);
    let d = args.source.density(&graph);
    let rf = ranking_for(problem, &graph, d, &args.ranking)?;
    let count = if problem.on_edges() { graph.num_edges() } else { graph.num_vertices() };
    let items: Vec<usize> = if args.all {
        (0..count).collect()
    } else {
        let mut v = args.vertex.clone();
        v.sort_unstable();
        v.dedup();
        v
    };
    if let Some(&bad) = items.iter().find(|&&i| i >= count) {
        let kind = if problem.on_edges() { "edge" } else { "vertex" };
        return Err(CliError::param(format!("{kind} {bad} out of range (structure has {count})")));
    }

    let mut lines = Lines::open(args.out.as_deref())?;
    lines.header(
        "query",
        args,
        json!({ "d": d, "items": count, "ranking": rf.params(), "budget": args.budget.budget }),
    )?;
    let inquiry = Inquiry {
        graph: &graph,
        rf: &rf,
        method: args.method.into(),
        budget: args.budget.budget,
        exec,
    };
    let overruns = match problem {
        Problem::Mis => inquiry.answer(&graph, &GreedyMis, &items, false, &mut lines)?,
        Problem::Coloring => inquiry.answer(&graph, &GreedyColoring, &items, false, &mut lines)?,
        Problem::Matching => inquiry.answer(&LineGraph::new(&graph), &GreedyMatching, &items, true, &mut lines)?,
    };
    lines.finish()?;
    eprintln!("answered {} of {} inquiries", items.len() - overruns, items.len());
    if overruns > 0 {
        return Err(CliError::new(
            BUDGET,
            format!("{overruns} inquiries exceeded the budget of {}", args.budget.budget),
        ));
    }
    Ok(())
}

/// Deliberate corruption for the verify negative control.
trait Corrupt {
    fn corrupted(self) -> Self;
}

impl Corrupt for Membership {
    fn corrupted(self) -> Self {
        match self {
            Membership::In => Membership::Out,
            Membership::Out => Membership::In,
        }
    }
}

impl Corrupt for MatchState {
    fn corrupted(self) -> Self {
        match self {
            MatchState::Matched => MatchState::Unmatched,
            MatchState::Unmatched => MatchState::Matched,
        }
    }
}

impl Corrupt for Color {
    fn corrupted(self) -> Self {
        Color(self.0 + 1)
    }
}

struct VerifyOutcome {
    mismatches: usize,
    violations: usize,
    overruns: usize,
}

fn compare<A, Alg>(
    structure: &A,
    alg: &Alg,
    inquiry: &Inquiry<'_>,
    faults: &[usize],
    check: impl Fn(&Assignment<Alg::Output>) -> Vec<Violation>,
    lines: &mut Lines,
) -> CliResult<VerifyOutcome>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
    Alg::Output: Corrupt,
{
    let items: Vec<usize> = (0..structure.len()).collect();
    let answers = answer_many(structure, inquiry.rf, alg, inquiry.method, &items, inquiry.budget, inquiry.exec);
    let mut lca = Assignment::new(items.len());
    let mut overruns = Vec::new();
    for (item, answer) in items.iter().zip(answers) {
        match answer {
            Ok(r) => {
                let out = if faults.contains(item) { r.output.corrupted() } else { r.output };
                lca.set(*item, out);
            }
            Err(Error::BudgetExceeded { .. }) => overruns.push(*item),
            Err(e) => return Err(e.into()),
        }
    }
    for &item in &overruns {
        lines.line(&json!({ "kind": "budget_exceeded", "item": item, "budget": inquiry.budget }))?;
    }
    let global = global_online_run(structure, inquiry.rf, alg);
    let mut mismatches = 0;
    for item in items {
        let (local, reference) = (lca.get(item), global.get(item));
        if local.is_some() && local != reference {
            mismatches += 1;
            lines.line(&json!({ "kind": "mismatch", "item": item, "lca": local, "global": reference }))?;
        }
    }
    let violations = if overruns.is_empty() { check(&lca) } else { Vec::new() };
    for v in &violations {
        lines.line(&json!({ "kind": "violation", "violation": v }))?;
    }
    Ok(VerifyOutcome {
        mismatches,
        violations: violations.len(),
        overruns: overruns.len(),
    })
}

pub fn verify(args: &VerifyArgs, exec: Execution) -> CliResult<()> {
    let graph = args.source.load()?;
    let problem = Problem::from(args.problem);
    let d = args.source.density(&graph);
    let rf = ranking_for(problem, &graph, d, &args.ranking)?;
    let count = if problem.on_edges() { graph.num_edges() } else { graph.num_vertices() };
    if let Some(&bad) = args.inject_fault.iter().find(|&&i| i >= count) {
        return Err(CliError::param(format!("fault item {bad} out of range (structure has {count})")));
    }

    let mut lines = Lines::open(args.out.as_deref())?;
    lines.header(
        "verify",
        args,
        json!({ "d": d, "items": count, "ranking": rf.params(), "budget": args.budget.budget }),
    )?;
    let inquiry = Inquiry {
        graph: &graph,
        rf: &rf,
        method: args.method.into(),
        budget: args.budget.budget,
        exec,
    };
    let faults = &args.inject_fault;
    let outcome = match problem {
        Problem::Mis => compare(&graph, &GreedyMis, &inquiry, faults, |a| verify_mis(&graph, a), &mut lines)?,
        Problem::Coloring => {
            compare(&graph, &GreedyColoring, &inquiry, faults, |a| verify_coloring(&graph, a), &mut lines)?
        }
        Problem::Matching => compare(
            &LineGraph::new(&graph),
            &GreedyMatching,
            &inquiry,
            faults,
            |a| verify_matching(&graph, a),
            &mut lines,
        )?,
    };
    let passed = outcome.mismatches == 0 && outcome.violations == 0 && outcome.overruns == 0;
    lines.line(&json!({
        "kind": "summary",
        "items": count,
        "mismatches": outcome.mismatches,
        "violations": outcome.violations,
        "budget_exceeded": outcome.overruns,
        "passed": passed,
    }))?;
    lines.finish()?;
    eprintln!(
        "{count} items: {} mismatches, {} violations, {} budget overruns",
        outcome.mismatches, outcome.violations, outcome.overruns
    );
    if outcome.overruns > 0 {
        return Err(CliError::new(BUDGET, format!("{} inquiries exceeded the budget", outcome.overruns)));
    }
    if !passed {
        return Err(CliError::new(MISMATCH, "LCA answers disagree with the global run or are infeasible"));
    }
    Ok(())
}

pub fn stats(args: &StatsArgs, exec: Execution) -> CliResult<()> {
    let graph = args.source.load()?;
    let d = args.source.density(&graph);
    let n = graph.num_vertices();
    let levels = args.levels.unwrap_or_else(|| default_levels(d));
    let k = args.k.unwrap_or_else(|| default_k(d, n.max(2), 1.0));
    let stats = vicinity_stats(
        &graph,
        d,
        levels,
        k,
        args.sample_size,
        args.trials,
        args.stats_seed,
        args.budget.budget,
        exec,
    )?;
    let mut lines = Lines::open(args.out.as_deref())?;
    lines.header("stats", args, json!({ "n": n, "d": d, "L": levels, "k": k }))?;
    for r in &stats.records {
        lines.line(r)?;
    }
    lines.line(&json!({
        "summary": {
            "t_v": stats.t_v,
            "t_e": stats.t_e,
            "t_e_squared": stats.t_e_squared,
            "queries": stats.queries,
            "budget_exceeded": stats.budget_exceeded,
        }
    }))?;
    lines.finish()?;
    eprintln!(
        "{} explorations: mean t_v {:.2}, mean t_e {:.2}, mean t_e^2 {:.2}, {} over budget",
        stats.records.len(),
        stats.t_v.mean,
        stats.t_e.mean,
        stats.t_e_squared.mean,
        stats.budget_exceeded
    );
    Ok(())
}
