//! Command-line front end.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cost::{Budget, CostFunction};
use crate::cost_constrained::{plan_any, plan_cost_constrained, CcQuery, PlanError, PlanResult};
use crate::graph::{strictify, EvolvingGraph, Node, TemporalGraph, Time};
use crate::history_constrained::plan_history_constrained;
use crate::oracle::{oracle_cc_plan, oracle_hc_plan, OracleBounds};
use crate::render::{render_dot, render_grid};
use crate::suite::{run_suite, SuiteConfig};
use crate::travel::Travel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "chronoplan",
    version,
    about = "Plan travels through evolving graphs with backward time jumps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Earliest arrival whose total backward cost fits a budget.
    PlanCost {
        #[command(flatten)]
        query: QueryArgs,
        /// Budget, or `inf`.
        #[arg(long)]
        budget: Budget,
    },
    /// Earliest arrival that never jumps more than H below the latest time reached.
    PlanHistory {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        history: Time,
    },
    /// Brute-force answer for small instances.
    Oracle {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, conflicts_with = "history", required_unless_present = "history")]
        budget: Option<Budget>,
        #[arg(long)]
        history: Option<Time>,
        /// Maximum number of steps explored.
        #[arg(long)]
        max_len: Option<usize>,
        /// Also run the planner and fail with exit code 4 if the answers differ.
        #[arg(long)]
        check: bool,
    },
    /// Random evolving graph.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        lifetime: Time,
        #[arg(long)]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time grid of a graph with travels drawn on it.
    Render {
        #[arg(long)]
        graph: PathBuf,
        /// A travel in text form, e.g. "(0,0) (0,5) (1,5)"; repeatable.
        #[arg(long = "travel")]
        travels: Vec<String>,
        /// Graphviz output instead of the grid.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Run the acceptance checks.
    CheckSuite {
        /// Smaller instance counts.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    src: Node,
    #[arg(long)]
    dst: Node,
    #[arg(long)]
    cost: CostFunction,
    /// Every edge traversal takes one time unit.
    #[arg(long)]
    strict: bool,
}

/// Exit code and the text to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn new(code: i32, output: impl Into<String>) -> Self {
        Outcome {
            code,
            output: output.into(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome::new(EXIT_USAGE, format!("error: {msg}\n"))
    }
}

/// `delay=<d> cost=<c>` and the travel, or `infeasible` with exit code 3.
pub fn plan_outcome(result: Option<&PlanResult>) -> Outcome {
    match result {
        Some(p) => Outcome::new(
            EXIT_OK,
            format!("delay={} cost={}\n{}\n", p.delay, p.cost, p.travel),
        ),
        None => Outcome::new(EXIT_INFEASIBLE, "infeasible\n"),
    }
}

fn load_graph(path: &PathBuf) -> Result<EvolvingGraph, Outcome> {
    let text =
        fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    EvolvingGraph::parse(&text).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

/// Falls back to planning under the sub-additive closure when `f` is
/// user-optimizable but not user-friendly.
pub fn plan_cost_any<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    q: CcQuery,
) -> Result<Option<PlanResult>, PlanError> {
    match plan_cost_constrained(g, f, q) {
        Err(PlanError::NotUserFriendly { .. }) => plan_any(g, f, q),
        other => other,
    }
}

fn with_graph<T>(g: &EvolvingGraph, strict: bool, run: impl Fn(&dyn TemporalGraph) -> T) -> T {
    if strict {
        run(&strictify(g))
    } else {
        run(g)
    }
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome::new(code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::PlanCost { query, budget } => {
            let g = load_graph(&query.graph)?;
            let q = CcQuery {
                src: query.src,
                dst: query.dst,
                budget,
            };
            let result = with_graph(&g, query.strict, |g| plan_cost_any(g, &query.cost, q));
            Ok(plan_outcome(result.map_err(Outcome::usage)?.as_ref()))
        }
        Command::PlanHistory { query, history } => {
            let g = load_graph(&query.graph)?;
            let result = with_graph(&g, query.strict, |g| {
                plan_history_constrained(g, &query.cost, history, query.src, query.dst)
            });
            Ok(plan_outcome(result.map_err(Outcome::usage)?.as_ref()))
        }
        Command::Oracle {
            query,
            budget,
            history,
            max_len,
            check,
        } => {
            let g = load_graph(&query.graph)?;
            for node in [query.src, query.dst] {
                if node >= g.n() {
                    return Err(Outcome::usage(PlanError::NodeOutOfRange { node, n: g.n() }));
                }
            }
            with_graph(&g, query.strict, |g| {
                oracle_command(g, &query, budget, history, max_len, check)
            })
        }
        Command::Gen {
            nodes,
            lifetime,
            prob,
            seed,
            out,
        } => {
            if nodes == 0 || !(0.0..=1.0).contains(&prob) {
                return Err(Outcome::usage("need --nodes >= 1 and 0 <= --prob <= 1"));
            }
            let seed = match std::env::var("CHRONOPLAN_SEED") {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Outcome::usage(format!("CHRONOPLAN_SEED is not a seed: {s}")))?,
                Err(_) => seed,
            };
            let text = EvolvingGraph::generate_random(nodes, lifetime, prob, seed).serialize();
            match out {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::new(EXIT_OK, ""))
                }
                None => Ok(Outcome::new(EXIT_OK, text)),
            }
        }
        Command::Render {
            graph,
            travels,
            dot,
            strict,
        } => {
            let g = load_graph(&graph)?;
            let travels = travels
                .iter()
                .map(|t| t.parse::<Travel>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(Outcome::usage)?;
            let text = with_graph(&g, strict, |g| {
                if dot {
                    render_dot(g, &travels)
                } else {
                    render_grid(g, &travels)
                }
            });
            Ok(Outcome::new(EXIT_OK, text))
        }
        Command::CheckSuite { quick } => {
            let config = if quick {
                SuiteConfig::quick()
            } else {
                SuiteConfig::default()
            };
            let reports = run_suite(&config);
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{r}\n"));
            }
            let code = if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok(Outcome::new(code, text))
        }
    }
}

fn oracle_command(
    g: &dyn TemporalGraph,
    query: &QueryArgs,
    budget: Option<Budget>,
    history: Option<Time>,
    max_len: Option<usize>,
    check: bool,
) -> Result<Outcome, Outcome> {
    let mut bounds = OracleBounds::for_instance(g, &query.cost);
    if let Some(len) = max_len {
        bounds = OracleBounds::new(len, bounds.max_time);
    }
    let (expected, planned) = match (budget, history) {
        (Some(budget), _) => {
            let expected = oracle_cc_plan(g, &query.cost, budget, query.src, query.dst, bounds);
            let q = CcQuery {
                src: query.src,
                dst: query.dst,
                budget,
            };
            (expected, check.then(|| plan_cost_any(g, &query.cost, q)))
        }
        (None, Some(h)) => {
            let expected = oracle_hc_plan(g, &query.cost, h, query.src, query.dst, bounds);
            let planned =
                check.then(|| plan_history_constrained(g, &query.cost, h, query.src, query.dst));
            (expected, planned)
        }
        (None, None) => return Err(Outcome::usage("one of --budget or --history is required")),
    };
    let expected = expected.map_err(Outcome::usage)?;
    let mut outcome = plan_outcome(expected.as_ref());
    if let Some(planned) = planned {
        let planned = planned.map_err(Outcome::usage)?;
        let key = |p: &Option<PlanResult>| p.as_ref().map(|p| (p.delay, p.cost));
        if key(&planned) == key(&expected) {
            outcome.output.push_str("check=ok\n");
        } else {
            let shown = match &planned {
                Some(p) => format!("delay={} cost={}", p.delay, p.cost),
                None => "infeasible".into(),
            };
            outcome = Outcome::new(
                EXIT_MISMATCH,
                format!("{}check=mismatch planner: {shown}\n", outcome.output),
            );
        }
    }
    Ok(outcome)
}
