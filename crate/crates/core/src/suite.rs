//! Acceptance checks, shared by `chronoplan check-suite` and the
//! `acceptance` test target.
//!
//! Every expected value comes from the brute-force oracle or from an
//! independent structural fact (footprint reachability, the file format),
//! never from the planners themselves.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::plan_outcome;
use crate::cost::{Budget, Cost, CostFunction};
use crate::cost_constrained::{
    plan_any, plan_cost_constrained, CcQuery, CostConstrainedSearch, PlanResult,
};
use crate::graph::{EvolvingGraph, Node, TemporalEdge, TemporalGraph, Time};
use crate::history_constrained::plan_history_constrained;
use crate::oracle::{
    enumerate_travels, simple_cost_profile, CostOracle, HistoryOracle, OracleBounds,
};
use crate::render::render_grid;
use crate::travel::{Step, Travel};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Random graphs for the oracle equivalence checks.
    pub graphs: usize,
    /// Random tables for the closure reduction.
    pub tables: usize,
    pub roundtrips: usize,
    pub fuzz: usize,
    /// Rungs of the work-growth ladder.
    pub ladder: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            graphs: 300,
            tables: 60,
            roundtrips: 100,
            fuzz: 200,
            ladder: 6,
        }
    }
}

impl SuiteConfig {
    pub fn quick() -> Self {
        SuiteConfig {
            graphs: 40,
            tables: 10,
            roundtrips: 20,
            fuzz: 30,
            ladder: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    check: impl FnOnce() -> (bool, String),
) -> CriterionReport {
    let start = Instant::now();
    let (mut passed, mut detail) = check();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
        }
    }
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_suite(config: &SuiteConfig) -> Vec<CriterionReport> {
    vec![
        cost_constrained_equivalence(config),
        history_constrained_equivalence(config),
        delay_zero_law(config),
        closure_reduction(config),
        simple_travels_suffice(config),
        sub_travel_optimality(),
        anchors(),
        termination_and_growth(config),
        format_round_trip(config),
    ]
}

const EDGE_PROBS: [f64; 3] = [0.15, 0.3, 0.5];

/// Random graphs cycling through n in 2..=5, lifetime in 0..=6 and the three
/// edge probabilities.
pub fn instance_family(count: usize) -> Vec<EvolvingGraph> {
    (0..count)
        .map(|i| {
            let n = 2 + i % 4;
            let lifetime = ((i / 4) % 7) as Time;
            let p = EDGE_PROBS[(i / 28) % 3];
            EvolvingGraph::generate_random(n, lifetime, p, 0x5EED_0000 + i as u64)
        })
        .collect()
}

pub fn user_friendly_functions() -> Vec<CostFunction> {
    ["identity", "constant:1", "table:1,1,2,2,3;tail=hold"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn budgets() -> [Budget; 4] {
    [
        Cost::from_int(0).into(),
        Cost::from_int(1).into(),
        Cost::from_int(2).into(),
        Budget::Unbounded,
    ]
}

fn key(p: &Option<PlanResult>) -> Option<(i64, Cost)> {
    p.as_ref().map(|p| (p.delay, p.cost))
}

fn show<D: fmt::Display>(k: Option<(D, Cost)>) -> String {
    match k {
        Some((d, c)) => format!("delay={d} cost={c}"),
        None => "infeasible".into(),
    }
}

/// Structural checks on a planner's travel.
fn travel_problem<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    src: Node,
    dst: Node,
    p: &PlanResult,
) -> Option<String> {
    let t = &p.travel;
    if !t.validate(g) {
        return Some(format!("invalid travel {t}"));
    }
    if t.first() != Step::new(src, 0) || t.last().node != dst {
        return Some(format!("wrong endpoints {t}"));
    }
    match t.cost(f) {
        Ok(c) if c == p.cost => None,
        Ok(c) => Some(format!("travel {t} costs {c}, reported {}", p.cost)),
        Err(e) => Some(e.to_string()),
    }
}

struct Tally {
    checked: usize,
    mismatches: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            mismatches: 0,
            first: None,
        }
    }

    fn record(&mut self, problem: Option<String>) {
        self.checked += 1;
        if let Some(p) = problem {
            self.mismatches += 1;
            self.first.get_or_insert(p);
        }
    }

    fn finish(self, what: &str) -> (bool, String) {
        let mut detail = format!("{} {what}, {} mismatches", self.checked, self.mismatches);
        if let Some(first) = self.first {
            detail.push_str(&format!("; first: {first}"));
        }
        (self.mismatches == 0 && self.checked > 0, detail)
    }
}

fn cost_constrained_equivalence(config: &SuiteConfig) -> CriterionReport {
    timed(
        1,
        "cost-constrained oracle equivalence",
        Some(Duration::from_secs(60)),
        || {
            let mut tally = Tally::new();
            for (gi, g) in instance_family(config.graphs).iter().enumerate() {
                for f in user_friendly_functions() {
                    let bounds = OracleBounds::for_instance(g, &f);
                    for src in 0..g.n() {
                        let oracle = CostOracle::new(g, &f, Step::new(src, 0), bounds).unwrap();
                        for dst in 0..g.n() {
                            for budget in budgets() {
                                let expected = oracle.best(dst, budget).map(|(t, c)| (t as i64, c));
                                let q = CcQuery { src, dst, budget };
                                let problem = match plan_cost_constrained(g, &f, q) {
                                Err(e) => Some(format!("graph {gi}: {e}")),
                                Ok(got) if key(&got) != expected => Some(format!(
                                    "graph {gi} f={f} {src}->{dst} C={budget}: planner {}, oracle {}",
                                    show(key(&got)),
                                    show(expected)
                                )),
                                Ok(Some(p)) => travel_problem(g, &f, src, dst, &p),
                                Ok(None) => None,
                            };
                                tally.record(problem);
                            }
                        }
                    }
                }
            }
            tally.finish("queries")
        },
    )
}

fn history_constrained_equivalence(config: &SuiteConfig) -> CriterionReport {
    timed(
        2,
        "history-constrained oracle equivalence",
        Some(Duration::from_secs(120)),
        || {
            let mut tally = Tally::new();
            for (gi, g) in instance_family(config.graphs).iter().enumerate() {
                let horizons: BTreeSet<Time> = [0, 1, 2, g.lifetime()].into();
                for f in user_friendly_functions() {
                    let bounds = OracleBounds::for_instance(g, &f);
                    for &h in &horizons {
                        for src in 0..g.n() {
                            let oracle = HistoryOracle::new(g, &f, h, src, bounds).unwrap();
                            for dst in 0..g.n() {
                                let expected = oracle.best(dst).map(|(t, c)| (t as i64, c));
                                let problem = match plan_history_constrained(g, &f, h, src, dst) {
                                    Err(e) => Some(format!("graph {gi}: {e}")),
                                    Ok(got) if key(&got) != expected => Some(format!(
                                    "graph {gi} f={f} {src}->{dst} H={h}: planner {}, oracle {}",
                                    show(key(&got)),
                                    show(expected)
                                )),
                                    Ok(Some(p)) if !p.travel.respects_history_bound(h) => {
                                        Some(format!("graph {gi}: {} breaks H={h}", p.travel))
                                    }
                                    Ok(Some(p)) => travel_problem(g, &f, src, dst, &p),
                                    Ok(None) => None,
                                };
                                tally.record(problem);
                            }
                        }
                    }
                }
            }
            tally.finish("queries")
        },
    )
}

/// Nodes reachable from `src` in the footprint.
fn footprint_reach(g: &EvolvingGraph, src: Node) -> Vec<bool> {
    let footprint = g.footprint();
    let mut seen = vec![false; g.n()];
    seen[src] = true;
    let mut stack = vec![src];
    while let Some(u) = stack.pop() {
        for &(a, b) in &footprint.edges {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen
}

fn delay_zero_law(config: &SuiteConfig) -> CriterionReport {
    timed(3, "delay-zero law", None, || {
        let mut tally = Tally::new();
        let mut reachable = 0;
        for (gi, g) in instance_family(config.graphs).iter().enumerate() {
            for src in 0..g.n() {
                let reach = footprint_reach(g, src);
                for dst in 0..g.n() {
                    reachable += reach[dst] as usize;
                    for f in user_friendly_functions() {
                        let q = CcQuery {
                            src,
                            dst,
                            budget: Budget::Unbounded,
                        };
                        let problem = match plan_cost_constrained(g, &f, q) {
                            Err(e) => Some(e.to_string()),
                            Ok(Some(p)) if !reach[dst] || p.delay != 0 => Some(format!(
                                "graph {gi} {src}->{dst}: delay {} (reachable: {})",
                                p.delay, reach[dst]
                            )),
                            Ok(None) if reach[dst] => {
                                Some(format!("graph {gi} {src}->{dst}: no travel"))
                            }
                            _ => None,
                        };
                        tally.record(problem);
                    }
                }
            }
        }
        let (ok, detail) = tally.finish("queries");
        (ok, format!("{detail}, {reachable} reachable pairs"))
    })
}

/// `[5,1]` with tail 1, then random tables that are total but not
/// non-decreasing or not sub-additive.
pub fn non_friendly_tables(count: usize) -> Vec<CostFunction> {
    let mut out = vec!["table:5,1;tail=const:1".parse().unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7AB1E);
    while out.len() < count {
        let len = rng.gen_range(2..=5);
        let values: Vec<Cost> = (0..len)
            .map(|_| Cost::from_int(rng.gen_range(0..=6)))
            .collect();
        let tail = crate::cost::TableTail::Constant(Cost::from_int(rng.gen_range(0..=6)));
        let f = CostFunction::table(values, Some(tail));
        if f.is_user_optimizable() && !f.is_user_friendly(len as u64 + 2) && !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

fn closure_reduction(config: &SuiteConfig) -> CriterionReport {
    timed(4, "closure reduction", None, || {
        let mut tally = Tally::new();
        let tables = non_friendly_tables(config.tables);
        for (ti, f) in tables.iter().enumerate() {
            for k in 0..3u64 {
                let seed = 0xC105_0000 + 8 * ti as u64 + k;
                let n = 2 + (seed % 3) as usize;
                let lifetime = 1 + ((seed / 3) % 5) as Time;
                let g = EvolvingGraph::generate_random(
                    n,
                    lifetime,
                    EDGE_PROBS[(ti + k as usize) % 3],
                    seed,
                );
                let bounds = OracleBounds::for_instance(&g, f);
                for src in 0..n {
                    let oracle = CostOracle::new(&g, f, Step::new(src, 0), bounds).unwrap();
                    for dst in 0..n {
                        for budget in budgets() {
                            let expected = oracle.best(dst, budget).map(|(t, c)| (t as i64, c));
                            let problem = match plan_any(&g, f, CcQuery { src, dst, budget }) {
                                Err(e) => Some(e.to_string()),
                                Ok(got) if key(&got) != expected => Some(format!(
                                    "f={f} seed {seed} {src}->{dst} C={budget}: planned {}, raw optimum {}",
                                    show(key(&got)),
                                    show(expected)
                                )),
                                Ok(Some(p)) => travel_problem(&g, f, src, dst, &p),
                                Ok(None) => None,
                            };
                            tally.record(problem);
                        }
                    }
                }
            }
        }
        let (ok, detail) = tally.finish("queries");
        (
            ok && tables.len() >= 50.min(config.tables),
            format!("{} tables, {detail}", tables.len()),
        )
    })
}

fn simple_travels_suffice(config: &SuiteConfig) -> CriterionReport {
    timed(5, "simple travels suffice", None, || {
        let mut tally = Tally::new();
        for (gi, g) in instance_family(config.graphs).iter().enumerate() {
            for f in user_friendly_functions() {
                let bounds = OracleBounds::for_instance(g, &f);
                for src in 0..g.n() {
                    let oracle = CostOracle::new(g, &f, Step::new(src, 0), bounds).unwrap();
                    for dst in 0..g.n() {
                        let profile = simple_cost_profile(g, &f, src, dst, bounds).unwrap();
                        for budget in budgets() {
                            let simple = profile.iter().enumerate().find_map(|(t, c)| {
                                c.filter(|&c| budget.admits(c)).map(|c| (t as Time, c))
                            });
                            let full = oracle.best(dst, budget);
                            tally.record((simple != full).then(|| {
                                format!(
                                    "graph {gi} f={f} {src}->{dst} C={budget}: simple {}, all {}",
                                    show(simple),
                                    show(full)
                                )
                            }));
                        }
                    }
                }
            }
        }
        tally.finish("queries")
    })
}

/// Every graph on `n` nodes whose edges all lie in `[0, lifetime]`.
fn all_graphs(n: usize, lifetime: Time) -> Vec<EvolvingGraph> {
    let slots: Vec<TemporalEdge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .flat_map(|(u, v)| (0..=lifetime).map(move |t| TemporalEdge::new(u, v, t).unwrap()))
        .collect();
    (0u64..1 << slots.len())
        .map(|mask| {
            let edges = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e);
            EvolvingGraph::new(n, edges).unwrap()
        })
        .collect()
}

fn sub_travel_optimality() -> CriterionReport {
    timed(6, "sub-travel optimality", None, || {
        const T: Time = 3;
        let f = CostFunction::Identity;
        let mut tally = Tally::new();
        let mut graphs = 0;
        for n in 1..=3 {
            for g in all_graphs(n, T) {
                graphs += 1;
                let states: Vec<Step> = (0..n)
                    .flat_map(|u| (0..=T).map(move |t| Step::new(u, t)))
                    .collect();
                let bounds = OracleBounds::new(2 * n * (T as usize + 1), T);
                let oracles: Vec<CostOracle> = states
                    .iter()
                    .map(|&s| CostOracle::new(&g, &f, s, bounds).unwrap())
                    .collect();
                let dist = |a: Step, b: Step| {
                    oracles[a.node * (T as usize + 1) + a.time as usize].cost_to(b.node, b.time)
                };
                let check = |t: &Travel| -> Option<String> {
                    for i in 0..t.len() {
                        for j in i + 1..t.len() {
                            let sub = t.sub_travel(i, j);
                            let c = sub.cost(&f).unwrap();
                            if Some(c) != dist(sub.first(), sub.last()) {
                                return Some(format!("{t}: part {sub} costs {c}"));
                            }
                        }
                    }
                    None
                };
                for src in 0..n {
                    let start = Step::new(src, 0);
                    for dst in 0..n {
                        for t in enumerate_travels(&g, src, dst, OracleBounds::new(4, T)) {
                            if Some(t.cost(&f).unwrap()) == dist(start, t.last()) {
                                tally.record(check(&t));
                            }
                        }
                    }
                    for &s in &states {
                        if let Some(t) = oracles[src * (T as usize + 1)].travel_to(s.node, s.time) {
                            tally.record(check(&t));
                        }
                    }
                }
            }
        }
        let (ok, detail) = tally.finish("optimal travels");
        (ok, format!("{graphs} graphs, {detail}"))
    })
}

fn anchors() -> CriterionReport {
    timed(7, "hand-derived anchors", None, || {
        let id = CostFunction::Identity;
        let g1 = EvolvingGraph::from_triples(2, [(0, 1, 5)]).unwrap();
        let g2 = EvolvingGraph::from_triples(3, [(0, 1, 1), (1, 2, 0), (1, 2, 3)]).unwrap();
        let c = |v: u64| Cost::from_int(v);
        let mut tally = Tally::new();
        let cc = [
            (&g1, 1, Budget::Unbounded, (0, c(5))),
            (&g1, 1, c(3).into(), (2, c(3))),
            (&g1, 1, c(0).into(), (5, c(0))),
            (&g2, 2, Budget::Unbounded, (0, c(1))),
        ];
        for (g, dst, budget, want) in cc {
            let oracle =
                CostOracle::new(g, &id, Step::new(0, 0), OracleBounds::for_instance(g, &id))
                    .unwrap();
            let derived = oracle.best(dst, budget).map(|(t, c)| (t as i64, c));
            let got = key(&plan_cost_constrained(
                g,
                &id,
                CcQuery {
                    src: 0,
                    dst,
                    budget,
                },
            )
            .unwrap());
            tally.record((got != Some(want) || derived != Some(want)).then(|| {
                format!(
                    "C={budget}: planner {}, oracle {}, expected {}",
                    show(got),
                    show(derived),
                    show(Some(want))
                )
            }));
        }
        for (h, want) in [(1, (0, c(1))), (0, (3, c(0)))] {
            let oracle =
                HistoryOracle::new(&g2, &id, h, 0, OracleBounds::for_instance(&g2, &id)).unwrap();
            let derived = oracle.best(2).map(|(t, c)| (t as i64, c));
            let got = key(&plan_history_constrained(&g2, &id, h, 0, 2).unwrap());
            tally.record((got != Some(want) || derived != Some(want)).then(|| {
                format!(
                    "H={h}: planner {}, oracle {}, expected {}",
                    show(got),
                    show(derived),
                    show(Some(want))
                )
            }));
        }
        tally.finish("anchors")
    })
}

fn termination_and_growth(config: &SuiteConfig) -> CriterionReport {
    timed(8, "termination and work growth", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
        let functions = user_friendly_functions();
        let mut queries = 0;
        let mut errors = Vec::new();
        for _ in 0..config.fuzz {
            let n = rng.gen_range(1..=10);
            let lifetime = rng.gen_range(0..=15);
            let p = rng.gen_range(0.0..0.4);
            let g = EvolvingGraph::generate_random(n, lifetime, p, rng.gen());
            let f = &functions[rng.gen_range(0..functions.len())];
            let src = rng.gen_range(0..n);
            let budget = if rng.gen_bool(0.2) {
                Budget::Unbounded
            } else {
                Cost::from_int(rng.gen_range(0..4)).into()
            };
            let h = rng.gen_range(0..=lifetime + 1);
            for dst in 0..n {
                queries += 2;
                if let Err(e) = plan_cost_constrained(&g, f, CcQuery { src, dst, budget }) {
                    errors.push(e.to_string());
                }
                if let Err(e) = plan_history_constrained(&g, f, h, src, dst) {
                    errors.push(e.to_string());
                }
            }
        }

        // Doubling ladder: the node count doubles at fixed expected degree, so
        // the number of temporal edges roughly doubles per rung.
        let mut rungs = Vec::new();
        for k in 0..config.ladder {
            let n = 8usize << k;
            let g = EvolvingGraph::generate_random(n, 10, 3.0 / n as f64, 0x1ADD + k as u64);
            let search = CostConstrainedSearch::run(
                &g,
                &CostFunction::Identity,
                0,
                Cost::from_int(5).into(),
            )
            .unwrap();
            rungs.push((search.extracted_edge_count(), search.relaxations()));
        }
        let mut within = true;
        let mut trend = Vec::new();
        for w in rungs.windows(2) {
            let ((e0, w0), (e1, w1)) = (w[0], w[1]);
            let edge_ratio = e1 as f64 / e0.max(1) as f64;
            let work_ratio = w1 as f64 / w0.max(1) as f64;
            within &= work_ratio <= 2.0 * edge_ratio * edge_ratio;
            trend.push(format!("x{edge_ratio:.2} edges -> x{work_ratio:.2} work"));
        }
        let ladder: Vec<String> = rungs.iter().map(|(e, w)| format!("{e}:{w}")).collect();
        let detail = format!(
            "{queries} fuzzed queries, {} errors; ladder edges:work {} [{}], {}",
            errors.len(),
            ladder.join(" "),
            trend.join(", "),
            if within {
                "within quadratic slack"
            } else {
                "above quadratic slack (informative)"
            }
        );
        (errors.is_empty(), detail)
    })
}

/// Golden outputs bundled with the crate, paired with the instance that
/// must reproduce them.
pub fn golden_cases() -> Vec<(&'static str, &'static str, String)> {
    let g1 = EvolvingGraph::from_triples(2, [(0, 1, 5)]).unwrap();
    let g2 = EvolvingGraph::from_triples(3, [(0, 1, 1), (1, 2, 0), (1, 2, 3)]).unwrap();
    let id = CostFunction::Identity;
    let cc = |g: &EvolvingGraph, dst, budget| {
        plan_outcome(
            plan_cost_constrained(
                g,
                &id,
                CcQuery {
                    src: 0,
                    dst,
                    budget,
                },
            )
            .unwrap()
            .as_ref(),
        )
        .output
    };
    let hc = |g: &EvolvingGraph, h, dst| {
        plan_outcome(
            plan_history_constrained(g, &id, h, 0, dst)
                .unwrap()
                .as_ref(),
        )
        .output
    };
    let odoc: Travel = "(0,0) (0,5) (1,5) (1,0)".parse().unwrap();
    vec![
        (
            "g1.tg",
            include_str!("../tests/golden/g1.tg"),
            g1.serialize(),
        ),
        (
            "g2.tg",
            include_str!("../tests/golden/g2.tg"),
            g2.serialize(),
        ),
        (
            "g1_inf.out",
            include_str!("../tests/golden/g1_inf.out"),
            cc(&g1, 1, Budget::Unbounded),
        ),
        (
            "g1_c3.out",
            include_str!("../tests/golden/g1_c3.out"),
            cc(&g1, 1, Cost::from_int(3).into()),
        ),
        (
            "g1_c0.out",
            include_str!("../tests/golden/g1_c0.out"),
            cc(&g1, 1, Cost::ZERO.into()),
        ),
        (
            "g2_h1.out",
            include_str!("../tests/golden/g2_h1.out"),
            hc(&g2, 1, 2),
        ),
        (
            "g2_h0.out",
            include_str!("../tests/golden/g2_h0.out"),
            hc(&g2, 0, 2),
        ),
        (
            "g1_render.txt",
            include_str!("../tests/golden/g1_render.txt"),
            render_grid(&g1, &[odoc]),
        ),
        (
            "gen_4_5_0.3_7.tg",
            include_str!("../tests/golden/gen_4_5_0.3_7.tg"),
            EvolvingGraph::generate_random(4, 5, 0.3, 7).serialize(),
        ),
    ]
}

fn format_round_trip(config: &SuiteConfig) -> CriterionReport {
    timed(9, "format round trip", None, || {
        let mut tally = Tally::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0xF11E);
        for i in 0..config.roundtrips {
            let g = EvolvingGraph::generate_random(
                rng.gen_range(1..=8),
                rng.gen_range(0..=10),
                rng.gen_range(0.0..=1.0),
                i as u64,
            );
            let text = g.serialize();
            tally.record(match EvolvingGraph::parse(&text) {
                Ok(back) if back == g && back.serialize() == text => None,
                Ok(_) => Some(format!("graph {i} changed in the round trip")),
                Err(e) => Some(format!("graph {i}: {e}")),
            });
        }
        for (name, expected, actual) in golden_cases() {
            tally.record((expected != actual).then(|| format!("golden {name} differs")));
        }
        tally.finish("graphs and golden files")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_covers_the_parameter_grid() {
        let family = instance_family(84);
        let sizes: BTreeSet<usize> = family.iter().map(|g| g.n()).collect();
        assert_eq!(sizes, (2..=5).collect());
        assert!(family.iter().all(|g| g.lifetime() <= 6));
    }

    #[test]
    fn tables_are_optimizable_but_not_friendly() {
        let tables = non_friendly_tables(20);
        assert_eq!(tables.len(), 20);
        assert!(tables
            .iter()
            .all(|f| f.is_user_optimizable() && !f.is_user_friendly(8)));
        assert!(user_friendly_functions()
            .iter()
            .all(|f| f.is_user_friendly(32)));
    }

    #[test]
    fn all_graphs_counts_subsets() {
        assert_eq!(all_graphs(1, 3).len(), 1);
        assert_eq!(all_graphs(2, 1).len(), 4);
        assert_eq!(all_graphs(3, 0).len(), 8);
    }

    #[test]
    fn quick_suite_passes() {
        let reports = run_suite(&SuiteConfig::quick());
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }
}
