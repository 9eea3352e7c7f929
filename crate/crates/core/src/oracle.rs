//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code with the planners. The cost oracles relax the
//! complete time-expanded state space (every `(node, time)` pair in the
//! bounds, every jump between any two times, every edge) round by round, so
//! that round `k` holds the exact optimum over travels of at most `k + 1`
//! steps. The history oracle does the same over `(node, time, latest time
//! reached)` triples. Simple travels and raw travel streams are enumerated
//! directly.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::cost::{Budget, Cost, CostError, CostFunction, PriceTable};
use crate::cost_constrained::PlanResult;
use crate::graph::{Node, TemporalGraph, Time};
use crate::travel::{Step, Travel};

/// Limits of an exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    /// Maximum number of steps in a travel.
    pub max_len: usize,
    /// No step may be later than this.
    pub max_time: Time,
}

impl OracleBounds {
    pub fn new(max_len: usize, max_time: Time) -> Self {
        OracleBounds {
            max_len: max_len.max(1),
            max_time,
        }
    }

    /// `max_len = 2·n·(lifetime + 1)`; `max_time` is the latest edge arrival,
    /// extended past the table for functions that dip after some span so
    /// that "wait, then jump further back" detours stay in range.
    pub fn for_instance<G: TemporalGraph + ?Sized>(g: &G, f: &CostFunction) -> Self {
        let n = g.node_count();
        let max_len = 2 * n * (g.lifetime() as usize + 1);
        let overshoot = match f.settles_after() {
            0 => 0,
            k => k as Time + 1,
        };
        Self::new(max_len, g.latest_time() + overshoot)
    }
}

type Cell = Option<(Cost, Option<usize>)>;

/// Round-by-round exact relaxation over an explicit state graph.
#[derive(Debug)]
struct Relaxation<S> {
    states: Vec<S>,
    /// `rounds[k][s]`: best cost of reaching `s` in at most `k` moves, and
    /// the state it was reached from in round `k - 1` (`None` if carried).
    rounds: Vec<Vec<Cell>>,
}

impl<S: Copy + Eq + Hash> Relaxation<S> {
    fn run(start: S, max_len: usize, successors: impl Fn(S) -> Vec<(S, Cost)>) -> Self {
        let mut index = HashMap::from([(start, 0)]);
        let mut states = vec![start];
        let mut adjacency: Vec<Vec<(usize, Cost)>> = Vec::new();
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let mut out = Vec::new();
            for (next, w) in successors(s) {
                let id = *index.entry(next).or_insert_with(|| {
                    states.push(next);
                    queue.push_back(next);
                    states.len() - 1
                });
                out.push((id, w));
            }
            adjacency.push(out);
        }

        let mut first = vec![None; states.len()];
        first[0] = Some((Cost::ZERO, None));
        let mut rounds = vec![first];
        for _ in 1..max_len {
            let prev = rounds.last().unwrap();
            let mut next: Vec<Cell> = prev
                .iter()
                .map(|c| c.map(|(cost, _)| (cost, None)))
                .collect();
            let mut changed = false;
            for (s, cell) in prev.iter().enumerate() {
                let Some((cost, _)) = cell else { continue };
                for &(to, w) in &adjacency[s] {
                    let cand = *cost + w;
                    if next[to].is_none_or(|(c, _)| cand < c) {
                        next[to] = Some((cand, Some(s)));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
            rounds.push(next);
        }
        Relaxation { states, rounds }
    }

    fn best(&self) -> impl Iterator<Item = (S, Cost)> + '_ {
        let last = self.rounds.last().unwrap();
        self.states
            .iter()
            .zip(last)
            .filter_map(|(&s, cell)| cell.map(|(c, _)| (s, c)))
    }

    fn cost_of(&self, s: S) -> Option<Cost> {
        let i = self.states.iter().position(|&x| x == s)?;
        self.rounds.last().unwrap()[i].map(|(c, _)| c)
    }

    /// States along an optimal path to `s`, from the start.
    fn path_to(&self, s: S) -> Option<Vec<S>> {
        let mut i = self.states.iter().position(|&x| x == s)?;
        self.rounds.last().unwrap()[i]?;
        let mut path = vec![self.states[i]];
        for k in (1..self.rounds.len()).rev() {
            if let Some((_, Some(from))) = self.rounds[k][i] {
                i = from;
                path.push(self.states[i]);
            }
        }
        path.reverse();
        Some(path)
    }
}

fn prices(f: &CostFunction, bounds: &OracleBounds) -> Result<PriceTable, CostError> {
    f.tabulate(bounds.max_time as u64)
}

/// Exhaustive minimum backward cost from a start step to every
/// `(node, time)` within the bounds.
#[derive(Debug)]
pub struct CostOracle {
    relaxation: Relaxation<Step>,
}

impl CostOracle {
    pub fn new<G: TemporalGraph + ?Sized>(
        g: &G,
        f: &CostFunction,
        start: Step,
        bounds: OracleBounds,
    ) -> Result<Self, CostError> {
        let prices = prices(f, &bounds)?;
        let delta = g.transit();
        let relaxation = Relaxation::run(start, bounds.max_len, |s: Step| {
            let mut out = Vec::new();
            for v in 0..g.node_count() {
                if v != s.node && s.time + delta <= bounds.max_time && g.has_edge(s.node, v, s.time)
                {
                    out.push((Step::new(v, s.time + delta), Cost::ZERO));
                }
            }
            for t in 0..=bounds.max_time {
                if t != s.time {
                    out.push((Step::new(s.node, t), prices.price(s.time as i64 - t as i64)));
                }
            }
            out
        });
        Ok(CostOracle { relaxation })
    }

    pub fn cost_to(&self, u: Node, t: Time) -> Option<Cost> {
        self.relaxation.cost_of(Step::new(u, t))
    }

    pub fn travel_to(&self, u: Node, t: Time) -> Option<Travel> {
        let path = self.relaxation.path_to(Step::new(u, t))?;
        Travel::new(path).ok()
    }

    /// Earliest arrival at `dst` within budget, and its cheapest cost.
    pub fn best(&self, dst: Node, budget: Budget) -> Option<(Time, Cost)> {
        self.relaxation
            .best()
            .filter(|(s, c)| s.node == dst && budget.admits(*c))
            .map(|(s, c)| (s.time, c))
            .min()
    }
}

/// Exhaustive search over `(node, time, latest time reached)`.
#[derive(Debug)]
pub struct HistoryOracle {
    relaxation: Relaxation<(Step, Time)>,
}

impl HistoryOracle {
    pub fn new<G: TemporalGraph + ?Sized>(
        g: &G,
        f: &CostFunction,
        history: Time,
        src: Node,
        bounds: OracleBounds,
    ) -> Result<Self, CostError> {
        let prices = prices(f, &bounds)?;
        let delta = g.transit();
        let relaxation = Relaxation::run(
            (Step::new(src, 0), 0),
            bounds.max_len,
            |(s, reached): (Step, Time)| {
                let mut out = Vec::new();
                for v in 0..g.node_count() {
                    let arrival = s.time + delta;
                    if v != s.node && arrival <= bounds.max_time && g.has_edge(s.node, v, s.time) {
                        out.push(((Step::new(v, arrival), reached.max(arrival)), Cost::ZERO));
                    }
                }
                for t in 0..=bounds.max_time {
                    if t != s.time && t as u64 + history as u64 >= reached as u64 {
                        let cost = prices.price(s.time as i64 - t as i64);
                        out.push(((Step::new(s.node, t), reached.max(t)), cost));
                    }
                }
                out
            },
        );
        Ok(HistoryOracle { relaxation })
    }

    fn best_state(&self, dst: Node) -> Option<((Step, Time), Cost)> {
        self.relaxation
            .best()
            .filter(|((s, _), _)| s.node == dst)
            .min_by_key(|&((s, reached), c)| (s.time, c, reached))
    }

    pub fn best(&self, dst: Node) -> Option<(Time, Cost)> {
        self.best_state(dst).map(|((s, _), c)| (s.time, c))
    }

    pub fn best_travel(&self, dst: Node) -> Option<Travel> {
        let (state, _) = self.best_state(dst)?;
        let path = self.relaxation.path_to(state)?;
        Travel::new(path.into_iter().map(|(s, _)| s).collect()).ok()
    }
}

/// Best cost of a budget-feasible travel from `(src, 0)` ending exactly at `(u, t)`.
pub fn oracle_delta_c<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    budget: Budget,
    src: Node,
    u: Node,
    t: Time,
    bounds: OracleBounds,
) -> Result<Option<Cost>, CostError> {
    let oracle = CostOracle::new(g, f, Step::new(src, 0), bounds)?;
    Ok(oracle.cost_to(u, t).filter(|&c| budget.admits(c)))
}

/// Lexicographic optimum `(delay, cost)` among budget-feasible travels.
pub fn oracle_cc<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    budget: Budget,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Option<(i64, Cost)>, CostError> {
    let oracle = CostOracle::new(g, f, Step::new(src, 0), bounds)?;
    Ok(oracle.best(dst, budget).map(|(t, c)| (t as i64, c)))
}

/// Like [`oracle_cc`], with a witness travel.
pub fn oracle_cc_plan<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    budget: Budget,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Option<PlanResult>, CostError> {
    let oracle = CostOracle::new(g, f, Step::new(src, 0), bounds)?;
    Ok(oracle.best(dst, budget).map(|(t, c)| {
        let travel = oracle
            .travel_to(dst, t)
            .expect("reachable state has a path");
        PlanResult::from_travel(travel, c)
    }))
}

/// Lexicographic optimum `(delay, cost)` among history-constrained travels.
pub fn oracle_hc<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    history: Time,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Option<(i64, Cost)>, CostError> {
    let oracle = HistoryOracle::new(g, f, history, src, bounds)?;
    Ok(oracle.best(dst).map(|(t, c)| (t as i64, c)))
}

/// Like [`oracle_hc`], with a witness travel.
pub fn oracle_hc_plan<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    history: Time,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Option<PlanResult>, CostError> {
    let oracle = HistoryOracle::new(g, f, history, src, bounds)?;
    Ok(oracle
        .best(dst)
        .map(|(_, c)| PlanResult::from_travel(oracle.best_travel(dst).expect("reachable"), c)))
}

/// [`oracle_cc`] restricted to simple travels.
pub fn oracle_cc_simple<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    budget: Budget,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Option<(i64, Cost)>, CostError> {
    let profile = simple_cost_profile(g, f, src, dst, bounds)?;
    Ok(profile
        .iter()
        .enumerate()
        .find_map(|(t, c)| c.filter(|&c| budget.admits(c)).map(|c| (t as i64, c))))
}

/// Cheapest simple travel ending at `(dst, t)`, for every `t` up to
/// `max_time`, by direct enumeration: every simple footprint path, every
/// choice of crossing time per edge, and every final jump at `dst`.
pub fn simple_cost_profile<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> Result<Vec<Option<Cost>>, CostError> {
    let prices = prices(f, &bounds)?;
    let mut profile: Vec<Option<Cost>> = vec![None; bounds.max_time as usize + 1];
    let mut on_path = vec![false; g.node_count()];
    on_path[src] = true;
    let mut visit = |arrival: Time, cost: Cost| {
        for (end, slot) in profile.iter_mut().enumerate() {
            let total = cost + prices.price(arrival as i64 - end as i64);
            if slot.is_none_or(|c| total < c) {
                *slot = Some(total);
            }
        }
    };
    simple_paths(
        g,
        &prices,
        bounds.max_time,
        src,
        dst,
        0,
        Cost::ZERO,
        &mut on_path,
        &mut visit,
    );
    Ok(profile)
}

#[allow(clippy::too_many_arguments)]
fn simple_paths<G: TemporalGraph + ?Sized>(
    g: &G,
    prices: &PriceTable,
    max_time: Time,
    at: Node,
    dst: Node,
    arrival: Time,
    cost: Cost,
    on_path: &mut Vec<bool>,
    visit: &mut impl FnMut(Time, Cost),
) {
    if at == dst {
        visit(arrival, cost);
        return;
    }
    for v in 0..g.node_count() {
        if on_path[v] || g.departures(at, v).is_empty() {
            continue;
        }
        on_path[v] = true;
        for &depart in g.departures(at, v) {
            let next = depart + g.transit();
            if next > max_time {
                continue;
            }
            let step_cost = cost + prices.price(arrival as i64 - depart as i64);
            simple_paths(g, prices, max_time, v, dst, next, step_cost, on_path, visit);
        }
        on_path[v] = false;
    }
}

/// Depth-first stream of every valid travel from `(src, 0)` that ends at
/// `dst`, has at most `max_len` steps and never exceeds `max_time`.
pub fn enumerate_travels<'g, G: TemporalGraph + ?Sized>(
    g: &'g G,
    src: Node,
    dst: Node,
    bounds: OracleBounds,
) -> TravelStream<'g, G> {
    TravelStream {
        graph: g,
        dst,
        bounds,
        stack: vec![vec![Step::new(src, 0)]],
    }
}

pub struct TravelStream<'g, G: TemporalGraph + ?Sized> {
    graph: &'g G,
    dst: Node,
    bounds: OracleBounds,
    stack: Vec<Vec<Step>>,
}

impl<G: TemporalGraph + ?Sized> Iterator for TravelStream<'_, G> {
    type Item = Travel;

    fn next(&mut self) -> Option<Travel> {
        while let Some(path) = self.stack.pop() {
            let last = *path.last().unwrap();
            if path.len() < self.bounds.max_len {
                let g = self.graph;
                for t in (0..=self.bounds.max_time).rev() {
                    let mut next = path.clone();
                    next.push(Step::new(last.node, t));
                    self.stack.push(next);
                }
                let arrival = last.time + g.transit();
                if arrival <= self.bounds.max_time {
                    for &v in g.neighbors(last.node).iter().rev() {
                        if g.has_edge(last.node, v, last.time) {
                            let mut next = path.clone();
                            next.push(Step::new(v, arrival));
                            self.stack.push(next);
                        }
                    }
                }
            }
            if last.node == self.dst {
                return Some(Travel::new(path).unwrap());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EvolvingGraph;

    fn c(v: u64) -> Cost {
        Cost::from_int(v)
    }

    fn g1() -> EvolvingGraph {
        EvolvingGraph::from_triples(2, [(0, 1, 5)]).unwrap()
    }

    fn g2() -> EvolvingGraph {
        EvolvingGraph::from_triples(3, [(0, 1, 1), (1, 2, 0), (1, 2, 3)]).unwrap()
    }

    fn tr(pairs: &[(Node, Time)]) -> Travel {
        Travel::from_pairs(pairs).unwrap()
    }

    #[test]
    fn enumeration_contains_expected_travels() {
        let g = g1();
        let all: Vec<Travel> = enumerate_travels(&g, 0, 1, OracleBounds::new(4, 5)).collect();
        assert!(all.contains(&tr(&[(0, 0), (0, 5), (1, 5)])));
        assert!(all.contains(&tr(&[(0, 0), (0, 5), (1, 5), (1, 0)])));
        assert!(all
            .iter()
            .all(|t| t.validate(&g) && t.len() <= 4 && t.last().node == 1));

        let own: Vec<Travel> = enumerate_travels(&g, 0, 0, OracleBounds::new(1, 5)).collect();
        assert_eq!(own, vec![tr(&[(0, 0)])]);

        let split = EvolvingGraph::from_triples(3, [(0, 1, 2)]).unwrap();
        assert_eq!(
            enumerate_travels(&split, 0, 2, OracleBounds::new(5, 2)).count(),
            0
        );
    }

    #[test]
    fn enumeration_is_complete_on_a_tiny_instance() {
        // Independent count: every sequence of states, filtered by validity.
        let g = g1();
        let bounds = OracleBounds::new(3, 5);
        let states: Vec<Step> = (0..2)
            .flat_map(|n| (0..=5).map(move |t| Step::new(n, t)))
            .collect();
        let mut expected = 0;
        let mut prefixes = vec![vec![Step::new(0, 0)]];
        while let Some(p) = prefixes.pop() {
            let t = Travel::new(p.clone()).unwrap();
            if t.validate(&g) && t.last().node == 1 {
                expected += 1;
            }
            if p.len() < bounds.max_len {
                for s in &states {
                    let mut q = p.clone();
                    q.push(*s);
                    prefixes.push(q);
                }
            }
        }
        assert_eq!(enumerate_travels(&g, 0, 1, bounds).count(), expected);
    }

    #[test]
    fn delta_c_examples() {
        let g = g1();
        let b = OracleBounds::for_instance(&g, &CostFunction::Identity);
        let id = CostFunction::Identity;
        assert_eq!(
            oracle_delta_c(&g, &id, Budget::Unbounded, 0, 1, 5, b).unwrap(),
            Some(c(0))
        );
        assert_eq!(
            oracle_delta_c(&g, &id, Budget::Unbounded, 0, 1, 0, b).unwrap(),
            Some(c(5))
        );
        assert_eq!(
            oracle_delta_c(&g, &id, c(3).into(), 0, 1, 0, b).unwrap(),
            None
        );
    }

    #[test]
    fn cost_constrained_examples() {
        let g = g1();
        let id = CostFunction::Identity;
        let b = OracleBounds::for_instance(&g, &id);
        assert_eq!(
            oracle_cc(&g, &id, Budget::Unbounded, 0, 1, b).unwrap(),
            Some((0, c(5)))
        );
        assert_eq!(
            oracle_cc(&g, &id, c(3).into(), 0, 1, b).unwrap(),
            Some((2, c(3)))
        );
        assert_eq!(
            oracle_cc(&g, &id, c(0).into(), 0, 1, b).unwrap(),
            Some((5, c(0)))
        );
        let p = oracle_cc_plan(&g, &id, c(3).into(), 0, 1, b)
            .unwrap()
            .unwrap();
        assert!(p.travel.validate(&g));
        assert_eq!(p.travel.cost(&id).unwrap(), c(3));
    }

    #[test]
    fn history_examples() {
        let g = g2();
        let id = CostFunction::Identity;
        let b = OracleBounds::for_instance(&g, &id);
        assert_eq!(oracle_hc(&g, &id, 1, 0, 2, b).unwrap(), Some((0, c(1))));
        assert_eq!(oracle_hc(&g, &id, 0, 0, 2, b).unwrap(), Some((3, c(0))));
        let lifetime = g.lifetime();
        assert_eq!(
            oracle_hc(&g, &id, lifetime, 0, 2, b).unwrap(),
            oracle_cc(&g, &id, Budget::Unbounded, 0, 2, b).unwrap()
        );
        let p = oracle_hc_plan(&g, &id, 1, 0, 2, b).unwrap().unwrap();
        assert!(p.travel.respects_history_bound(1) && p.travel.validate(&g));
    }

    #[test]
    fn simple_travel_examples() {
        let g = g2();
        let id = CostFunction::Identity;
        let b = OracleBounds::for_instance(&g, &id);
        assert_eq!(
            oracle_cc_simple(&g, &id, Budget::Unbounded, 0, 2, b).unwrap(),
            Some((0, c(1)))
        );
        assert_eq!(
            oracle_cc(&g, &id, Budget::Unbounded, 0, 2, b).unwrap(),
            Some((0, c(1)))
        );
        assert_eq!(
            oracle_cc_simple(&g, &id, Budget::Unbounded, 1, 1, b).unwrap(),
            Some((0, c(0)))
        );
    }

    #[test]
    fn dipping_function_uses_overshoot() {
        // Only a jump of 7 is cheap, so the best travel waits past the last edge.
        let g = g1();
        let f = CostFunction::parse("table:5,5,5,5,5,5,1;tail=const:5").unwrap();
        let b = OracleBounds::for_instance(&g, &f);
        assert_eq!(b.max_time, 13);
        assert_eq!(
            oracle_cc(&g, &f, c(1).into(), 0, 1, b).unwrap(),
            Some((0, c(1)))
        );
        let p = oracle_cc_plan(&g, &f, c(1).into(), 0, 1, b)
            .unwrap()
            .unwrap();
        assert_eq!(p.travel.max_time(), 7);
    }
}
