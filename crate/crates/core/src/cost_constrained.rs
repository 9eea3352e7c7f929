//! Label-setting planner for the budget-constrained problem: minimum delay
//! among travels of total backward cost at most `C`, then minimum cost.
//!
//! `(node, time)` pairs are finalized in non-decreasing cost order. From a
//! finalized pair the search follows, for every footprint neighbour, the
//! earliest edge at or after the current time (free) and every edge at or
//! before it (priced as a backward jump). Only touched pairs are stored.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use thiserror::Error;

use crate::closure::{ClosureError, ClosureTables};
use crate::cost::{Budget, Cost, CostError, CostFunction, PriceTable};
use crate::graph::{Node, TemporalGraph, Time};
use crate::travel::{Step, Travel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("cost function is not user friendly on spans 1..={horizon}; use plan_any for user-optimizable functions")]
    NotUserFriendly { horizon: u64 },
    #[error("cost function is not user optimizable")]
    NotUserOptimizable,
    #[error("budget must be non-negative")]
    NegativeBudget,
    #[error("node {node} out of range (graph has {n} nodes)")]
    NodeOutOfRange { node: Node, n: usize },
    #[error("no travel reaches node {node} at time {time}")]
    NoTravel { node: Node, time: Time },
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// Source, destination and budget; departure is always at time 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CcQuery {
    pub src: Node,
    pub dst: Node,
    pub budget: Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanResult {
    pub travel: Travel,
    pub delay: i64,
    pub cost: Cost,
}

impl PlanResult {
    pub(crate) fn from_travel(travel: Travel, cost: Cost) -> Self {
        let travel = travel.compact();
        PlanResult {
            delay: travel.delay(),
            travel,
            cost,
        }
    }
}

/// How a pair was first reached at its current cost: from `(from, from_time)`
/// by moving to `depart` at `from` and crossing the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pred {
    from: Node,
    from_time: Time,
    depart: Time,
}

pub(crate) fn check_node<G: TemporalGraph + ?Sized>(g: &G, node: Node) -> Result<(), PlanError> {
    if node >= g.node_count() {
        return Err(PlanError::NodeOutOfRange {
            node,
            n: g.node_count(),
        });
    }
    Ok(())
}

pub(crate) fn user_friendly_prices<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
) -> Result<PriceTable, PlanError> {
    let horizon = (g.latest_time() as u64).max(1);
    if !f.is_user_friendly(horizon) {
        return Err(PlanError::NotUserFriendly { horizon });
    }
    Ok(f.tabulate(horizon)?)
}

/// The completed state of one search.
#[derive(Debug)]
pub struct CostConstrainedSearch<'g, G: TemporalGraph + ?Sized> {
    graph: &'g G,
    prices: PriceTable,
    src: Node,
    budget: Budget,
    node_cost: HashMap<(Node, Time), Cost>,
    min_cost: Vec<Option<(Cost, Time)>>,
    pred: HashMap<(Node, Time), Pred>,
    done: HashSet<(Node, Time)>,
    extracted: Vec<(Cost, Time, Node)>,
    relaxations: u64,
}

impl<'g, G: TemporalGraph + ?Sized> CostConstrainedSearch<'g, G> {
    /// Runs the search from `(src, 0)` to exhaustion.
    pub fn run(g: &'g G, f: &CostFunction, src: Node, budget: Budget) -> Result<Self, PlanError> {
        check_node(g, src)?;
        let prices = user_friendly_prices(g, f)?;
        Ok(Self::run_with_prices(g, prices, src, budget))
    }

    fn run_with_prices(g: &'g G, prices: PriceTable, src: Node, budget: Budget) -> Self {
        let mut s = CostConstrainedSearch {
            graph: g,
            prices,
            src,
            budget,
            node_cost: HashMap::new(),
            min_cost: vec![None; g.node_count()],
            pred: HashMap::new(),
            done: HashSet::new(),
            extracted: Vec::new(),
            relaxations: 0,
        };
        s.search();
        s
    }

    fn search(&mut self) {
        let g = self.graph;
        let delta = g.transit();
        // Min-heap on (cost, time, node): ties break towards earlier times,
        // then smaller node ids. Stale entries are skipped on pop.
        let mut queue = BinaryHeap::new();
        self.node_cost.insert((self.src, 0), Cost::ZERO);
        queue.push(Reverse((Cost::ZERO, 0, self.src)));

        while let Some(Reverse((c, t, u))) = queue.pop() {
            if self.done.contains(&(u, t)) || self.node_cost.get(&(u, t)) != Some(&c) {
                continue;
            }
            self.done.insert((u, t));
            self.extracted.push((c, t, u));

            for &v in g.neighbors(u) {
                if let Some(t_future) = g.next_edge_time(u, v, t) {
                    self.relaxations += 1;
                    let arrival = t_future + delta;
                    let improves = self
                        .node_cost
                        .get(&(v, arrival))
                        .is_none_or(|&old| old > c);
                    let useful = match self.min_cost[v] {
                        None => true,
                        Some((c_min, t_min)) => c < c_min || arrival < t_min,
                    };
                    if improves && useful {
                        self.node_cost.insert((v, arrival), c);
                        self.pred.insert(
                            (v, arrival),
                            Pred {
                                from: u,
                                from_time: t,
                                depart: t_future,
                            },
                        );
                        if self.min_cost[v].is_none_or(|best| (c, arrival) < best) {
                            self.min_cost[v] = Some((c, arrival));
                        }
                        queue.push(Reverse((c, arrival, v)));
                    }
                }

                for t_past in g.edge_times_at_or_before(u, v, t) {
                    self.relaxations += 1;
                    let c_past = c + self.prices.price(t as i64 - t_past as i64);
                    let arrival = t_past + delta;
                    if !self.budget.admits(c_past) {
                        // Prices only grow as t_past recedes.
                        break;
                    }
                    if self
                        .node_cost
                        .get(&(v, arrival))
                        .is_none_or(|&old| old > c_past)
                    {
                        self.node_cost.insert((v, arrival), c_past);
                        self.pred.insert(
                            (v, arrival),
                            Pred {
                                from: u,
                                from_time: t,
                                depart: t_past,
                            },
                        );
                        queue.push(Reverse((c_past, arrival, v)));
                    }
                }
            }
        }
    }

    /// Earliest `t` such that some finalized `(dst, t')` can jump to `t`
    /// within budget, with the cost of doing so.
    pub fn earliest_arrival(&self, dst: Node) -> Option<(Time, Cost)> {
        let mut best: Option<(Time, Cost)> = None;
        for (&(node, t), &c) in &self.node_cost {
            if node != dst {
                continue;
            }
            // f is non-decreasing, so the feasible arrivals form a suffix of [0, t].
            let feasible = |a: Time| {
                self.budget
                    .admits(c + self.prices.price(t as i64 - a as i64))
            };
            let (mut lo, mut hi) = (0, t);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if feasible(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let first = lo;
            if !feasible(first) {
                continue;
            }
            let cost = c + self.prices.price(t as i64 - first as i64);
            if best.is_none_or(|b| (first, cost) < b) {
                best = Some((first, cost));
            }
        }
        best
    }

    /// Rebuilds a cost-optimal budget-feasible travel to `(u, t)`.
    pub fn extract_time_travel(&self, u: Node, t: Time) -> Result<Travel, PlanError> {
        let mut segments: Vec<Vec<Step>> = Vec::new();
        let (mut u, mut t) = (u, t);
        loop {
            match self.node_cost.get(&(u, t)) {
                Some(_) if u == self.src && !self.pred.contains_key(&(u, t)) => {
                    segments.push(vec![Step::new(u, 0), Step::new(u, t)]);
                    break;
                }
                Some(_) => {
                    let p = self.pred[&(u, t)];
                    segments.push(vec![
                        Step::new(p.from, p.from_time),
                        Step::new(p.from, p.depart),
                        Step::new(u, t),
                    ]);
                    (u, t) = (p.from, p.from_time);
                }
                None => {
                    let (t_best, _) = self
                        .node_cost
                        .iter()
                        .filter(|(&(node, _), _)| node == u)
                        .map(|(&(_, t2), &c)| (t2, c + self.prices.price(t2 as i64 - t as i64)))
                        .min_by_key(|&(t2, c)| (c, t2))
                        .ok_or(PlanError::NoTravel { node: u, time: t })?;
                    segments.push(vec![Step::new(u, t_best), Step::new(u, t)]);
                    t = t_best;
                }
            }
        }
        let mut segments = segments.into_iter().rev();
        let mut travel = Travel::new(segments.next().unwrap()).unwrap();
        for seg in segments {
            travel.extend_with(&seg);
        }
        Ok(travel)
    }

    /// Number of temporal edges incident to an extracted `(node, time)` pair.
    pub fn extracted_edge_count(&self) -> usize {
        let g = self.graph;
        let mut edges = HashSet::new();
        for &(_, t, u) in &self.extracted {
            for &v in g.neighbors(u) {
                if g.has_edge(u, v, t) {
                    edges.insert((u.min(v), u.max(v), t));
                }
            }
        }
        edges.len()
    }

    /// Costs of extracted pairs, in extraction order.
    pub fn extraction_costs(&self) -> Vec<Cost> {
        self.extracted.iter().map(|&(c, _, _)| c).collect()
    }

    /// Edge relaxations attempted; the work measure for complexity checks.
    pub fn relaxations(&self) -> u64 {
        self.relaxations
    }

    /// Finalized cost of `(u, t)`, if the search stored one.
    pub fn node_cost(&self, u: Node, t: Time) -> Option<Cost> {
        self.node_cost.get(&(u, t)).copied()
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn plan(&self, dst: Node) -> Result<Option<PlanResult>, PlanError> {
        let Some((t_min, cost)) = self.earliest_arrival(dst) else {
            return Ok(None);
        };
        let travel = self.extract_time_travel(dst, t_min)?;
        Ok(Some(PlanResult::from_travel(travel, cost)))
    }
}

/// Minimum delay, then minimum cost, among travels of cost at most the budget.
/// Requires a user-friendly `f`.
pub fn plan_cost_constrained<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    q: CcQuery,
) -> Result<Option<PlanResult>, PlanError> {
    if let Budget::Finite(c) = q.budget {
        if c < Cost::ZERO {
            return Err(PlanError::NegativeBudget);
        }
    }
    check_node(g, q.dst)?;
    CostConstrainedSearch::run(g, f, q.src, q.budget)?.plan(q.dst)
}

/// Unconstrained variant: the delay is 0 whenever the destination is reachable.
pub fn plan_odoc<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    src: Node,
    dst: Node,
) -> Result<Option<PlanResult>, PlanError> {
    plan_cost_constrained(
        g,
        f,
        CcQuery {
            src,
            dst,
            budget: Budget::Unbounded,
        },
    )
}

/// Budget-constrained planning for any user-optimizable `f`: plan under the
/// sub-additive closure, then expand the result into a travel whose raw cost
/// under `f` equals the planned cost.
pub fn plan_any<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    q: CcQuery,
) -> Result<Option<PlanResult>, PlanError> {
    if !f.is_user_optimizable() {
        return Err(PlanError::NotUserOptimizable);
    }
    let tables = ClosureTables::build(f, g.latest_time() as u64)?;
    let Some(planned) = plan_cost_constrained(g, &tables.closure_function(), q)? else {
        return Ok(None);
    };
    let travel = tables.expand_travel(&planned.travel, f)?;
    Ok(Some(PlanResult::from_travel(travel, planned.cost)))
}
