//! Dynamic program for the history-constrained problem: once a travel has
//! reached time `M`, it may never go below `M - H`.
//!
//! The table is indexed by `(node, arrival, horizon)`: `entry(u, a, t)` is the
//! optimal cost of a constrained travel reaching `u` no later than `a` whose
//! times never exceed `t`, for `a` in `[t - H, t]`. Horizons are filled in
//! increasing order; each horizon starts from the previous one and is then
//! relaxed `|V|` times along edges inside the window `[t - H, t]`.

use crate::cost::{Cost, CostFunction, PriceTable};
use crate::cost_constrained::{check_node, user_friendly_prices, PlanError, PlanResult};
use crate::graph::{Node, TemporalGraph, Time};
use crate::travel::{Step, Travel};

/// Where a table entry got its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Source,
    /// Crossed the edge to `from`, departing at `depart`; the prefix to
    /// `from` is the entry `(from, depart, horizon)`.
    Edge {
        from: Node,
        depart: Time,
        horizon: Time,
    },
    /// Inherited from the entry `(same node, arrival, horizon)` of the
    /// previous horizon.
    Carry {
        arrival: Time,
        horizon: Time,
    },
}

#[derive(Debug, Clone)]
struct Plane {
    lo: Time,
    width: usize,
    cells: Vec<Option<(Cost, Provenance)>>,
}

impl Plane {
    fn index(&self, u: Node, a: Time) -> usize {
        u * self.width + (a - self.lo) as usize
    }
}

/// Upper bound on any time a cost-optimal travel needs to visit.
pub fn compute_t_max<G: TemporalGraph + ?Sized>(g: &G, _dst: Node) -> Time {
    g.latest_time() + 1
}

#[derive(Debug, Clone)]
pub struct HistoryTable<'g, G: TemporalGraph + ?Sized> {
    graph: &'g G,
    prices: PriceTable,
    history: Time,
    src: Node,
    t_max: Time,
    planes: Vec<Plane>,
}

impl<'g, G: TemporalGraph + ?Sized> HistoryTable<'g, G> {
    /// Fills every horizon up to `compute_t_max`.
    pub fn build(g: &'g G, f: &CostFunction, history: Time, src: Node) -> Result<Self, PlanError> {
        let mut table = Self::empty(g, f, history, src)?;
        for t in 0..=table.t_max {
            table.fill_horizon(t);
        }
        Ok(table)
    }

    fn empty(g: &'g G, f: &CostFunction, history: Time, src: Node) -> Result<Self, PlanError> {
        check_node(g, src)?;
        let t_max = compute_t_max(g, src);
        user_friendly_prices(g, f)?;
        let prices = f.tabulate(t_max as u64 + 1)?;
        Ok(HistoryTable {
            graph: g,
            prices,
            history,
            src,
            t_max,
            planes: Vec::new(),
        })
    }

    pub fn t_max(&self) -> Time {
        self.t_max
    }

    pub fn history(&self) -> Time {
        self.history
    }

    /// Highest horizon filled so far.
    pub fn filled_horizon(&self) -> Option<Time> {
        self.planes.len().checked_sub(1).map(|t| t as Time)
    }

    fn cell(&self, u: Node, a: Time, t: Time) -> Option<(Cost, Provenance)> {
        let plane = self.planes.get(t as usize)?;
        if a < plane.lo || a > t {
            return None;
        }
        plane.cells[plane.index(u, a)]
    }

    /// Table value `c[u, a, t]`; `None` stands for infinity.
    pub fn entry(&self, u: Node, a: Time, t: Time) -> Option<Cost> {
        self.cell(u, a, t).map(|(c, _)| c)
    }

    pub fn provenance(&self, u: Node, a: Time, t: Time) -> Option<Provenance> {
        self.cell(u, a, t).map(|(_, p)| p)
    }

    fn fill_horizon(&mut self, t: Time) {
        debug_assert_eq!(self.planes.len(), t as usize);
        let n = self.graph.node_count();
        let lo = t.saturating_sub(self.history);
        let width = (t - lo) as usize + 1;
        let mut plane = Plane {
            lo,
            width,
            cells: vec![None; n * width],
        };
        for u in 0..n {
            for a in lo..=t {
                let i = plane.index(u, a);
                plane.cells[i] = if u == self.src {
                    Some((Cost::ZERO, Provenance::Source))
                } else if t == 0 {
                    None
                } else {
                    let same = self.entry(u, a, t - 1).map(|c| (c, a));
                    let earlier = a
                        .checked_sub(1)
                        .and_then(|b| self.entry(u, b, t - 1).map(|c| (c, b)));
                    [same, earlier]
                        .into_iter()
                        .flatten()
                        .min_by_key(|&(c, _)| c)
                        .map(|(c, arrival)| {
                            (
                                c,
                                Provenance::Carry {
                                    arrival,
                                    horizon: t - 1,
                                },
                            )
                        })
                };
            }
        }
        self.planes.push(plane);
        for _ in 0..n {
            self.relax_pass(t);
        }
    }

    /// One sweep over all nodes and arrivals of horizon `t`; returns whether
    /// any entry improved.
    pub fn relax_pass(&mut self, t: Time) -> bool {
        let g = self.graph;
        let delta = g.transit();
        let history = self.history;
        let lo = self.planes[t as usize].lo;
        let mut changed = false;
        for u in 0..g.node_count() {
            for a in lo..=t {
                let mut best: Option<(Cost, Time, Node, Time)> = None;
                for &v in g.neighbors(u) {
                    let first = (t as i64 - history as i64 - delta as i64).max(0);
                    let Some(last) = t.checked_sub(delta) else {
                        continue;
                    };
                    for &depart in g.departures(u, v) {
                        if (depart as i64) < first || depart > last {
                            continue;
                        }
                        let horizon = t.min(depart.saturating_add(history));
                        let Some(prefix) = self.entry(v, depart, horizon) else {
                            continue;
                        };
                        let value = prefix + self.prices.price((depart + delta) as i64 - a as i64);
                        let key = (value, depart, v, horizon);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                let Some((m, depart, from, horizon)) = best else {
                    continue;
                };
                let plane = &mut self.planes[t as usize];
                let i = plane.index(u, a);
                if plane.cells[i].is_none_or(|(current, _)| m < current) {
                    plane.cells[i] = Some((
                        m,
                        Provenance::Edge {
                            from,
                            depart,
                            horizon,
                        },
                    ));
                    changed = true;
                }
            }
        }
        changed
    }

    /// Rebuilds the travel behind `entry(u, a, t_m)`; it ends at `(u, a)`.
    pub fn extract_history_constrained_travel(
        &self,
        u: Node,
        a: Time,
        t_m: Time,
    ) -> Result<Travel, PlanError> {
        let delta = self.graph.transit();
        let mut segments: Vec<Vec<Step>> = Vec::new();
        let (mut u, mut a, mut t_m) = (u, a, t_m);
        loop {
            if u == self.src {
                segments.push(vec![Step::new(u, 0), Step::new(u, a)]);
                break;
            }
            let (_, prov) = self
                .cell(u, a, t_m)
                .ok_or(PlanError::NoTravel { node: u, time: a })?;
            match prov {
                Provenance::Source => unreachable!("only the source carries a source marker"),
                Provenance::Edge {
                    from,
                    depart,
                    horizon,
                } => {
                    segments.push(vec![
                        Step::new(from, depart),
                        Step::new(u, depart + delta),
                        Step::new(u, a),
                    ]);
                    (u, a, t_m) = (from, depart, horizon);
                }
                Provenance::Carry { arrival, horizon } => {
                    if arrival != a {
                        segments.push(vec![Step::new(u, arrival), Step::new(u, a)]);
                    }
                    (a, t_m) = (arrival, horizon);
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

    /// Earliest arrival at `dst` among the filled horizons, with the horizon
    /// of the entry that certifies it. Arrivals whose horizon `a + H` lies
    /// past `t_max` are read at `t_max`.
    fn earliest_in(&self, dst: Node, through: Time) -> Option<(Time, Time)> {
        if through < self.t_max {
            let a = through.checked_sub(self.history)?;
            return self.entry(dst, a, through).map(|_| (a, through));
        }
        let first = self.t_max.saturating_sub(self.history);
        (first..=self.t_max).find_map(|a| {
            let horizon = (a as u64 + self.history as u64).min(self.t_max as u64) as Time;
            self.entry(dst, a, horizon).map(|_| (a, horizon))
        })
    }

    fn result_at(&self, dst: Node, a: Time, horizon: Time) -> Result<PlanResult, PlanError> {
        let cost = self.entry(dst, a, horizon).expect("finite entry");
        let travel = self.extract_history_constrained_travel(dst, a, horizon)?;
        Ok(PlanResult::from_travel(travel, cost))
    }
}

/// Minimum delay, then minimum cost, among travels that never fall more than
/// `history` instants below the latest time they reached. Requires a
/// user-friendly `f`.
pub fn plan_history_constrained<G: TemporalGraph + ?Sized>(
    g: &G,
    f: &CostFunction,
    history: Time,
    src: Node,
    dst: Node,
) -> Result<Option<PlanResult>, PlanError> {
    check_node(g, dst)?;
    let mut table = HistoryTable::empty(g, f, history, src)?;
    for t in 0..=table.t_max {
        table.fill_horizon(t);
        if let Some((a, horizon)) = table.earliest_in(dst, t) {
            return table.result_at(dst, a, horizon).map(Some);
        }
    }
    Ok(None)
}
