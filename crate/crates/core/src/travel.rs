//! Space-time travels: sequences of `(node, time)` steps mixing same-time
//! edge traversals with same-node jumps forward (waiting) or backward.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cost::{Cost, CostError, CostFunction};
use crate::graph::{Node, TemporalGraph, Time};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TravelError {
    #[error("a travel needs at least one step")]
    Empty,
    #[error("cannot concatenate: {left} does not match {right}")]
    JunctionMismatch { left: Step, right: Step },
    #[error("invalid travel text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub node: Node,
    pub time: Time,
}

impl Step {
    pub fn new(node: Node, time: Time) -> Self {
        Step { node, time }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.node, self.time)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Travel {
    steps: Vec<Step>,
}

impl Travel {
    pub fn new(steps: Vec<Step>) -> Result<Self, TravelError> {
        if steps.is_empty() {
            return Err(TravelError::Empty);
        }
        Ok(Travel { steps })
    }

    /// Convenience constructor from `(node, time)` pairs.
    pub fn from_pairs(pairs: &[(Node, Time)]) -> Result<Self, TravelError> {
        Self::new(pairs.iter().map(|&(n, t)| Step::new(n, t)).collect())
    }

    pub fn single(step: Step) -> Self {
        Travel { steps: vec![step] }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Step {
        self.steps[0]
    }

    pub fn last(&self) -> Step {
        *self.steps.last().unwrap()
    }

    pub fn max_time(&self) -> Time {
        self.steps.iter().map(|s| s.time).max().unwrap()
    }

    /// Whether every consecutive pair is either a same-node jump or an edge
    /// traversal present in `g` (arriving `g.transit()` instants later).
    pub fn validate<G: TemporalGraph + ?Sized>(&self, g: &G) -> bool {
        let n = g.node_count();
        if self.steps.iter().any(|s| s.node >= n) {
            return false;
        }
        self.steps.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            a.node == b.node
                || (b.time == a.time + g.transit() && g.has_edge(a.node, b.node, a.time))
        })
    }

    /// Arrival time minus departure time.
    pub fn delay(&self) -> i64 {
        self.last().time as i64 - self.first().time as i64
    }

    pub fn cost(&self, f: &CostFunction) -> Result<Cost, CostError> {
        self.steps
            .windows(2)
            .map(|w| f.eval(w[0].time as i64 - w[1].time as i64))
            .sum()
    }

    /// `self ⊕ other`; the shared junction step appears once.
    pub fn concat(&self, other: &Travel) -> Result<Travel, TravelError> {
        if self.last() != other.first() {
            return Err(TravelError::JunctionMismatch {
                left: self.last(),
                right: other.first(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps[1..]);
        Ok(Travel { steps })
    }

    /// Appends steps after checking the junction.
    pub(crate) fn extend_with(&mut self, tail: &[Step]) {
        debug_assert_eq!(Some(&self.last()), tail.first());
        self.steps.extend_from_slice(&tail[1..]);
    }

    /// No node recurs except in consecutive positions, and never three times
    /// in a row.
    pub fn is_simple(&self) -> bool {
        let mut seen = vec![];
        for (i, s) in self.steps.iter().enumerate() {
            if i >= 2 && seen[..i - 1].contains(&s.node) {
                return false;
            }
            seen.push(s.node);
        }
        true
    }

    /// Every step stays within `history` instants of the latest time reached
    /// so far.
    pub fn respects_history_bound(&self, history: Time) -> bool {
        let mut reached = 0;
        self.steps.iter().all(|s| {
            reached = reached.max(s.time);
            s.time as u64 + history as u64 >= reached as u64
        })
    }

    /// Drops consecutive duplicate steps; cost and validity are unchanged.
    pub fn compact(&self) -> Travel {
        let mut steps = self.steps.clone();
        steps.dedup();
        Travel { steps }
    }

    /// Contiguous sub-travel `steps[from..=to]`.
    pub fn sub_travel(&self, from: usize, to: usize) -> Travel {
        Travel {
            steps: self.steps[from..=to].to_vec(),
        }
    }
}

impl fmt::Display for Travel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Travel {
    type Err = TravelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |tok: &str| TravelError::Parse(format!("bad step `{tok}`"));
        let steps = s
            .split_whitespace()
            .map(|tok| {
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| bad(tok))?;
                let (n, t) = inner.split_once(',').ok_or_else(|| bad(tok))?;
                Ok(Step::new(
                    n.trim().parse().map_err(|_| bad(tok))?,
                    t.trim().parse().map_err(|_| bad(tok))?,
                ))
            })
            .collect::<Result<Vec<_>, TravelError>>()?;
        Travel::new(steps)
    }
}
