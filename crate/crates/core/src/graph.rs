//! Evolving graphs: a fixed node set plus one edge set per time instant.
//!
//! Edges are undirected and stored canonically (`u < v`) with a sorted list
//! of the instants at which each pair is connected. Every temporal query the
//! planners need (next occurrence, occurrences at or before a time) is a
//! binary search on one of those lists.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type Node = usize;
pub type Time = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(Node),
    #[error("node-id {node} out of range (graph has {n} nodes)")]
    NodeOutOfRange { node: Node, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A temporal edge `((u, v), t)`, always stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemporalEdge {
    pub u: Node,
    pub v: Node,
    pub t: Time,
}

impl TemporalEdge {
    pub fn new(u: Node, v: Node, t: Time) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Ok(TemporalEdge { u, v, t })
    }
}

/// A static graph on `n` nodes with canonical unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StaticGraph {
    pub n: usize,
    pub edges: BTreeSet<(Node, Node)>,
}

impl StaticGraph {
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }
}

/// Read access to a temporal graph, as needed by planners and oracles.
///
/// `transit` is the number of instants an edge traversal takes: crossing an
/// edge that exists at `t` delivers the agent at `t + transit`.
pub trait TemporalGraph {
    fn node_count(&self) -> usize;

    /// Footprint neighbours of `u`, ascending.
    fn neighbors(&self, u: Node) -> &[Node];

    /// Sorted instants at which the pair `{u, v}` is connected.
    fn departures(&self, u: Node, v: Node) -> &[Time];

    /// Largest time instant carrying an edge (0 if there are none).
    fn lifetime(&self) -> Time;

    fn transit(&self) -> Time {
        0
    }

    /// Latest instant at which any edge delivers an agent.
    fn latest_time(&self) -> Time {
        if self.edge_count() == 0 {
            0
        } else {
            self.lifetime() + self.transit()
        }
    }

    fn edge_count(&self) -> usize;

    fn has_edge(&self, u: Node, v: Node, t: Time) -> bool {
        u != v && self.departures(u, v).binary_search(&t).is_ok()
    }

    /// Least `t' >= t` at which `{u, v}` exists.
    fn next_edge_time(&self, u: Node, v: Node, t: Time) -> Option<Time> {
        let times = self.departures(u, v);
        let i = times.partition_point(|&x| x < t);
        times.get(i).copied()
    }

    /// All `t' <= t` at which `{u, v}` exists, latest first.
    fn edge_times_at_or_before(&self, u: Node, v: Node, t: Time) -> Vec<Time> {
        let times = self.departures(u, v);
        let end = times.partition_point(|&x| x <= t);
        times[..end].iter().rev().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EvolvingGraph {
    n: usize,
    occurrences: BTreeMap<(Node, Node), Vec<Time>>,
    adjacency: Vec<Vec<Node>>,
    lifetime: Time,
    edge_count: usize,
}

impl EvolvingGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        let mut occurrences: BTreeMap<(Node, Node), Vec<Time>> = BTreeMap::new();
        for e in edges {
            for node in [e.u, e.v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            occurrences.entry((u, v)).or_default().push(e.t);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut lifetime = 0;
        let mut edge_count = 0;
        for (&(u, v), times) in occurrences.iter_mut() {
            times.sort_unstable();
            times.dedup();
            edge_count += times.len();
            lifetime = lifetime.max(*times.last().expect("non-empty occurrence list"));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(EvolvingGraph {
            n,
            occurrences,
            adjacency,
            lifetime,
            edge_count,
        })
    }

    /// Builds a graph from `(u, v, t)` triples.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Node, Node, Time)>,
    {
        let edges = triples
            .into_iter()
            .map(|(u, v, t)| TemporalEdge::new(u, v, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn occurrences(&self) -> &BTreeMap<(Node, Node), Vec<Time>> {
        &self.occurrences
    }

    /// All temporal edges, sorted by `(t, u, v)`.
    pub fn temporal_edges(&self) -> Vec<TemporalEdge> {
        let mut edges: Vec<TemporalEdge> = self
            .occurrences
            .iter()
            .flat_map(|(&(u, v), times)| times.iter().map(move |&t| TemporalEdge { u, v, t }))
            .collect();
        edges.sort_by_key(|e| (e.t, e.u, e.v));
        edges
    }

    pub fn snapshot(&self, t: Time) -> StaticGraph {
        let edges = self
            .occurrences
            .iter()
            .filter(|(_, times)| times.binary_search(&t).is_ok())
            .map(|(&pair, _)| pair)
            .collect();
        StaticGraph { n: self.n, edges }
    }

    pub fn footprint(&self) -> StaticGraph {
        StaticGraph {
            n: self.n,
            edges: self.occurrences.keys().copied().collect(),
        }
    }

    pub fn is_footprint_connected(&self) -> bool {
        self.footprint().is_connected()
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(count) = n else {
                match fields.as_slice() {
                    ["nodes", count] => {
                        let count = count
                            .parse::<usize>()
                            .map_err(|_| err(format!("invalid node count `{count}`")))?;
                        n = Some(count);
                        continue;
                    }
                    _ => return Err(err("expected header `nodes <n>`".into())),
                }
            };
            let [t, u, v] = fields.as_slice() else {
                return Err(err(format!("expected `<t> <u> <v>`, got `{line}`")));
            };
            let t: i64 = t.parse().map_err(|_| err(format!("invalid time `{t}`")))?;
            if t < 0 {
                return Err(err(format!("negative time {t}")));
            }
            let t = Time::try_from(t).map_err(|_| err(format!("time {t} too large")))?;
            let parse_node = |s: &str| -> Result<Node, GraphError> {
                let node: i64 = s
                    .parse()
                    .map_err(|_| err(format!("invalid node-id `{s}`")))?;
                if node < 0 || node as usize >= count {
                    return Err(err(format!(
                        "node-id {node} out of range (graph has {count} nodes)"
                    )));
                }
                Ok(node as usize)
            };
            let (u, v) = (parse_node(u)?, parse_node(v)?);
            if u == v {
                return Err(err(format!("self-loop on node {u}")));
            }
            edges.push(TemporalEdge::new(u, v, t)?);
        }
        let n = n.ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header `nodes <n>`".into(),
        })?;
        Self::new(n, edges)
    }

    /// Canonical text form: header, then edges sorted by `(t, u, v)`.
    pub fn serialize(&self) -> String {
        let mut out = format!("nodes {}\n", self.n);
        for e in self.temporal_edges() {
            writeln!(out, "{} {} {}", e.t, e.u, e.v).unwrap();
        }
        out
    }

    /// Each unordered pair and each `t` in `[0, lifetime]` is included
    /// independently with probability `edge_prob`.
    pub fn generate_random(n: usize, lifetime: Time, edge_prob: f64, seed: u64) -> Self {
        let p = edge_prob.clamp(0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for t in 0..=lifetime {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push(TemporalEdge { u, v, t });
                    }
                }
            }
        }
        Self::new(n, edges).expect("generated edges are in range")
    }
}

impl FromStr for EvolvingGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

static NO_TIMES: [Time; 0] = [];

impl TemporalGraph for EvolvingGraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn neighbors(&self, u: Node) -> &[Node] {
        self.adjacency.get(u).map_or(&[], Vec::as_slice)
    }

    fn departures(&self, u: Node, v: Node) -> &[Time] {
        let key = if u < v { (u, v) } else { (v, u) };
        self.occurrences.get(&key).map_or(&NO_TIMES, Vec::as_slice)
    }

    fn lifetime(&self) -> Time {
        self.lifetime
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// Strict-journey view of a graph: an edge present at `t` delivers the agent
/// at `t + 1`. Costs and edge sets are untouched.
#[derive(Debug, Clone, Copy)]
pub struct Strict<'g> {
    inner: &'g EvolvingGraph,
}

pub fn strictify(g: &EvolvingGraph) -> Strict<'_> {
    Strict { inner: g }
}

impl Strict<'_> {
    pub fn inner(&self) -> &EvolvingGraph {
        self.inner
    }
}

impl TemporalGraph for Strict<'_> {
    fn node_count(&self) -> usize {
        self.inner.n
    }

    fn neighbors(&self, u: Node) -> &[Node] {
        self.inner.neighbors(u)
    }

    fn departures(&self, u: Node, v: Node) -> &[Time] {
        self.inner.departures(u, v)
    }

    fn lifetime(&self) -> Time {
        self.inner.lifetime
    }

    fn transit(&self) -> Time {
        1
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Node = 0;
    const B: Node = 1;
    const C: Node = 2;

    fn g(n: usize, triples: &[(Node, Node, Time)]) -> EvolvingGraph {
        EvolvingGraph::from_triples(n, triples.iter().copied()).unwrap()
    }

    fn pairs(list: &[(Node, Node)]) -> BTreeSet<(Node, Node)> {
        list.iter().copied().collect()
    }

    #[test]
    fn snapshot_membership() {
        let g1 = g(2, &[(A, B, 5)]);
        assert_eq!(g1.snapshot(5).edges, pairs(&[(A, B)]));
        assert!(g1.snapshot(4).edges.is_empty());
        assert!(g1.snapshot(100).edges.is_empty());
        let g2 = g(3, &[(A, B, 1), (B, C, 1)]);
        assert_eq!(g2.snapshot(1).edges, pairs(&[(A, B), (B, C)]));
    }

    #[test]
    fn footprint_collapses_duplicates() {
        assert_eq!(g(2, &[(A, B, 5)]).footprint().edges, pairs(&[(A, B)]));
        assert!(g(3, &[]).footprint().edges.is_empty());
        let fp = g(3, &[(A, B, 1), (A, B, 7), (B, C, 0)]).footprint();
        assert_eq!(fp.edges, pairs(&[(A, B), (B, C)]));
    }

    #[test]
    fn connectivity() {
        assert!(g(3, &[(A, B, 0), (B, C, 9)]).is_footprint_connected());
        assert!(!g(3, &[(A, B, 0)]).is_footprint_connected());
        assert!(g(1, &[]).is_footprint_connected());
    }

    #[test]
    fn next_and_previous_edges() {
        let g1 = g(2, &[(A, B, 5)]);
        assert_eq!(g1.next_edge_time(A, B, 0), Some(5));
        assert_eq!(g1.next_edge_time(B, A, 6), None);
        let g2 = g(2, &[(A, B, 2), (A, B, 5)]);
        assert_eq!(g2.next_edge_time(A, B, 2), Some(2));
        assert_eq!(g2.edge_times_at_or_before(A, B, 5), vec![5, 2]);
        assert!(g2.edge_times_at_or_before(A, B, 1).is_empty());
        assert_eq!(g(2, &[(A, B, 0)]).edge_times_at_or_before(A, B, 0), vec![0]);
    }

    #[test]
    fn neighbor_sets() {
        let g1 = g(3, &[(A, B, 5), (A, C, 1)]);
        assert_eq!(g1.neighbors(A), &[B, C]);
        assert!(g(3, &[(A, B, 1)]).neighbors(C).is_empty());
        assert_eq!(g(2, &[(A, B, 1), (A, B, 9)]).neighbors(B), &[A]);
    }

    #[test]
    fn edges_are_canonical() {
        let e = TemporalEdge::new(3, 1, 4).unwrap();
        assert_eq!((e.u, e.v, e.t), (1, 3, 4));
        assert_eq!(TemporalEdge::new(2, 2, 0), Err(GraphError::SelfLoop(2)));
        assert!(matches!(
            EvolvingGraph::from_triples(2, [(0, 2, 1)]),
            Err(GraphError::NodeOutOfRange { node: 2, n: 2 })
        ));
    }

    #[test]
    fn parse_basic_and_errors() {
        let g1 = EvolvingGraph::parse("nodes 2\n5 0 1\n").unwrap();
        assert_eq!(g1.n(), 2);
        assert_eq!(g1.temporal_edges(), vec![TemporalEdge { u: 0, v: 1, t: 5 }]);

        let err = EvolvingGraph::parse("nodes 2\n5 0 2\n").unwrap_err();
        assert!(
            matches!(err, GraphError::Parse { line: 2, ref msg } if msg.contains("out of range"))
        );
        let err = EvolvingGraph::parse("nodes 2\n-1 0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, ref msg } if msg.contains("negative")));
        let err = EvolvingGraph::parse("nodes 3\n# c\n\n1 0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 4, .. }));
        assert!(EvolvingGraph::parse("5 0 1\n").is_err());
        assert!(EvolvingGraph::parse("").is_err());
    }

    #[test]
    fn serialize_is_sorted_by_time() {
        let g1 = g(3, &[(C, B, 1), (A, B, 7), (B, A, 1)]);
        assert_eq!(g1.serialize(), "nodes 3\n1 0 1\n1 1 2\n7 0 1\n");
    }

    #[test]
    fn random_generation() {
        assert_eq!(EvolvingGraph::generate_random(4, 6, 0.0, 1).edge_count(), 0);
        let full = EvolvingGraph::generate_random(2, 1, 1.0, 1);
        assert_eq!(full, g(2, &[(0, 1, 0), (0, 1, 1)]));
        let a = EvolvingGraph::generate_random(5, 6, 0.3, 42);
        let b = EvolvingGraph::generate_random(5, 6, 0.3, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn strict_view_shifts_arrivals() {
        let g1 = g(2, &[(A, B, 5)]);
        let s = strictify(&g1);
        assert_eq!(s.transit(), 1);
        assert_eq!(s.latest_time(), 6);
        assert_eq!(s.next_edge_time(A, B, 0), Some(5));
        let empty = g(2, &[]);
        assert_eq!(strictify(&empty).edge_count(), 0);
        assert_eq!(strictify(&empty).latest_time(), 0);
    }
}
