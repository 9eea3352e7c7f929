use proptest::prelude::*;

use chronoplan::closure::{monotone_envelope, ClosureTables};
use chronoplan::cost::{Budget, Cost, CostFunction, TableTail};
use chronoplan::graph::TemporalEdge;
use chronoplan::history_constrained::HistoryTable;
use chronoplan::oracle::{oracle_cc, oracle_hc, OracleBounds};
use chronoplan::{
    plan_cost_constrained, plan_history_constrained, strictify, CcQuery, EvolvingGraph, Step,
    TemporalGraph, Travel,
};

fn graph() -> impl Strategy<Value = EvolvingGraph> {
    (1usize..=5, 0u32..=6, 0.0f64..=0.6, any::<u64>())
        .prop_map(|(n, lifetime, p, seed)| EvolvingGraph::generate_random(n, lifetime, p, seed))
}

fn graph_with_nodes() -> impl Strategy<Value = (EvolvingGraph, usize, usize)> {
    graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, 0..n)
    })
}

fn user_friendly() -> impl Strategy<Value = CostFunction> {
    prop_oneof![
        Just(CostFunction::Identity),
        (1u64..4).prop_map(|c| CostFunction::Constant(Cost::from_int(c))),
        Just(CostFunction::Quadratic),
    ]
    .prop_filter("sub-additive on the test range", |f| f.is_user_friendly(16))
}

fn total_table() -> impl Strategy<Value = CostFunction> {
    (prop::collection::vec(0u64..8, 1..6), 0u64..8).prop_map(|(values, tail)| {
        CostFunction::table(
            values.into_iter().map(Cost::from_int).collect(),
            Some(TableTail::Constant(Cost::from_int(tail))),
        )
    })
}

fn travel() -> impl Strategy<Value = Travel> {
    prop::collection::vec((0usize..4, 0u32..8), 1..6)
        .prop_map(|pairs| Travel::from_pairs(&pairs).unwrap())
}

fn budget() -> impl Strategy<Value = Budget> {
    prop_oneof![
        (0u64..4).prop_map(|c| Budget::Finite(Cost::from_int(c))),
        Just(Budget::Unbounded)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn next_edge_time_matches_a_scan(g in graph(), t in 0u32..9) {
        for u in 0..g.n() {
            for v in 0..g.n() {
                let scan = (t..=g.lifetime()).find(|&x| g.has_edge(u, v, x));
                prop_assert_eq!(g.next_edge_time(u, v, t), scan);
                let before: Vec<u32> = (0..=t).rev().filter(|&x| g.has_edge(u, v, x)).collect();
                prop_assert_eq!(g.edge_times_at_or_before(u, v, t), before);
            }
        }
    }

    #[test]
    fn snapshots_partition_the_edges(g in graph()) {
        let total: usize = (0..=g.lifetime()).map(|t| g.snapshot(t).edges.len()).sum();
        prop_assert_eq!(total, g.edge_count());
        let union: std::collections::BTreeSet<_> =
            (0..=g.lifetime()).flat_map(|t| g.snapshot(t).edges).collect();
        prop_assert_eq!(union, g.footprint().edges);
    }

    #[test]
    fn serialization_round_trips(edges in prop::collection::vec((0usize..6, 0usize..6, 0u32..20), 0..30)) {
        let edges: Vec<TemporalEdge> = edges
            .into_iter()
            .filter(|(u, v, _)| u != v)
            .map(|(u, v, t)| TemporalEdge::new(u, v, t).unwrap())
            .collect();
        let g = EvolvingGraph::new(6, edges).unwrap();
        let text = g.serialize();
        let back = EvolvingGraph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn travel_text_round_trips(t in travel()) {
        prop_assert_eq!(t.to_string().parse::<Travel>().unwrap(), t);
    }

    #[test]
    fn concatenation_is_associative_and_costs_add(a in travel(), b in travel(), c in travel()) {
        let b = Travel::new([vec![a.last()], b.steps().to_vec()].concat()).unwrap();
        let c = Travel::new([vec![b.last()], c.steps().to_vec()].concat()).unwrap();
        let left = a.concat(&b).unwrap().concat(&c).unwrap();
        let right = a.concat(&b.concat(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let f = CostFunction::Quadratic;
        prop_assert_eq!(
            left.cost(&f).unwrap(),
            a.cost(&f).unwrap() + b.cost(&f).unwrap() + c.cost(&f).unwrap()
        );
    }

    #[test]
    fn closure_is_friendly_and_below_f(f in total_table(), horizon in 1u64..12) {
        let tables = ClosureTables::build(&f, horizon).unwrap();
        let env = monotone_envelope(&f, horizon).unwrap();
        for d in 1..=horizon as usize {
            prop_assert!(tables.closure()[d] <= env[d]);
            prop_assert!(env[d] <= f.eval(d as i64).unwrap());
            prop_assert!(tables.closure()[d - 1] <= tables.closure()[d]);
            for a in 1..d {
                prop_assert!(tables.closure()[d] <= tables.closure()[a] + tables.closure()[d - a]);
            }
            let dm = tables.witness()[d];
            prop_assert!(dm >= d as u64);
            prop_assert_eq!(f.eval(dm as i64).unwrap(), env[d]);
        }
        prop_assert!(tables.closure_function().is_user_friendly(2 * horizon));
    }

    #[test]
    fn expansion_keeps_the_closure_cost(f in total_table(), jumps in prop::collection::vec(0u32..10, 1..5)) {
        let tables = ClosureTables::build(&f, 10).unwrap();
        let closure = tables.closure_function();
        let steps: Vec<Step> = jumps.iter().map(|&t| Step::new(0, t)).collect();
        let travel = Travel::new(steps).unwrap();
        let expanded = tables.expand_travel(&travel, &f).unwrap();
        prop_assert_eq!(expanded.cost(&f).unwrap(), travel.cost(&closure).unwrap());
        prop_assert_eq!(expanded.first(), travel.first());
        prop_assert_eq!(expanded.last(), travel.last());
    }

    #[test]
    fn more_budget_never_delays((g, src, dst) in graph_with_nodes(), f in user_friendly()) {
        let mut last: Option<i64> = None;
        for c in [0u64, 1, 2, 4, 8] {
            let q = CcQuery { src, dst, budget: Cost::from_int(c).into() };
            let delay = plan_cost_constrained(&g, &f, q).unwrap().map(|p| p.delay);
            if let (Some(prev), Some(now)) = (last, delay) {
                prop_assert!(now <= prev);
            }
            prop_assert!(last.is_none() || delay.is_some());
            last = delay;
        }
    }

    #[test]
    fn planned_travels_respect_their_constraint((g, src, dst) in graph_with_nodes(), f in user_friendly(), b in budget(), h in 0u32..7) {
        if let Some(p) = plan_cost_constrained(&g, &f, CcQuery { src, dst, budget: b }).unwrap() {
            prop_assert!(p.travel.validate(&g));
            prop_assert!(b.admits(p.travel.cost(&f).unwrap()));
            prop_assert_eq!(p.travel.delay(), p.delay);
        }
        if let Some(p) = plan_history_constrained(&g, &f, h, src, dst).unwrap() {
            prop_assert!(p.travel.validate(&g));
            prop_assert!(p.travel.respects_history_bound(h));
            prop_assert_eq!(p.travel.cost(&f).unwrap(), p.cost);
        }
    }

    #[test]
    fn longer_history_never_delays((g, src, dst) in graph_with_nodes(), f in user_friendly()) {
        let delays: Vec<Option<i64>> = (0..=g.lifetime() + 1)
            .map(|h| plan_history_constrained(&g, &f, h, src, dst).unwrap().map(|p| p.delay))
            .collect();
        for w in delays.windows(2) {
            // Without backward jumps some destinations are out of reach.
            prop_assert!(w[0].is_none() || w[1].is_some());
            if let (Some(a), Some(b)) = (w[0], w[1]) {
                prop_assert!(b <= a);
            }
        }
        let unbounded = plan_cost_constrained(&g, &f, CcQuery { src, dst, budget: Budget::Unbounded }).unwrap();
        let full = plan_history_constrained(&g, &f, g.lifetime(), src, dst).unwrap();
        prop_assert_eq!(unbounded.map(|p| (p.delay, p.cost)), full.map(|p| (p.delay, p.cost)));
    }

    #[test]
    fn history_table_is_a_fixpoint((g, src, _) in graph_with_nodes(), f in user_friendly(), h in 0u32..4) {
        let mut table = HistoryTable::build(&g, &f, h, src).unwrap();
        for t in 0..=table.t_max() {
            prop_assert!(!table.relax_pass(t));
        }
    }

    #[test]
    fn strict_planners_match_the_oracle((g, src, dst) in graph_with_nodes(), b in budget(), h in 0u32..4) {
        let s = strictify(&g);
        let f = CostFunction::Identity;
        let bounds = OracleBounds::for_instance(&s, &f);
        let planned = plan_cost_constrained(&s, &f, CcQuery { src, dst, budget: b }).unwrap();
        prop_assert_eq!(planned.map(|p| (p.delay, p.cost)), oracle_cc(&s, &f, b, src, dst, bounds).unwrap());
        let planned = plan_history_constrained(&s, &f, h, src, dst).unwrap();
        prop_assert_eq!(planned.map(|p| (p.delay, p.cost)), oracle_hc(&s, &f, h, src, dst, bounds).unwrap());
    }
}

#[test]
fn strict_single_edge_costs_one_more_instant() {
    let g = EvolvingGraph::from_triples(2, [(0, 1, 3)]).unwrap();
    let q = CcQuery {
        src: 0,
        dst: 1,
        budget: Cost::ZERO.into(),
    };
    let plain = plan_cost_constrained(&g, &CostFunction::Identity, q)
        .unwrap()
        .unwrap();
    let strict = plan_cost_constrained(&strictify(&g), &CostFunction::Identity, q)
        .unwrap()
        .unwrap();
    assert_eq!(strict.delay, plain.delay + 1);
}
