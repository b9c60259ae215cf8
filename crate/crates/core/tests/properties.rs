use proptest::prelude::*;

use zconn_core::flow::{boundary, Budget};
use zconn_core::reduction::{lift, reduce_greedy, ReductionTrace};
use zconn_core::{
    are_isomorphic, canonical_form, decode_graph6, encode_graph6, Engine, FlowAssignment,
    MultiGraph, Oracle, Orientation,
};

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n - 1), 0..=max_m).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .map(|(u, v)| (u, if v >= u { v + 1 } else { v }))
                .collect();
            MultiGraph::new(n, &edges).unwrap()
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            MultiGraph::new(n, &edges).unwrap()
        })
    })
}

fn permuted(g: MultiGraph) -> impl Strategy<Value = (MultiGraph, MultiGraph)> {
    let n = g.order();
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |perm| (g.clone(), g.relabel(&perm)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in simple_graph(12)) {
        let text = encode_graph6(&g).unwrap();
        let back = decode_graph6(&text).unwrap();
        prop_assert_eq!(encode_graph6(&back).unwrap(), text);
        prop_assert_eq!(back.multiplicity_matrix(), g.multiplicity_matrix());
    }

    #[test]
    fn canonical_form_ignores_labels((g, h) in multigraph(7, 14).prop_flat_map(permuted)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert!(are_isomorphic(&canonical_form(&g).to_graph(), &g));
    }

    #[test]
    fn engines_agree(g in multigraph(5, 9), k in 3u32..=5) {
        let sumset = Oracle::new(Engine::Sumset, Budget::default());
        let gray = Oracle::new(Engine::GrayCode, Budget::default());
        prop_assert_eq!(
            sumset.achievable_boundaries(&g, k).unwrap(),
            gray.achievable_boundaries(&g, k).unwrap()
        );
    }

    #[test]
    fn boundaries_sum_to_zero(g in multigraph(6, 10), seed in any::<u64>()) {
        let values: Vec<u32> = (0..g.size()).map(|i| 1 + ((seed >> (i % 60)) & 1) as u32).collect();
        let f = FlowAssignment::new(3, values).unwrap();
        let b = boundary(&g, &Orientation::reference(&g), &f).unwrap();
        prop_assert_eq!(b.values().iter().sum::<u32>() % 3, 0);
        prop_assert!(Oracle::default().achievable_boundaries(&g, 3).unwrap().contains(&b));
    }

    #[test]
    fn group_connectivity_is_label_invariant((g, h) in multigraph(6, 11).prop_flat_map(permuted)) {
        let o = Oracle::default();
        prop_assert_eq!(o.is_group_connected(&g, 3).unwrap(), o.is_group_connected(&h, 3).unwrap());
        prop_assert_eq!(o.has_nowhere_zero_flow(&g, 3).unwrap(), o.has_nowhere_zero_flow(&h, 3).unwrap());
    }

    #[test]
    fn contraction_counts(g in multigraph(7, 12), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        prop_assume!(g.size() > 0);
        let mut set: Vec<usize> = picks.iter().map(|i| i.index(g.size())).collect();
        set.sort_unstable();
        set.dedup();
        let c = g.contract_edges(&set).unwrap();
        let merged = g.order() - c.graph.order();
        prop_assert!(merged <= set.len());
        let kept = c.edge_map.iter().filter(|e| e.is_some()).count();
        prop_assert_eq!(kept, c.graph.size());
        prop_assert!(c.graph.size() <= g.size() - set.len());
    }

    #[test]
    fn lift_keeps_degree_sum_and_size(g in multigraph(6, 14)) {
        let Some(u) = (0..g.order()).find(|&u| g.degree(u) >= 4) else { return Ok(()) };
        let ends: Vec<usize> = g.neighbors(u);
        let v = ends[0];
        let Some(&w) = ends.iter().find(|&&w| w != v) else { return Ok(()) };
        let lifted = lift(&g, u, v, w).unwrap();
        prop_assert_eq!(lifted.size(), g.size() - 1);
        prop_assert_eq!(lifted.degree(u), g.degree(u) - 2);
        prop_assert_eq!(lifted.multiplicity(v, w), g.multiplicity(v, w) + 1);
    }

    #[test]
    fn greedy_traces_replay(g in multigraph(7, 16)) {
        let trace = reduce_greedy(&g);
        prop_assert_eq!(trace.replay().unwrap(), trace.terminal.clone());
        trace.verify(&Oracle::default()).unwrap();
        let back = ReductionTrace::from_tsv(&trace.to_tsv()).unwrap();
        prop_assert_eq!(back, trace.clone());
        // contracting certified subgraphs never changes the verdict
        let o = Oracle::default();
        prop_assert_eq!(o.is_group_connected(&g, 3).unwrap(), o.is_group_connected(&trace.terminal, 3).unwrap());
    }
}
