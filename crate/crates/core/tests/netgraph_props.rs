mod common;

use common::small_graph;
use multicut_mimic::netgraph::{parse_graph, write_graph, EdgeSet, VertexSet};
use multicut_mimic::oracles::Oracle;
use proptest::prelude::*;

proptest! {
    #[test]
    fn recursive_instance_capacity_and_embedding(
        g in small_graph(2..=9, 1..=16, 0..=3),
        pick in prop::collection::vec(any::<bool>(), 9),
    ) {
        let s: VertexSet = g.vertices().iter().zip(&pick).filter(|(_, &b)| b).map(|(&v, _)| v).collect();
        prop_assume!(!s.is_empty());
        let (sub, emb) = g.recursive_instance(&s).unwrap();
        prop_assert_eq!(g.t_capacity(&s).unwrap(), sub.k());
        prop_assert_eq!(&emb, &sub.edge_ids());
        for (e, u, v) in sub.edges() {
            prop_assert_eq!(g.endpoints(e), Some((u, v)));
            prop_assert!(s.contains(&u) || s.contains(&v));
        }
        let expected: EdgeSet = g
            .edges()
            .filter(|(_, u, v)| s.contains(u) || s.contains(v))
            .map(|(e, _, _)| e)
            .collect();
        prop_assert_eq!(emb, expected);
    }

    #[test]
    fn component_boundaries_at_most_twice_cut(
        g in small_graph(1..=9, 0..=16, 0..=2),
        pick in prop::collection::vec(any::<bool>(), 16),
    ) {
        let x: EdgeSet = g.edge_ids().into_iter().zip(&pick).filter(|(_, &b)| b).map(|(e, _)| e).collect();
        let total: usize = g
            .components_without(&x)
            .iter()
            .map(|c| g.boundary(c).unwrap().len())
            .sum();
        prop_assert!(total <= 2 * x.len());
    }

    #[test]
    fn write_parse_roundtrip(g in small_graph(1..=9, 0..=16, 0..=4)) {
        let text = write_graph(&g);
        let h = parse_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&h), text);
        prop_assert_eq!(h.num_edges(), g.num_edges());
        prop_assert_eq!(h.k(), g.k());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contracting_non_essential_edges_is_safe(g in small_graph(3..=7, 2..=11, 2..=4)) {
        let o = Oracle::default();
        let table = o.cut_value_table(&g).unwrap();
        let essential: EdgeSet = o.essential_edges(&g).unwrap().into_values().flatten().collect();
        for e in g.edge_ids().difference(&essential) {
            if g.joins_terminals(*e) {
                continue;
            }
            let (h, _) = g.contract_edge(*e).unwrap().degree2_reduce();
            prop_assert_eq!(&o.cut_value_table(&h).unwrap(), &table, "edge {}", e);
        }
    }
}
