use std::collections::BTreeSet;

use lss_core::graph::{classify_shape, named_graph, parse_graph, ShapeKind};
use lss_core::Graph;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec((1..=n, 1..=n), 0..20).prop_map(move |pairs| {
            let set: BTreeSet<(usize, usize)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            Graph::new(n, set).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trips(g in arb_graph()) {
        let text = g.to_edge_list();
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn shape_agrees_with_cyclomatic_number(g in arb_graph()) {
        let shape = classify_shape(&g, 24).unwrap();
        match g.cyclomatic_number() {
            0 => prop_assert!(shape.kind.is_acyclic()),
            1 => prop_assert_eq!(shape.kind, ShapeKind::Unicyclic),
            _ => prop_assert!(!shape.kind.is_acyclic() && shape.kind != ShapeKind::Unicyclic),
        }
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert!(parse_graph("").is_err());
    assert!(parse_graph("3\n1 4\n").is_err());
    assert!(parse_graph("3\n1 1\n").is_err());
    assert!(parse_graph("3\n1 x\n").is_err());
    assert!(parse_graph("2 2\n").is_err());
}

#[test]
fn generator_grammar_is_case_insensitive() {
    assert_eq!(named_graph("k4").unwrap(), named_graph("K4").unwrap());
    assert_eq!(named_graph("k1,3").unwrap().degree(1), 3);
    assert!(named_graph("Q4").is_err());
    assert!(named_graph("C2").is_err());
}

#[test]
fn theta_graph_is_other() {
    let theta = Graph::new(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap();
    let shape = classify_shape(&theta, 24).unwrap();
    assert_eq!((shape.kind, shape.cycle_count), (ShapeKind::Other, 3));
}
