mod common;

use common::{brute_alternating_walk, labelled_graphs, matchings};
use lss_core::graph::named_graph;
use lss_core::matching::{find_weight_certificate, has_alternating_closed_walk, is_positive_matching};
use lss_core::{Graph, Matching};
use proptest::prelude::*;

#[test]
fn walk_criterion_matches_brute_force_and_lp_up_to_five_vertices() {
    let mut checked = 0;
    for n in 2..=5 {
        for g in labelled_graphs(n) {
            for m in matchings(&g) {
                let walk = has_alternating_closed_walk(&g, &m).unwrap();
                assert_eq!(walk, brute_alternating_walk(&g, &m), "{g:?} {m:?}");
                let cert = find_weight_certificate(&g, &m).unwrap();
                assert_eq!(!walk, cert.is_some(), "{g:?} {m:?}");
                if let Some(c) = cert {
                    assert!(c.certifies(&g, &m));
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn perfect_matchings_of_even_cycles_are_not_positive() {
    for n in [4, 6, 8] {
        let c = named_graph(&format!("C{n}")).unwrap();
        let m = Matching::from_pairs(&(0..n / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect::<Vec<_>>());
        assert!(!is_positive_matching(&c, &m).unwrap());
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 1..=n {
                for b in a + 1..=n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A greedy matching of `g` picking edges whose index bit is set in `pick`.
fn greedy_matching(g: &Graph, pick: u64) -> Matching {
    let mut chosen: Vec<lss_core::Edge> = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        if pick >> (k % 64) & 1 == 1 && chosen.iter().all(|c| !c.shares_vertex(e)) {
            chosen.push(*e);
        }
    }
    Matching::new(chosen)
}

proptest! {
    #[test]
    fn positivity_is_closed_under_submatchings(g in arb_graph(), pick in any::<u64>(), drop in any::<u64>()) {
        let m = greedy_matching(&g, pick);
        if is_positive_matching(&g, &m).unwrap() {
            let sub = Matching::new(
                m.edges().iter().enumerate().filter(|(k, _)| drop >> k & 1 == 0).map(|(_, e)| *e),
            );
            prop_assert!(is_positive_matching(&g, &sub).unwrap());
        }
    }

    #[test]
    fn lp_certificate_exists_iff_no_alternating_walk(g in arb_graph(), pick in any::<u64>()) {
        let m = greedy_matching(&g, pick);
        let cert = find_weight_certificate(&g, &m).unwrap();
        prop_assert_eq!(cert.is_some(), is_positive_matching(&g, &m).unwrap());
        if let Some(c) = cert {
            prop_assert!(c.certifies(&g, &m));
        }
    }

    #[test]
    fn single_edges_are_positive(g in arb_graph(), k in any::<usize>()) {
        if g.num_edges() > 0 {
            let e = g.edges()[k % g.num_edges()];
            prop_assert!(is_positive_matching(&g, &Matching::new([e])).unwrap());
        }
    }
}
