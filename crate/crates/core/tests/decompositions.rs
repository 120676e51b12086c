mod common;

use common::{labelled_graphs, prufer_tree};
use lss_core::graph::{classify_shape, ShapeKind};
use lss_core::pmd::{check_pm_decomposition, pmd_exact, pmd_lower_bound, pmd_upper_bound};
use lss_core::twisted::{check_twisted_decomposition, tpmd_exact, tpmd_exact_observed, tpmd_from_pmd, StageCheck};
use lss_core::{Graph, Limits};
use proptest::prelude::*;

fn connected_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (2..=max_n).flat_map(labelled_graphs).filter(|g| g.is_connected())
}

#[test]
fn pmd_bounds_and_witnesses_on_small_connected_graphs() {
    let limits = Limits::default();
    for g in connected_up_to(5) {
        let (p, pm) = pmd_exact(&g, &limits).unwrap();
        assert_eq!(pm.len(), p);
        check_pm_decomposition(&g, &pm).unwrap();
        assert!(pmd_lower_bound(&g) <= p);
        assert!(p <= g.num_edges());
        if let Ok((u, upm)) = pmd_upper_bound(&g, &limits) {
            assert!(p <= u, "{g:?}");
            check_pm_decomposition(&g, &upm).unwrap();
        }
    }
}

#[test]
fn tpmd_sandwich_and_fast_path_against_lp() {
    let limits = Limits::default();
    let mut checks = 0usize;
    for g in connected_up_to(5) {
        let (p, _) = pmd_exact(&g, &limits).unwrap();
        let mut seen: Vec<StageCheck> = Vec::new();
        let mut obs = |c: &StageCheck| seen.push(c.clone());
        let (t, td) = tpmd_exact_observed(&g, &limits, Some(&mut obs)).unwrap();
        assert!(g.max_degree().div_ceil(2) <= t && t <= p, "{g:?}");
        assert_eq!(td.len(), t);
        check_twisted_decomposition(&g, &td).unwrap();
        assert!(td.certificates.iter().all(Option::is_some));
        for c in &seen {
            assert_eq!(c.feasible, c.lp_feasible(), "{c:?}");
        }
        checks += seen.len();
    }
    assert!(checks > 0);
}

#[test]
fn pmd_converts_to_twisted_decomposition() {
    let limits = Limits::default();
    for g in connected_up_to(4) {
        let (_, pm) = pmd_exact(&g, &limits).unwrap();
        let td = tpmd_from_pmd(&g, &pm).unwrap();
        check_twisted_decomposition(&g, &td).unwrap();
    }
}

#[test]
fn upper_bound_examples() {
    let limits = Limits::default();
    // unicyclic: triangle with three pendant edges at vertex 1 (Δ = 5)
    let u = Graph::new(6, [(1, 2), (2, 3), (1, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
    assert_eq!(pmd_upper_bound(&u, &limits).unwrap().0, 5);
    // bicyclic: two triangles joined by an edge (Δ = 3)
    let b = Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]).unwrap();
    assert_eq!(classify_shape(&b, 24).unwrap().kind, ShapeKind::Bicyclic);
    assert_eq!(pmd_upper_bound(&b, &limits).unwrap().0, 4);
}

#[test]
fn size_limits_are_reported() {
    let limits = Limits::default().with_max_n(4);
    let g = lss_core::graph::named_graph("P6").unwrap();
    assert!(pmd_exact(&g, &limits).is_err());
    assert!(tpmd_exact(&g, &limits).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trees_have_pmd_equal_to_max_degree(code in proptest::collection::vec(1usize..=9, 7)) {
        let t = prufer_tree(9, &code);
        let (p, pm) = pmd_exact(&t, &Limits::default()).unwrap();
        prop_assert_eq!(p, t.max_degree());
        check_pm_decomposition(&t, &pm).unwrap();
    }

    #[test]
    fn random_trees_have_tpmd_half_max_degree(code in proptest::collection::vec(1usize..=7, 5)) {
        let t = prufer_tree(7, &code);
        let (p, _) = tpmd_exact(&t, &Limits::default()).unwrap();
        prop_assert!(p >= t.max_degree().div_ceil(2));
        prop_assert!(p <= t.max_degree());
    }
}
