mod common;

use common::{random_dag, random_digraph, random_scg, rng};
use pathinv::{
    basis_size_bound, dag_basis, dag_basis_canonical, path_invariance_basis,
    path_invariance_basis_with, scg_basis, scg_basis_default, topological_order, verify_basis,
    Basis, DirectedGraph, Execution, TopologicalOrder,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn assert_pairs_valid(g: &DirectedGraph, basis: &Basis) {
    for pair in basis.pairs() {
        assert!(g.contains_path(pair.p()), "{}", g.format_pair(pair));
        assert!(g.contains_path(pair.q()), "{}", g.format_pair(pair));
        assert_eq!(pair.p().start(), pair.q().start());
        assert_eq!(pair.p().end(), pair.q().end());
        assert_ne!(pair.p(), pair.q());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dag_basis_respects_its_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dag(&mut r, 10, 20);
        let basis = dag_basis_canonical(&g).unwrap();
        prop_assert!(basis.len() <= (g.vertex_count() - 1) * g.edge_count());
        assert_pairs_valid(&g, &basis);
    }

    #[test]
    fn dag_basis_is_deterministic_for_any_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dag(&mut r, 8, 14);
        // a random valid order: repeatedly pick a random source
        let mut indeg: Vec<usize> = g.vertices().map(|v| g.in_neighbors(v).len()).collect();
        let mut ready: Vec<usize> = g.vertices().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::new();
        while !ready.is_empty() {
            ready.shuffle(&mut r);
            let v = ready.pop().unwrap();
            order.push(v);
            for &w in g.out_neighbors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        let topo = TopologicalOrder::from_order(&g, order).unwrap();
        let a = dag_basis(&g, &topo).unwrap();
        let b = dag_basis(&g, &topo).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.len() <= (g.vertex_count() - 1) * g.edge_count());
        assert_pairs_valid(&g, &a);
    }

    #[test]
    fn general_basis_respects_its_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_digraph(&mut r, 10, 25);
        let basis = path_invariance_basis(&g);
        prop_assert!(basis.len() <= basis_size_bound(&g));
        prop_assert!(basis.len() <= g.vertex_count() * g.edge_count());
        assert_pairs_valid(&g, &basis);
    }

    #[test]
    fn scg_leaves_an_acyclic_remainder(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_scg(&mut r, 8, 10);
        let root = r.random_range(0..g.vertex_count());
        let (basis, g_dag) = scg_basis(&g, root).unwrap();
        prop_assert!(topological_order(&g_dag).is_ok());
        prop_assert!(g_dag.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        let cycles = basis.pairs().filter(|p| p.is_cycle_pair()).count();
        // one cycle pair per edge missing from the remainder
        prop_assert_eq!(cycles, g.edge_count() - g_dag.edge_count());
        assert_pairs_valid(&g, &basis);
    }

    #[test]
    fn general_basis_verifies(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_digraph(&mut r, 6, 12);
        let basis = path_invariance_basis(&g);
        let n = g.vertex_count();
        let report = verify_basis(&g, &basis, n, n).unwrap();
        prop_assert!(report.verified, "{:?}", report.missing);
    }

    #[test]
    fn acyclic_input_degenerates_to_dag_basis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_dag(&mut r, 9, 18);
        prop_assert_eq!(path_invariance_basis(&g).pair_set(), dag_basis_canonical(&g).unwrap().pair_set());
    }

    #[test]
    fn strongly_connected_input_degenerates_to_scg_basis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_scg(&mut r, 8, 10);
        let (scg, _) = scg_basis_default(&g).unwrap();
        prop_assert_eq!(path_invariance_basis(&g).pair_set(), scg.pair_set());
    }

    #[test]
    fn execution_policy_does_not_change_the_basis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_digraph(&mut r, 12, 30);
        prop_assert_eq!(
            path_invariance_basis_with(&g, Execution::Sequential),
            path_invariance_basis_with(&g, Execution::Parallel)
        );
    }
}

#[test]
fn disconnected_graphs_get_independent_bases() {
    let g =
        pathinv::build_graph([("a", "b"), ("b", "a"), ("c", "d"), ("d", "e"), ("c", "e")]).unwrap();
    let basis = path_invariance_basis(&g);
    assert_eq!(basis.len(), 2);
    assert!(basis.pairs().any(|p| p.is_cycle_pair()));
    assert!(basis.pairs().any(|p| p.start() == g.vertex("c").unwrap()));
}
