use ohcp::build_complex;
use ohcp::tu::oracle::minimal_non_tu;
use ohcp::tu::{find_mntus_in_graph, BipartiteIncidenceGraph, DEFAULT_SEARCH_BUDGET};
use proptest::prelude::*;

fn circuit_sets(a: &[Vec<i64>], cols: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let g = BipartiteIncidenceGraph::from_dense(a, cols).unwrap();
    let s = find_mntus_in_graph(&g, DEFAULT_SEARCH_BUDGET);
    assert!(s.complete);
    for c in &s.certificates {
        c.verify(&g).unwrap();
    }
    s.certificates.into_iter().map(|c| (c.rows, c.cols)).collect()
}

fn matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        (proptest::collection::vec(proptest::collection::vec(prop_oneof![2 => Just(0i64), 1 => Just(1), 1 => Just(-1)], c), r), Just(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]
    #[test]
    fn circuits_match_determinant_scan((a, cols) in matrix()) {
        prop_assert_eq!(circuit_sets(&a, cols), minimal_non_tu(&a, cols, 12).unwrap());
    }
}

#[test]
fn fixture_boundaries_match_scan() {
    let mob = vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]];
    let mut core = mob.clone();
    core.extend([vec![6, 1, 2], vec![6, 2, 3], vec![6, 3, 4], vec![6, 4, 5], vec![6, 5, 1]]);
    let mut rp2 = mob.clone();
    rp2.extend([vec![6, 1, 3], vec![6, 3, 5], vec![6, 5, 2], vec![6, 2, 4], vec![6, 4, 1]]);
    for k in [mob, core, rp2] {
        let b = build_complex(&k).unwrap().boundary_matrix(2).unwrap();
        let a = b.to_dense();
        assert_eq!(circuit_sets(&a, b.n()), minimal_non_tu(&a, b.n(), 12).unwrap());
    }
}
