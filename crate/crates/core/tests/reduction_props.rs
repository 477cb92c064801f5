mod common;

use chipfire::divisor::{apply_script, reduce};
use chipfire::generate::random_connected_multigraph;
use chipfire::{Divisor, FiringScript, MultiGraph, NodeId};
use proptest::prelude::*;
use rand::Rng;

use common::{connected_graph, divisor_in, is_q_reduced, rng};

#[test]
fn reduced_form_is_unique_idempotent_and_degree_preserving() {
    let mut r = rng(7);
    for _ in 0..1000 {
        let g = connected_graph(&mut r, 1, 7, 3);
        let n = g.node_count();
        let d = divisor_in(&mut r, n, -4, 5);
        let q = NodeId(r.gen_range(0..n));
        let red = reduce(&g, &d, q).unwrap();

        assert_eq!(red.reduced.degree(), d.degree());
        assert!(is_q_reduced(&g, &red.reduced, q), "{d} on\n{g}");
        assert_eq!(apply_script(&g, &d, &red.script).unwrap(), red.reduced);
        assert_eq!(red.script.values()[q.0], 0);

        let again = reduce(&g, &red.reduced, q).unwrap();
        assert_eq!(again.reduced, red.reduced);
        assert!(again.script.is_zero());

        // Any other member of the class reduces to the same divisor.
        let x = FiringScript::new((0..n).map(|_| r.gen_range(-3..=3)).collect());
        let moved = apply_script(&g, &d, &x).unwrap();
        assert_eq!(reduce(&g, &moved, q).unwrap().reduced, red.reduced);
    }
}

#[test]
fn huge_debts_and_heavy_bundles() {
    let g = MultiGraph::from_edges(3, &[(0, 1, 1000), (1, 2, 1)]).unwrap();
    let d = Divisor::new(vec![-1_000_000, 3, 999_999]);
    let red = reduce(&g, &d, NodeId(0)).unwrap();
    assert!(is_q_reduced(&g, &red.reduced, NodeId(0)));
    assert_eq!(red.reduced.degree(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_respects_the_definition(seed in any::<u64>(), n in 2usize..7, q in 0usize..7) {
        let mut r = rng(seed);
        let g = random_connected_multigraph(&mut r, n, 0.5, 4);
        let d = divisor_in(&mut r, n, -6, 6);
        let q = NodeId(q % n);
        let red = reduce(&g, &d, q).unwrap();
        prop_assert!(is_q_reduced(&g, &red.reduced, q));
        prop_assert_eq!(red.reduced.degree(), d.degree());
    }
}
