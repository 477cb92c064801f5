mod common;

use chipfire::divisor::{equivalent_by_cut, positive_rank};
use chipfire::generate::{random_effective_divisor, random_multigraph};
use chipfire::oracles::{alpha_bruteforce, equivalence_exact};
use chipfire::reduction::{
    accounting_lower_bound, build_gadget, certificate_degree, certificate_divisor, verify_certificate, Gadget,
    Role,
};
use chipfire::{MultiGraph, NodeId};
use rand::Rng;

use common::{is_independent, rng, subsets};

fn check_shape(g: &MultiGraph, gadget: &Gadget) {
    let (n, e) = (g.node_count() as u64, g.edge_count());
    let ghat = gadget.graph();
    let m = gadget.m();
    assert_eq!(m, 3 * n + 2 * e + 2);
    assert_eq!(ghat.node_count() as u64, 1 + 3 * n + 2 * e);
    assert_eq!(ghat.edge_count(), e * (1 + 2 * m) + n * (3 + 2 * m));
    assert!(ghat.is_connected());
    assert!((ghat.node_count() as u64) < m);
    for (a, b) in gadget.heavy_bundles() {
        assert_eq!(ghat.multiplicity(a, b), m);
        assert!(ghat.min_cut(a, b).unwrap().size >= m);
    }
    for v in g.nodes() {
        assert_eq!(gadget.role(gadget.original(v)), Role::Original(v));
        assert_eq!(gadget.role(gadget.prime(v)), Role::Prime(v));
        assert_eq!(gadget.role(gadget.tee(v)), Role::Tee(v));
        assert_eq!(ghat.multiplicity(gadget.prime(v), gadget.tee(v)), 3);
        assert_eq!(ghat.degree(gadget.original(v)), m * (1 + g.degree(v)));
    }
    for edge in gadget.edges() {
        assert_eq!(ghat.multiplicity(edge.at_u, edge.at_v), 1);
        assert_eq!(ghat.degree(edge.at_u), m + 1);
    }
    assert_eq!(gadget.role(Gadget::HUB), Role::Hub);
    assert_eq!(ghat.degree(Gadget::HUB), n * m);
    // Serialised form reads back to the same graph.
    let back = MultiGraph::parse(&gadget.to_string()).unwrap();
    assert_eq!(back.names(), ghat.names());
    assert!(ghat.edges().eq(back.edges()));
}

#[test]
fn gadget_invariants_on_random_graphs() {
    let mut r = rng(31);
    for _ in 0..200 {
        let n = r.gen_range(1..=7);
        let p = r.gen_range(0.0..1.0);
        let g = random_multigraph(&mut r, n, p, 3);
        check_shape(&g, &build_gadget(&g));
    }
}

#[test]
fn name_collisions_get_fresh_names() {
    let g = MultiGraph::parse("node a\nnode a'\nnode Ta\nedge a a' 1\n").unwrap();
    let gadget = build_gadget(&g);
    let names = gadget.graph().names();
    let mut sorted = names.to_vec();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    check_shape(&g, &gadget);
}

#[test]
fn every_independent_set_certifies() {
    let mut r = rng(32);
    for _ in 0..25 {
        let n = r.gen_range(1..=7);
        let p = r.gen_range(0.1..0.6);
        let g = random_multigraph(&mut r, n, p, 2);
        let gadget = build_gadget(&g);
        for set in subsets(n).filter(|s| is_independent(&g, s)) {
            let cert = certificate_divisor(&gadget, &set).unwrap();
            assert_eq!(cert.degree(), certificate_degree(&g, set.len()));
            let report = verify_certificate(&gadget, &cert).unwrap();
            assert!(report.positive_rank_confirmed, "{set:?} on\n{g}");
            assert!(report.schedule_effective.iter().all(|&b| b));
        }
    }
}

#[test]
fn non_maximum_sets_still_give_positive_rank() {
    let g = MultiGraph::path(4);
    let gadget = build_gadget(&g);
    let cert = certificate_divisor(&gadget, &[NodeId(0)]).unwrap();
    assert_eq!(cert.degree(), 4 * 4 + 3 + 1 - 1);
    assert!(positive_rank(gadget.graph(), &cert.divisor).unwrap());
}

#[test]
fn accounting_minimum_is_the_gadget_gonality() {
    let mut graphs: Vec<MultiGraph> = (1..=4).flat_map(|n| chipfire::generate::all_connected_multigraphs(n, 2)).collect();
    graphs.extend(chipfire::generate::all_connected_multigraphs(5, 1));
    graphs.push(MultiGraph::edgeless(3));
    graphs.push(MultiGraph::edgeless(5));
    for g in &graphs {
        let n = g.node_count();
        let (alpha, _) = alpha_bruteforce(g).unwrap();
        let best = subsets(n)
            .map(|u0| {
                let others: Vec<Vec<NodeId>> = g.nodes().filter(|v| !u0.contains(v)).map(|v| vec![v]).collect();
                accounting_lower_bound(g, &u0, &others).unwrap()
            })
            .min()
            .unwrap();
        assert_eq!(best as i64, certificate_degree(g, alpha));
    }
}

#[test]
fn heavy_bundles_are_blocking_below_m() {
    let mut r = rng(33);
    for _ in 0..100 {
        let n = r.gen_range(1..=5);
        let g = random_multigraph(&mut r, n, 0.5, 2);
        let gadget = build_gadget(&g);
        let ghat = gadget.graph();
        let chips = r.gen_range(0..gadget.m());
        let d = random_effective_divisor(&mut r, ghat.node_count(), chips);
        for (a, b) in gadget.heavy_bundles() {
            assert!(equivalent_by_cut(ghat, &d, a, b).unwrap());
        }
    }
    // Exact relation on the two smallest gadgets.
    for g in [MultiGraph::edgeless(1), MultiGraph::edgeless(2)] {
        let gadget = build_gadget(&g);
        let ghat = gadget.graph();
        for _ in 0..20 {
            let chips = r.gen_range(0..6);
            let d = random_effective_divisor(&mut r, ghat.node_count(), chips);
            let exact = equivalence_exact(ghat, &d).unwrap();
            for (a, b) in gadget.heavy_bundles() {
                assert!(exact.same_cell(a, b));
            }
        }
    }
}
