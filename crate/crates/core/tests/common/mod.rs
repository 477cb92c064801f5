#![allow(dead_code)]

use chipfire::generate::random_connected_multigraph;
use chipfire::{Divisor, MultiGraph, NodeId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected multigraph with `lo..=hi` nodes.
pub fn connected_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, max_mult: u64) -> MultiGraph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.2..0.8);
    random_connected_multigraph(rng, n, p, max_mult)
}

pub fn divisor_in(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Divisor {
    Divisor::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

fn out_degree(g: &MultiGraph, v: usize, inside: u32) -> u64 {
    g.neighbors(NodeId(v)).iter().filter(|(w, _)| inside >> w & 1 == 0).map(|&(_, m)| m).sum()
}

/// `q`-reducedness straight from the definition: no debt off `q`, and no
/// non-empty subset avoiding `q` can fire.
pub fn is_q_reduced(g: &MultiGraph, d: &Divisor, q: NodeId) -> bool {
    let n = g.node_count();
    assert!(n <= 16);
    if g.nodes().any(|v| v != q && d[v] < 0) {
        return false;
    }
    (1u32..1 << n).filter(|s| s >> q.0 & 1 == 0).all(|s| {
        (0..n).any(|v| s >> v & 1 == 1 && (d.values()[v] as i128) < out_degree(g, v, s) as i128)
    })
}

/// Subsets of `0..n` as node lists.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<NodeId>> {
    (0u32..1 << n).map(move |s| (0..n).filter(|&v| s >> v & 1 == 1).map(NodeId).collect())
}

pub fn is_independent(g: &MultiGraph, set: &[NodeId]) -> bool {
    set.iter().all(|&u| set.iter().all(|&v| g.multiplicity(u, v) == 0))
}
