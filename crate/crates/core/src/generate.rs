//! Graph families and random instances for experiments and tests.

use rand::Rng;

use crate::divisor::Divisor;
use crate::graph::MultiGraph;

/// Loop-free multigraph on `n` nodes: each pair gets `1..=max_mult` parallel
/// edges with probability `edge_prob`. May be disconnected.
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64, max_mult: u64) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v, rng.gen_range(1..=max_mult)));
            }
        }
    }
    MultiGraph::from_edges(n, &edges).expect("valid random graph")
}

/// Connected multigraph: a random spanning tree plus independent extra edges.
#[allow(clippy::needless_range_loop)]
pub fn random_connected_multigraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    edge_prob: f64,
    max_mult: u64,
) -> MultiGraph {
    let mut mult = vec![vec![0u64; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        mult[u][v] += rng.gen_range(1..=max_mult);
    }
    for u in 0..n {
        for v in u + 1..n {
            if mult[u][v] == 0 && rng.gen_bool(edge_prob) {
                mult[u][v] = rng.gen_range(1..=max_mult);
            }
        }
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mult[u][v] > 0)
        .map(|(u, v)| (u, v, mult[u][v]))
        .collect();
    MultiGraph::from_edges(n, &edges).expect("valid random graph")
}

/// Every connected multigraph on `n` labelled nodes with pair multiplicities
/// in `0..=max_mult`.
pub fn all_connected_multigraphs(n: usize, max_mult: u64) -> impl Iterator<Item = MultiGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let base = max_mult + 1;
    let total = base.pow(pairs.len() as u32);
    (0..total).filter_map(move |mut code| {
        let mut edges = Vec::new();
        for &(u, v) in &pairs {
            let m = code % base;
            code /= base;
            if m > 0 {
                edges.push((u, v, m));
            }
        }
        let g = MultiGraph::from_edges(n, &edges).expect("valid graph");
        g.is_connected().then_some(g)
    })
}

/// Uniformly placed chips: `degree` chips dropped on random nodes.
pub fn random_effective_divisor<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: u64) -> Divisor {
    let mut values = vec![0i64; n];
    for _ in 0..degree {
        values[rng.gen_range(0..n)] += 1;
    }
    Divisor::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn exhaustive_counts() {
        // Connected labelled simple graphs on 3 and 4 nodes: 4 and 38.
        assert_eq!(all_connected_multigraphs(3, 1).count(), 4);
        assert_eq!(all_connected_multigraphs(4, 1).count(), 38);
        assert_eq!(all_connected_multigraphs(1, 3).count(), 1);
        assert_eq!(all_connected_multigraphs(2, 3).count(), 3);
    }

    #[test]
    fn random_connected_is_connected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            assert!(random_connected_multigraph(&mut rng, n, 0.2, 3).is_connected());
        }
    }
}
