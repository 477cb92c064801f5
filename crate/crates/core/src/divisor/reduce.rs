use serde::Serialize;

use super::{fire_mask, Divisor, DivisorError, FiringScript};
use crate::graph::{MultiGraph, NodeId};

/// The `q`-reduced representative of a divisor class and the script reaching it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub reduced: Divisor,
    pub script: FiringScript,
    pub q: NodeId,
}

/// Computes the unique `q`-reduced divisor equivalent to `d`.
///
/// The result is non-negative away from `q` and no non-empty set avoiding `q`
/// can fire from it. `reduced == d - Q script` and `script[q] == 0`.
pub fn reduce(g: &MultiGraph, d: &Divisor, q: NodeId) -> Result<ReductionResult, DivisorError> {
    d.check_len(g)?;
    if q.0 >= g.node_count() {
        return Err(crate::graph::GraphError::NodeOutOfRange(q.0).into());
    }
    g.require_connected()?;
    Ok(reduce_unchecked(g, d, q))
}

/// [`reduce`] without the length and connectivity checks.
pub(crate) fn reduce_unchecked(g: &MultiGraph, d: &Divisor, q: NodeId) -> ReductionResult {
    let n = g.node_count();
    let mut values = d.values().to_vec();
    let mut script = vec![0i64; n];
    clear_debt(g, &mut values, &mut script, q.0);
    burn_and_fire(g, &mut values, &mut script, q.0);
    ReductionResult { reduced: Divisor::new(values), script: FiringScript::new(script), q }
}

/// Chips left on `q` after reduction at `q`: the most chips any divisor
/// equivalent to `d` and non-negative off `q` can hold there.
pub(crate) fn reduced_chips_at(g: &MultiGraph, d: &Divisor, q: NodeId) -> i64 {
    let mut values = d.values().to_vec();
    let mut script = vec![0i64; g.node_count()];
    clear_debt(g, &mut values, &mut script, q.0);
    burn_and_fire(g, &mut values, &mut script, q.0);
    values[q.0]
}

/// Makes every node other than `q` non-negative.
///
/// Works level by level from the farthest BFS layer inward. Borrowing by the set
/// `A_k = {v : dist(q, v) >= k}` never lowers a node of `A_k` and gives each
/// node of layer `k` at least one chip per round, so after layer `k` is settled
/// no later step touches it again.
fn clear_debt(g: &MultiGraph, values: &mut [i64], script: &mut [i64], q: usize) {
    let dist = g.distances_from(q);
    let max_level = dist.iter().copied().filter(|&x| x != usize::MAX).max().unwrap_or(0);
    let mut mask = vec![false; values.len()];
    for level in (1..=max_level).rev() {
        for (v, &dv) in dist.iter().enumerate() {
            mask[v] = dv != usize::MAX && dv >= level;
        }
        let rounds = (0..values.len())
            .filter(|&v| dist[v] == level && values[v] < 0)
            .map(|v| {
                let out = g.out_degree(v, &mask) as i64;
                (-values[v] + out - 1) / out
            })
            .max()
            .unwrap_or(0);
        if rounds > 0 {
            fire_mask(g, values, &mask, -rounds);
            for (v, x) in script.iter_mut().enumerate() {
                if mask[v] {
                    *x -= rounds;
                }
            }
        }
    }
}

/// Dhar burning from `q`, firing the unburnt set (as many times in a row as it
/// stays legal) until the whole graph burns.
fn burn_and_fire(g: &MultiGraph, values: &mut [i64], script: &mut [i64], q: usize) {
    let n = values.len();
    let mut burnt = vec![false; n];
    let mut heat = vec![0u64; n];
    let mut stack = Vec::with_capacity(n);
    loop {
        burnt.fill(false);
        heat.fill(0);
        burnt[q] = true;
        stack.push(q);
        let mut burnt_count = 1;
        while let Some(a) = stack.pop() {
            for &(b, m) in g.neighbors(NodeId(a)) {
                if burnt[b] {
                    continue;
                }
                heat[b] += m;
                if heat[b] as i64 > values[b] {
                    burnt[b] = true;
                    burnt_count += 1;
                    stack.push(b);
                }
            }
        }
        if burnt_count == n {
            return;
        }
        // Unburnt nodes can pay their edges into the burnt region; fire them
        // together for as many rounds as every one of them can afford.
        let rounds = (0..n)
            .filter(|&v| !burnt[v] && heat[v] > 0)
            .map(|v| values[v] / heat[v] as i64)
            .min()
            .expect("a connected graph has an edge leaving the unburnt set");
        debug_assert!(rounds >= 1);
        let unburnt: Vec<bool> = burnt.iter().map(|b| !b).collect();
        fire_mask(g, values, &unburnt, rounds);
        for (v, x) in script.iter_mut().enumerate() {
            if unburnt[v] {
                *x += rounds;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::apply_script;

    #[test]
    fn k2_and_c3_examples() {
        let k2 = MultiGraph::complete(2);
        let r = reduce(&k2, &Divisor::new(vec![2, 0]), NodeId(1)).unwrap();
        assert_eq!(r.reduced, Divisor::new(vec![0, 2]));
        assert_eq!(apply_script(&k2, &Divisor::new(vec![2, 0]), &r.script).unwrap(), r.reduced);

        let c3 = MultiGraph::cycle(3);
        let r = reduce(&c3, &Divisor::new(vec![2, 0, 0]), NodeId(2)).unwrap();
        assert_eq!(r.reduced, Divisor::new(vec![0, 1, 1]));
    }

    #[test]
    fn reduced_input_is_fixed() {
        let c3 = MultiGraph::cycle(3);
        let d = Divisor::new(vec![0, 1, 1]);
        let r = reduce(&c3, &d, NodeId(2)).unwrap();
        assert_eq!(r.reduced, d);
        assert!(r.script.is_zero());
    }

    #[test]
    fn debt_is_cleared_off_q() {
        let g = MultiGraph::from_edges(5, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 3), (1, 4, 1)]).unwrap();
        let d = Divisor::new(vec![5, -3, 0, -7, 1]);
        let r = reduce(&g, &d, NodeId(0)).unwrap();
        assert!(r.reduced.values()[1..].iter().all(|&c| c >= 0));
        assert_eq!(r.script.values()[0], 0);
        assert_eq!(apply_script(&g, &d, &r.script).unwrap(), r.reduced);
        assert_eq!(r.reduced.degree(), d.degree());
    }

    #[test]
    fn rejects_disconnected() {
        let g = MultiGraph::edgeless(2);
        assert!(reduce(&g, &Divisor::new(vec![1, 0]), NodeId(0)).is_err());
    }
}
