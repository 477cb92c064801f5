use serde::Serialize;

use super::{apply_script, fire_mask, reduce, reduce_unchecked, reduced_chips_at, Divisor, DivisorError};
use crate::graph::{MultiGraph, NodeId};
use crate::util::Compositions;

/// Base point used when a canonical representative is needed and none is given.
const BASE: NodeId = NodeId(0);

/// `D ~ D'`: equal degree and equal reduced form at the base point.
pub fn equivalent(g: &MultiGraph, a: &Divisor, b: &Divisor) -> Result<bool, DivisorError> {
    a.check_len(g)?;
    b.check_len(g)?;
    if a.degree() != b.degree() {
        return Ok(false);
    }
    if a == b {
        return Ok(true);
    }
    Ok(reduce(g, a, BASE)?.reduced == reduce(g, b, BASE)?.reduced)
}

/// Whether `d` is equivalent to some effective divisor.
pub fn effective_equivalent(g: &MultiGraph, d: &Divisor) -> Result<bool, DivisorError> {
    d.check_len(g)?;
    g.require_connected()?;
    Ok(effective_equivalent_unchecked(g, d))
}

fn effective_equivalent_unchecked(g: &MultiGraph, d: &Divisor) -> bool {
    if d.degree() < 0 {
        return false;
    }
    d.is_effective() || reduced_chips_at(g, d, BASE) >= 0
}

/// Baker-Norine rank: `-1` if `d` has no effective equivalent, otherwise the
/// largest `k` such that `d - E` has one for every effective `E` of degree `k`.
pub fn rank(g: &MultiGraph, d: &Divisor) -> Result<i64, DivisorError> {
    d.check_len(g)?;
    g.require_connected()?;
    if !effective_equivalent_unchecked(g, d) {
        return Ok(-1);
    }
    // Work from the reduced form: same class, so same rank, and it keeps
    // numbers small when `d` carries large debts.
    let base = reduce_unchecked(g, d, BASE).reduced;
    let n = g.node_count();
    let mut k = 1i64;
    loop {
        if k > base.degree() {
            return Ok(k - 1);
        }
        let all_pass = Compositions::new(n, k as u64).all(|e| {
            let diff: Vec<i64> = base.values().iter().zip(&e).map(|(a, &b)| a - b as i64).collect();
            effective_equivalent_unchecked(g, &Divisor::new(diff))
        });
        if !all_pass {
            return Ok(k - 1);
        }
        k += 1;
    }
}

/// For effective `d`: every node can receive a chip in some effective divisor
/// equivalent to `d`. Equivalent to `rank(d) >= 1`.
pub fn positive_rank(g: &MultiGraph, d: &Divisor) -> Result<bool, DivisorError> {
    d.check_len(g)?;
    g.require_connected()?;
    if !d.is_effective() {
        return Err(DivisorError::NotEffective);
    }
    Ok(positive_rank_unchecked(g, d))
}

pub(crate) fn positive_rank_unchecked(g: &MultiGraph, d: &Divisor) -> bool {
    g.nodes().all(|v| d[v] >= 1 || reduced_chips_at(g, d, v) >= 1)
}

/// Nested firing sets turning one effective divisor into an equivalent one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    /// `U_1 ⊆ U_2 ⊆ ... ⊆ U_k`, fired in this order.
    pub sets: Vec<Vec<NodeId>>,
    /// `D_t` after firing `U_1, ..., U_t`.
    pub intermediates: Vec<Divisor>,
}

/// Decomposes the move `from -> to` into set firings through effective divisors.
///
/// The script `x` with `to = from - Q x` is unique up to constants; after
/// shifting it to `min x = 0` the sets are its level sets, highest first.
pub fn chain_decompose(g: &MultiGraph, from: &Divisor, to: &Divisor) -> Result<ChainDecomposition, DivisorError> {
    from.check_len(g)?;
    to.check_len(g)?;
    if !from.is_effective() || !to.is_effective() {
        return Err(DivisorError::NotEffective);
    }
    if from == to {
        return Ok(ChainDecomposition { sets: vec![], intermediates: vec![] });
    }
    if from.degree() != to.degree() {
        return Err(DivisorError::NotEquivalent);
    }
    let a = reduce(g, from, BASE)?;
    let b = reduce(g, to, BASE)?;
    if a.reduced != b.reduced {
        return Err(DivisorError::NotEquivalent);
    }
    let mut x: Vec<i64> = a.script.values().iter().zip(b.script.values()).map(|(p, q)| p - q).collect();
    let min = *x.iter().min().expect("non-empty graph");
    x.iter_mut().for_each(|v| *v -= min);
    let top = *x.iter().max().expect("non-empty graph");

    let n = g.node_count();
    let mut current = from.values().to_vec();
    let mut sets = Vec::with_capacity(top as usize);
    let mut intermediates = Vec::with_capacity(top as usize);
    for i in 1..=top {
        let level = top + 1 - i;
        let mask: Vec<bool> = x.iter().map(|&v| v >= level).collect();
        fire_mask(g, &mut current, &mask, 1);
        if current.iter().any(|&c| c < 0) {
            return Err(DivisorError::ChainBroken(i as usize));
        }
        sets.push((0..n).filter(|&v| mask[v]).map(NodeId).collect());
        intermediates.push(Divisor::new(current.clone()));
    }
    debug_assert_eq!(
        apply_script(g, from, &super::FiringScript::new(x)).ok().as_ref(),
        Some(to)
    );
    if current != to.values() {
        return Err(DivisorError::ChainBroken(top as usize));
    }
    Ok(ChainDecomposition { sets, intermediates })
}
