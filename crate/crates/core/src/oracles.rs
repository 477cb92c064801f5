//! Brute-force reference implementations.
//!
//! Nothing here uses `q`-reduction or Dhar burning. Linear equivalence is
//! decided through the lattice spanned by the Laplacian: with the reduced
//! Laplacian `Q̃` (row and column of node 0 deleted), `D ~ D'` iff the degrees
//! agree and `adj(Q̃)(D - D')~ ≡ 0 (mod det Q̃)`. Effective classes are explored
//! by trying every proper subset as a firing move. These routines are slow and
//! meant only as correctness anchors on small graphs; they refuse, rather than
//! truncate, when an instance is too large.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::divisor::{Divisor, EquivalenceClasses};
use crate::graph::{GraphError, MultiGraph, NodeId};

/// Largest effective class explored before giving up.
pub const CLASS_CAP: usize = 1_000_000;
/// Largest number of divisors one enumeration may visit.
pub const ENUMERATION_CAP: usize = 20_000_000;
const SUBSET_NODE_LIMIT: usize = 20;
const ALPHA_NODE_LIMIT: usize = 24;
const LATTICE_NODE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for brute force: {0}")]
    OracleTooLarge(String),
    #[error("divisor must be effective")]
    NotEffective,
    #[error("divisor has {found} entries but the graph has {expected} nodes")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_len(g: &MultiGraph, d: &Divisor) -> Result<(), OracleError> {
    if d.len() != g.node_count() {
        return Err(OracleError::LengthMismatch { expected: g.node_count(), found: d.len() });
    }
    Ok(())
}

/// Maximum independent set by branch and bound over bitmasks.
pub fn alpha_bruteforce(g: &MultiGraph) -> Result<(usize, Vec<NodeId>), OracleError> {
    let n = g.node_count();
    if n > ALPHA_NODE_LIMIT {
        return Err(OracleError::OracleTooLarge(format!("{n} nodes, limit {ALPHA_NODE_LIMIT}")));
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(NodeId(u)).iter().fold(0u32, |acc, &(v, _)| acc | 1 << v))
        .collect();

    fn branch(adj: &[u32], candidates: u32, chosen: u32, best: &mut u32) {
        if candidates == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + candidates.count_ones() <= best.count_ones() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u32 << v;
        branch(adj, candidates & !bit & !adj[v], chosen | bit, best);
        branch(adj, candidates & !bit, chosen, best);
    }

    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best = 0u32;
    branch(&adj, all, 0, &mut best);
    let witness: Vec<NodeId> = (0..n).filter(|&v| best >> v & 1 == 1).map(NodeId).collect();
    Ok((witness.len(), witness))
}

/// All effective divisors equivalent to a seed, with the legal set firings
/// available from each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveClass {
    pub members: Vec<Divisor>,
    /// `moves[i]` lists every proper non-empty set that can fire from `members[i]`.
    pub moves: Vec<Vec<Vec<NodeId>>>,
}

impl EffectiveClass {
    pub fn contains(&self, d: &Divisor) -> bool {
        self.members.contains(d)
    }

    /// Nodes carrying a chip in at least one member.
    pub fn reachable_nodes(&self, n: usize) -> Vec<bool> {
        let mut hit = vec![false; n];
        for m in &self.members {
            for (h, &c) in hit.iter_mut().zip(m.values()) {
                *h |= c > 0;
            }
        }
        hit
    }
}

/// Breadth-first closure of `{d}` under legal firings of every proper subset.
pub fn effective_class_enumerate(g: &MultiGraph, d: &Divisor) -> Result<EffectiveClass, OracleError> {
    effective_class_enumerate_with_cap(g, d, CLASS_CAP)
}

pub fn effective_class_enumerate_with_cap(
    g: &MultiGraph,
    d: &Divisor,
    cap: usize,
) -> Result<EffectiveClass, OracleError> {
    check_len(g, d)?;
    if !d.is_effective() {
        return Err(OracleError::NotEffective);
    }
    let n = g.node_count();
    if n > SUBSET_NODE_LIMIT {
        return Err(OracleError::OracleTooLarge(format!("{n} nodes, limit {SUBSET_NODE_LIMIT}")));
    }
    let q = g.laplacian();
    let subsets: Vec<(Vec<NodeId>, Vec<i64>)> = (1u32..(1u32 << n).saturating_sub(1))
        .map(|bits| {
            let set: Vec<NodeId> = (0..n).filter(|&v| bits >> v & 1 == 1).map(NodeId).collect();
            // Column sums: (Q 1_U)_w = Σ_{u ∈ U} Q[w][u].
            let delta = (0..n).map(|w| set.iter().map(|u| q[w][u.0]).sum()).collect();
            (set, delta)
        })
        .collect();

    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(d.values().to_vec(), 0)]);
    let mut members = vec![d.values().to_vec()];
    let mut moves = vec![];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let current = members[i].clone();
        let mut here = vec![];
        for (set, delta) in &subsets {
            let next: Vec<i64> = current.iter().zip(delta).map(|(a, b)| a - b).collect();
            if next.iter().any(|&c| c < 0) {
                continue;
            }
            here.push(set.clone());
            if !index.contains_key(&next) {
                if members.len() >= cap {
                    return Err(OracleError::OracleTooLarge(format!("effective class exceeds {cap} members")));
                }
                index.insert(next.clone(), members.len());
                queue.push_back(members.len());
                members.push(next);
            }
        }
        moves.push(here);
    }
    Ok(EffectiveClass { members: members.into_iter().map(Divisor::new).collect(), moves })
}

/// Linear-equivalence invariants of a connected graph from the reduced Laplacian.
#[derive(Debug, Clone)]
pub struct Lattice {
    adjugate: Vec<Vec<i128>>,
    det: i128,
}

impl Lattice {
    pub fn new(g: &MultiGraph) -> Result<Self, OracleError> {
        let n = g.node_count();
        if n > LATTICE_NODE_LIMIT {
            return Err(OracleError::OracleTooLarge(format!("{n} nodes, limit {LATTICE_NODE_LIMIT}")));
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected.into());
        }
        let q = g.laplacian();
        let reduced: Vec<Vec<i128>> = (1..n).map(|i| (1..n).map(|j| q[i][j] as i128).collect()).collect();
        let m = n - 1;
        let det = determinant(&reduced);
        let adjugate = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        // adj[i][j] = (-1)^{i+j} det(minor with row j and column i removed)
                        let minor: Vec<Vec<i128>> = (0..m)
                            .filter(|&r| r != j)
                            .map(|r| (0..m).filter(|&c| c != i).map(|c| reduced[r][c]).collect())
                            .collect();
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * determinant(&minor)
                    })
                    .collect()
            })
            .collect();
        Ok(Lattice { adjugate, det })
    }

    /// Number of spanning trees (the order of the Jacobian).
    pub fn det(&self) -> i128 {
        self.det
    }

    /// Complete invariant of the class of `d`: degree plus residues.
    pub fn signature(&self, d: &Divisor) -> (i64, Vec<i128>) {
        let tail = &d.values()[1..];
        let residues = self
            .adjugate
            .iter()
            .map(|row| row.iter().zip(tail).map(|(a, &b)| a * b as i128).sum::<i128>().rem_euclid(self.det))
            .collect();
        (d.degree(), residues)
    }

    pub fn equivalent(&self, a: &Divisor, b: &Divisor) -> bool {
        self.signature(a) == self.signature(b)
    }
}

/// Fraction-free (Bareiss) determinant.
fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Calls `f` on every vector of `parts` non-negative entries summing to
/// `total`, lexicographically. Stops early when `f` returns `false`.
fn for_each_composition(parts: usize, total: i64, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
    fn go(prefix: &mut Vec<i64>, parts: usize, left: i64, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
        if prefix.len() + 1 == parts {
            prefix.push(left);
            let keep = f(prefix);
            prefix.pop();
            return keep;
        }
        for c in 0..=left {
            prefix.push(c);
            let keep = go(prefix, parts, left - c, f);
            prefix.pop();
            if !keep {
                return false;
            }
        }
        true
    }
    if parts == 0 {
        return total != 0 || f(&[]);
    }
    go(&mut Vec::with_capacity(parts), parts, total, f)
}

fn composition_count(parts: usize, total: i64) -> f64 {
    // C(total + parts - 1, parts - 1)
    let mut acc = 1.0f64;
    for i in 0..parts.saturating_sub(1) {
        acc *= (total as f64 + 1.0 + i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// Decides "equivalent to an effective divisor" by comparing lattice
/// signatures against every effective divisor of the same degree.
#[derive(Debug, Clone)]
pub struct EffectivityOracle {
    n: usize,
    lattice: Lattice,
    by_degree: HashMap<i64, HashSet<Vec<i128>>>,
}

impl EffectivityOracle {
    pub fn new(g: &MultiGraph) -> Result<Self, OracleError> {
        Ok(EffectivityOracle { n: g.node_count(), lattice: Lattice::new(g)?, by_degree: HashMap::new() })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn effective_equivalent(&mut self, d: &Divisor) -> Result<bool, OracleError> {
        let degree = d.degree();
        if degree < 0 {
            return Ok(false);
        }
        if !self.by_degree.contains_key(&degree) {
            if composition_count(self.n, degree) > ENUMERATION_CAP as f64 {
                return Err(OracleError::OracleTooLarge(format!("degree {degree} on {} nodes", self.n)));
            }
            let mut set = HashSet::new();
            for_each_composition(self.n, degree, &mut |e| {
                set.insert(self.lattice.signature(&Divisor::new(e.to_vec())).1);
                true
            });
            self.by_degree.insert(degree, set);
        }
        Ok(self.by_degree[&degree].contains(&self.lattice.signature(d).1))
    }

    /// Literal rank: largest `k` such that `d - E` is equivalent to an effective
    /// divisor for every effective `E` of degree at most `k`.
    pub fn rank(&mut self, d: &Divisor) -> Result<i64, OracleError> {
        let mut k = 0i64;
        loop {
            if composition_count(self.n, k) > ENUMERATION_CAP as f64 {
                return Err(OracleError::OracleTooLarge(format!("rank search at k = {k}")));
            }
            let mut all = true;
            let mut err = None;
            for_each_composition(self.n, k, &mut |e| {
                let diff: Vec<i64> = d.values().iter().zip(e).map(|(a, b)| a - b).collect();
                match self.effective_equivalent(&Divisor::new(diff)) {
                    Ok(true) => true,
                    Ok(false) => {
                        all = false;
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        false
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            if !all {
                return Ok(k - 1);
            }
            k += 1;
        }
    }
}

/// Linear equivalence via the Laplacian lattice.
pub fn equivalent_bruteforce(g: &MultiGraph, a: &Divisor, b: &Divisor) -> Result<bool, OracleError> {
    check_len(g, a)?;
    check_len(g, b)?;
    let lattice = Lattice::new(g)?;
    Ok(lattice.equivalent(a, b))
}

pub fn effective_equivalent_bruteforce(g: &MultiGraph, d: &Divisor) -> Result<bool, OracleError> {
    check_len(g, d)?;
    EffectivityOracle::new(g)?.effective_equivalent(d)
}

pub fn rank_bruteforce(g: &MultiGraph, d: &Divisor) -> Result<i64, OracleError> {
    check_len(g, d)?;
    EffectivityOracle::new(g)?.rank(d)
}

/// Positive rank of an effective divisor: every node gets a chip in some
/// member of its effective class.
pub fn positive_rank_bruteforce(g: &MultiGraph, d: &Divisor) -> Result<bool, OracleError> {
    let class = effective_class_enumerate(g, d)?;
    Ok(class.reachable_nodes(g.node_count()).into_iter().all(|b| b))
}

/// Smallest `d` such that some effective divisor of degree `d` (all of them
/// are tried, not only reduced ones) has positive rank.
pub fn gonality_bruteforce(g: &MultiGraph) -> Result<u64, OracleError> {
    let n = g.node_count();
    if n == 0 {
        return Err(GraphError::Empty.into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    for d in 1..=n as i64 {
        if composition_count(n, d) > ENUMERATION_CAP as f64 {
            return Err(OracleError::OracleTooLarge(format!("degree {d} on {n} nodes")));
        }
        let mut found = false;
        let mut err = None;
        for_each_composition(n, d, &mut |c| match positive_rank_bruteforce(g, &Divisor::new(c.to_vec())) {
            Ok(true) => {
                found = true;
                false
            }
            Ok(false) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found {
            return Ok(d as u64);
        }
    }
    unreachable!("one chip per node always has positive rank")
}

/// `≡_D` from its characterisation: `u` and `v` are separated iff some member
/// of the effective class can fire a set containing exactly one of them.
pub fn equivalence_exact(g: &MultiGraph, d: &Divisor) -> Result<EquivalenceClasses, OracleError> {
    let class = effective_class_enumerate(g, d)?;
    let n = g.node_count();
    let mut separated = vec![vec![false; n]; n];
    for set in class.moves.iter().flatten() {
        let inside = g.mask(set);
        for u in 0..n {
            for v in 0..n {
                if inside[u] && !inside[v] {
                    separated[u][v] = true;
                    separated[v][u] = true;
                }
            }
        }
    }
    // Non-separation is transitive (it is "same side of every fireable set"),
    // so the smallest unseparated node labels each cell.
    let labels: Vec<usize> = (0..n).map(|v| (0..n).find(|&u| !separated[u][v]).expect("v is not separated from itself")).collect();
    Ok(EquivalenceClasses::from_labels(g, &labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Divisor {
        Divisor::new(v.to_vec())
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_bruteforce(&MultiGraph::complete(2)).unwrap().0, 1);
        assert_eq!(alpha_bruteforce(&MultiGraph::cycle(5)).unwrap().0, 2);
        assert_eq!(alpha_bruteforce(&MultiGraph::complete(4)).unwrap().0, 1);
        assert_eq!(alpha_bruteforce(&MultiGraph::edgeless(3)).unwrap().0, 3);
        let (a, w) = alpha_bruteforce(&MultiGraph::path(7)).unwrap();
        assert_eq!((a, w), (4, vec![NodeId(0), NodeId(2), NodeId(4), NodeId(6)]));
        assert!(alpha_bruteforce(&MultiGraph::edgeless(25)).is_err());
    }

    #[test]
    fn class_examples() {
        let k2 = MultiGraph::complete(2);
        let c = effective_class_enumerate(&k2, &d(&[2, 0])).unwrap();
        let mut members = c.members.clone();
        members.sort();
        assert_eq!(members, vec![d(&[0, 2]), d(&[1, 1]), d(&[2, 0])]);
        assert_eq!(effective_class_enumerate(&k2, &d(&[1, 0])).unwrap().members.len(), 2);
        let fat = effective_class_enumerate(&MultiGraph::banana(3), &d(&[1, 0])).unwrap();
        assert_eq!(fat.members, vec![d(&[1, 0])]);
        assert!(fat.moves[0].is_empty());
        assert!(effective_class_enumerate_with_cap(&MultiGraph::cycle(4), &d(&[4, 0, 0, 0]), 2).is_err());
    }

    #[test]
    fn lattice_counts_spanning_trees() {
        assert_eq!(Lattice::new(&MultiGraph::complete(4)).unwrap().det(), 16);
        assert_eq!(Lattice::new(&MultiGraph::cycle(5)).unwrap().det(), 5);
        assert_eq!(Lattice::new(&MultiGraph::banana(3)).unwrap().det(), 3);
        assert_eq!(Lattice::new(&MultiGraph::edgeless(1)).unwrap().det(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let k2 = MultiGraph::complete(2);
        assert!(equivalent_bruteforce(&k2, &d(&[2, 0]), &d(&[0, 2])).unwrap());
        assert!(!equivalent_bruteforce(&k2, &d(&[1, 0]), &d(&[0, 2])).unwrap());
        let c3 = MultiGraph::cycle(3);
        assert!(!equivalent_bruteforce(&c3, &d(&[1, 0, 0]), &d(&[0, 1, 0])).unwrap());
        assert!(equivalent_bruteforce(&c3, &d(&[2, 0, 0]), &d(&[0, 1, 1])).unwrap());
        assert!(effective_equivalent_bruteforce(&k2, &d(&[-1, 2])).unwrap());
        assert!(!effective_equivalent_bruteforce(&k2, &d(&[-1, 0])).unwrap());
    }

    #[test]
    fn rank_and_gonality_examples() {
        let k2 = MultiGraph::complete(2);
        assert_eq!(rank_bruteforce(&k2, &d(&[1, 0])).unwrap(), 1);
        assert_eq!(rank_bruteforce(&k2, &d(&[-2, 1])).unwrap(), -1);
        assert_eq!(rank_bruteforce(&MultiGraph::cycle(3), &d(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(gonality_bruteforce(&k2).unwrap(), 1);
        assert_eq!(gonality_bruteforce(&MultiGraph::cycle(3)).unwrap(), 2);
        assert_eq!(gonality_bruteforce(&MultiGraph::edgeless(1)).unwrap(), 1);
        assert!(gonality_bruteforce(&MultiGraph::edgeless(2)).is_err());
    }

    #[test]
    fn exact_equivalence_examples() {
        let k2 = MultiGraph::complete(2);
        assert_eq!(equivalence_exact(&k2, &d(&[1, 0])).unwrap().cells.len(), 2);
        assert_eq!(equivalence_exact(&MultiGraph::banana(3), &d(&[1, 0])).unwrap().cells.len(), 1);
    }
}
