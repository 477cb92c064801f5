//! Divisors, firing scripts and the operations of the chip-firing game.
//!
//! A divisor assigns an integer number of chips to every node. Firing a script
//! `x` turns `D` into `D - Q x` where `Q` is the Laplacian; firing a set `U`
//! is the script `1_U` and moves one chip across every edge of the cut
//! `E(U, V \ U)`.

mod blocking;
mod rank;
mod reduce;

use std::fmt;
use std::ops::{Index, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, NodeId};

pub use blocking::{
    component_chip_counts, equivalence_classes, equivalence_classes_with_limit, equivalent_by_cut,
    ComponentChips, EquivalenceClasses, DEFAULT_CLASS_LIMIT, EXACT_NODE_LIMIT,
};
pub(crate) use rank::positive_rank_unchecked;
pub use rank::{chain_decompose, effective_equivalent, equivalent, positive_rank, rank, ChainDecomposition};
pub use reduce::{reduce, ReductionResult};
pub(crate) use reduce::{reduce_unchecked, reduced_chips_at};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("node {0} does not hold enough chips to fire")]
    InsufficientChips(NodeId),
    #[error("divisor must be effective")]
    NotEffective,
    #[error("divisor has {found} entries but the graph has {expected} nodes")]
    LengthMismatch { expected: usize, found: usize },
    #[error("divisors are not linearly equivalent")]
    NotEquivalent,
    #[error("effective class exceeds {limit} members")]
    ClassTooLarge { limit: usize },
    #[error("exact equivalence classes need at most {limit} nodes, graph has {nodes}")]
    TooManyNodes { nodes: usize, limit: usize },
    #[error("chain step {0} produced a non-effective divisor")]
    ChainBroken(usize),
    #[error("malformed divisor literal: {0}")]
    Literal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Integer chip count per node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<i64>);

/// Serialisable view of a divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorReport {
    pub values: Vec<i64>,
    pub degree: i64,
    pub effective: bool,
}

impl Divisor {
    pub fn new(values: Vec<i64>) -> Self {
        Divisor(values)
    }

    pub fn zeros(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// One chip on every node.
    pub fn ones(n: usize) -> Self {
        Divisor(vec![1; n])
    }

    /// A single chip on `v`.
    pub fn unit(n: usize, v: NodeId) -> Self {
        let mut d = Self::zeros(n);
        d.0[v.0] = 1;
        d
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn set(&mut self, v: NodeId, chips: i64) {
        self.0[v.0] = chips;
    }

    pub fn add(&mut self, v: NodeId, chips: i64) {
        self.0[v.0] += chips;
    }

    /// Nodes holding at least one chip.
    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| NodeId(i))
    }

    pub fn report(&self) -> DivisorReport {
        DivisorReport { values: self.0.clone(), degree: self.degree(), effective: self.is_effective() }
    }

    pub(crate) fn check_len(&self, g: &MultiGraph) -> Result<(), DivisorError> {
        if self.len() != g.node_count() {
            return Err(DivisorError::LengthMismatch { expected: g.node_count(), found: self.len() });
        }
        Ok(())
    }

    /// Parses either a bare integer vector in node order (`1,0,2`) or
    /// `name:count` pairs (`a:1,c:2`, unlisted nodes get zero chips).
    /// The Unicode minus sign is accepted alongside `-`.
    pub fn parse_literal(text: &str, g: &MultiGraph) -> Result<Self, DivisorError> {
        let text = text.trim().replace('\u{2212}', "-");
        let parse_count = |s: &str| {
            s.trim().parse::<i64>().map_err(|_| DivisorError::Literal(format!("`{}` is not an integer", s.trim())))
        };
        if text.is_empty() {
            return Err(DivisorError::Literal("empty divisor".into()));
        }
        if text.contains(':') {
            let mut values = vec![0i64; g.node_count()];
            let mut seen = vec![false; g.node_count()];
            for item in text.split(',') {
                let (name, count) = item
                    .split_once(':')
                    .ok_or_else(|| DivisorError::Literal(format!("expected `name:count`, found `{item}`")))?;
                let v = g
                    .node_by_name(name.trim())
                    .ok_or_else(|| DivisorError::Literal(format!("unknown node `{}`", name.trim())))?;
                if seen[v.0] {
                    return Err(DivisorError::Literal(format!("node `{}` listed twice", name.trim())));
                }
                seen[v.0] = true;
                values[v.0] = parse_count(count)?;
            }
            Ok(Divisor(values))
        } else {
            let values = text.split(',').map(parse_count).collect::<Result<Vec<_>, _>>()?;
            if values.len() != g.node_count() {
                return Err(DivisorError::LengthMismatch { expected: g.node_count(), found: values.len() });
            }
            Ok(Divisor(values))
        }
    }

    /// `name:count` rendering that skips empty nodes.
    pub fn to_named(&self, g: &MultiGraph) -> String {
        let parts: Vec<String> = g
            .nodes()
            .filter(|v| self.0[v.0] != 0)
            .map(|v| format!("{}:{}", g.name(v), self.0[v.0]))
            .collect();
        match (parts.is_empty(), g.node_count()) {
            (true, 0) => String::new(),
            (true, _) => format!("{}:0", g.name(NodeId(0))),
            (false, _) => parts.join(","),
        }
    }
}

impl Index<NodeId> for Divisor {
    type Output = i64;

    fn index(&self, v: NodeId) -> &i64 {
        &self.0[v.0]
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.report().serialize(s)
    }
}

/// Integer vector `x` acting on divisors by `D -> D - Q x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FiringScript(Vec<i64>);

impl FiringScript {
    pub fn new(values: Vec<i64>) -> Self {
        FiringScript(values)
    }

    pub fn zero(n: usize) -> Self {
        FiringScript(vec![0; n])
    }

    /// The incidence vector `1_U`.
    pub fn indicator(n: usize, set: &[NodeId]) -> Self {
        let mut x = vec![0; n];
        for v in set {
            x[v.0] = 1;
        }
        FiringScript(x)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// `Q x` for a script `x`.
pub(crate) fn laplacian_times(g: &MultiGraph, x: &[i64]) -> Vec<i64> {
    g.nodes()
        .map(|u| {
            let xu = x[u.0];
            g.neighbors(u).iter().map(|&(w, m)| m as i64 * (xu - x[w])).sum()
        })
        .collect()
}

/// Fires the node set `mask` `times` times in place (negative `times` borrows).
pub(crate) fn fire_mask(g: &MultiGraph, values: &mut [i64], mask: &[bool], times: i64) {
    if times == 0 {
        return;
    }
    for u in 0..values.len() {
        if !mask[u] {
            continue;
        }
        for &(w, m) in g.neighbors(NodeId(u)) {
            if !mask[w] {
                let moved = times * m as i64;
                values[u] -= moved;
                values[w] += moved;
            }
        }
    }
}

/// `D - Q x`. Degree is preserved; the result may be non-effective.
pub fn apply_script(g: &MultiGraph, d: &Divisor, x: &FiringScript) -> Result<Divisor, DivisorError> {
    d.check_len(g)?;
    if x.0.len() != g.node_count() {
        return Err(DivisorError::LengthMismatch { expected: g.node_count(), found: x.0.len() });
    }
    let qx = laplacian_times(g, &x.0);
    Ok(Divisor(d.0.iter().zip(qx).map(|(a, b)| a - b).collect()))
}

/// Fires the set `U` from an effective divisor: every node of `U` sends one chip
/// along each of its edges leaving `U`.
pub fn fire_set(g: &MultiGraph, d: &Divisor, set: &[NodeId]) -> Result<Divisor, DivisorError> {
    d.check_len(g)?;
    if !d.is_effective() {
        return Err(DivisorError::NotEffective);
    }
    for v in set {
        if v.0 >= g.node_count() {
            return Err(GraphError::NodeOutOfRange(v.0).into());
        }
    }
    let mask = g.mask(set);
    if let Some(v) = set.iter().copied().find(|v| (d[*v] as u64) < g.out_degree(v.0, &mask)) {
        return Err(DivisorError::InsufficientChips(v));
    }
    let mut values = d.0.clone();
    fire_mask(g, &mut values, &mask, 1);
    Ok(Divisor(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> MultiGraph {
        MultiGraph::complete(2)
    }

    #[test]
    fn firing_on_k2() {
        let d = Divisor::new(vec![1, 0]);
        assert_eq!(fire_set(&k2(), &d, &[NodeId(0)]).unwrap(), Divisor::new(vec![0, 1]));
        let d = Divisor::new(vec![0, 1]);
        assert_eq!(fire_set(&k2(), &d, &[NodeId(0)]), Err(DivisorError::InsufficientChips(NodeId(0))));
        assert_eq!(fire_set(&k2(), &Divisor::new(vec![-1, 2]), &[NodeId(1)]), Err(DivisorError::NotEffective));
    }

    #[test]
    fn scripts() {
        let g = MultiGraph::cycle(4);
        let d = Divisor::new(vec![3, -1, 0, 2]);
        assert_eq!(apply_script(&g, &d, &FiringScript::zero(4)).unwrap(), d);
        assert_eq!(apply_script(&g, &d, &FiringScript::new(vec![1; 4])).unwrap(), d);
        assert_eq!(
            apply_script(&k2(), &Divisor::new(vec![2, 0]), &FiringScript::new(vec![1, 0])).unwrap(),
            Divisor::new(vec![1, 1])
        );
        let x = FiringScript::new(vec![4, -2, 7, 1]);
        assert_eq!(apply_script(&g, &d, &x).unwrap().degree(), d.degree());
    }

    #[test]
    fn set_firing_matches_indicator_script() {
        let g = MultiGraph::from_edges(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 3), (0, 3, 1)]).unwrap();
        let d = Divisor::new(vec![3, 2, 1, 4]);
        let set = [NodeId(0), NodeId(1)];
        assert_eq!(
            fire_set(&g, &d, &set).unwrap(),
            apply_script(&g, &d, &FiringScript::indicator(4, &set)).unwrap()
        );
    }

    #[test]
    fn literals() {
        let g = MultiGraph::parse("node a\nnode b\nnode c\n").unwrap();
        assert_eq!(Divisor::parse_literal("1,0,2", &g).unwrap(), Divisor::new(vec![1, 0, 2]));
        assert_eq!(Divisor::parse_literal("c:2, a:1", &g).unwrap(), Divisor::new(vec![1, 0, 2]));
        assert_eq!(Divisor::parse_literal("\u{2212}1,0,0", &g).unwrap(), Divisor::new(vec![-1, 0, 0]));
        assert!(matches!(Divisor::parse_literal("1,0", &g), Err(DivisorError::LengthMismatch { .. })));
        assert!(matches!(Divisor::parse_literal("x:1", &g), Err(DivisorError::Literal(_))));
        assert!(matches!(Divisor::parse_literal("1,b,0", &g), Err(DivisorError::Literal(_))));
        assert!(matches!(Divisor::parse_literal("a:1,a:2", &g), Err(DivisorError::Literal(_))));
        let d = Divisor::new(vec![1, 0, 2]);
        assert_eq!(Divisor::parse_literal(&d.to_named(&g), &g).unwrap(), d);
        let r = d.report();
        assert_eq!((r.degree, r.effective), (3, true));
    }
}
