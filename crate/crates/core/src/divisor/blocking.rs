//! The relation `u ≡_D v` ("every legal script fires `u` and `v` equally often"),
//! `D`-blocking edges, and the chip counts they conserve.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{Divisor, DivisorError};
use crate::graph::{MultiGraph, NodeId};

/// Default cap on the size of an explored effective class.
pub const DEFAULT_CLASS_LIMIT: usize = 1_000_000;

/// Exact mode enumerates all `2^n` subsets per class member.
pub const EXACT_NODE_LIMIT: usize = 20;

/// Partition of the nodes under `≡_D` and the edge bundles inside its cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceClasses {
    pub cells: Vec<Vec<NodeId>>,
    pub blocking_edges: Vec<(NodeId, NodeId)>,
    #[serde(skip)]
    cell_of: Vec<usize>,
}

impl EquivalenceClasses {
    /// Builds the partition from arbitrary per-node labels. Cells are ordered by
    /// their smallest node.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(g: &MultiGraph, labels: &[L]) -> Self {
        let mut renumber: HashMap<L, usize> = HashMap::new();
        let mut cells: Vec<Vec<NodeId>> = Vec::new();
        let mut cell_of = vec![0; labels.len()];
        for (v, label) in labels.iter().enumerate() {
            let next = renumber.len();
            let id = *renumber.entry(*label).or_insert(next);
            if id == cells.len() {
                cells.push(vec![]);
            }
            cells[id].push(NodeId(v));
            cell_of[v] = id;
        }
        let blocking_edges = g.edges().filter(|(u, v, _)| cell_of[u.0] == cell_of[v.0]).map(|(u, v, _)| (u, v)).collect();
        EquivalenceClasses { cells, blocking_edges, cell_of }
    }

    pub fn same_cell(&self, u: NodeId, v: NodeId) -> bool {
        self.cell_of[u.0] == self.cell_of[v.0]
    }

    pub fn cell_of(&self, v: NodeId) -> usize {
        self.cell_of[v.0]
    }
}

/// [`equivalence_classes_with_limit`] with [`DEFAULT_CLASS_LIMIT`].
pub fn equivalence_classes(g: &MultiGraph, d: &Divisor) -> Result<EquivalenceClasses, DivisorError> {
    equivalence_classes_with_limit(g, d, DEFAULT_CLASS_LIMIT)
}

/// Exact `≡_D` by exploring every effective divisor equivalent to `d` and
/// every set that can legally fire from one of them.
pub fn equivalence_classes_with_limit(
    g: &MultiGraph,
    d: &Divisor,
    limit: usize,
) -> Result<EquivalenceClasses, DivisorError> {
    d.check_len(g)?;
    if !d.is_effective() {
        return Err(DivisorError::NotEffective);
    }
    let n = g.node_count();
    if n > EXACT_NODE_LIMIT {
        return Err(DivisorError::TooManyNodes { nodes: n, limit: EXACT_NODE_LIMIT });
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut seen: HashSet<Vec<i64>> = HashSet::from([d.values().to_vec()]);
    let mut queue = VecDeque::from([d.values().to_vec()]);
    let mut fireable: HashSet<u32> = HashSet::new();
    let mut mask = vec![false; n];
    while let Some(member) = queue.pop_front() {
        for bits in 1..full {
            for (v, m) in mask.iter_mut().enumerate() {
                *m = bits >> v & 1 == 1;
            }
            let legal = (0..n).all(|v| !mask[v] || member[v] as u64 >= g.out_degree(v, &mask));
            if !legal {
                continue;
            }
            fireable.insert(bits);
            let mut next = member.clone();
            super::fire_mask(g, &mut next, &mask, 1);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(DivisorError::ClassTooLarge { limit });
                }
                queue.push_back(next);
            }
        }
    }
    // Two nodes are equivalent iff no fireable set separates them.
    let mut sets: Vec<u32> = fireable.into_iter().collect();
    sets.sort_unstable();
    let labels: Vec<Vec<bool>> = (0..n).map(|v| sets.iter().map(|s| s >> v & 1 == 1).collect()).collect();
    let refs: Vec<&Vec<bool>> = labels.iter().collect();
    Ok(EquivalenceClasses::from_labels(g, &refs))
}

/// Sufficient test for `u ≡_D v`: every `u`-`v` cut has more than `deg(D)` edges,
/// so no legal firing can separate them. `false` means "undecided".
pub fn equivalent_by_cut(g: &MultiGraph, d: &Divisor, u: NodeId, v: NodeId) -> Result<bool, DivisorError> {
    d.check_len(g)?;
    let cut = g.min_cut(u, v)?;
    Ok(cut.size as i64 > d.degree())
}

/// Chips on one component of the graph with the blocking edges removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentChips {
    pub nodes: Vec<NodeId>,
    pub chips: i64,
}

/// Chip totals per component of `(V, E \ F)`, `F` the blocking edges. These are
/// the same for every effective divisor equivalent to `d`.
pub fn component_chip_counts(g: &MultiGraph, d: &Divisor, classes: &EquivalenceClasses) -> Vec<ComponentChips> {
    g.connected_components(&classes.blocking_edges)
        .into_iter()
        .map(|nodes| {
            let chips = nodes.iter().map(|&v| d[v]).sum();
            ComponentChips { nodes, chips }
        })
        .collect()
}
