//! Loop-free multigraphs stored as a dense multiplicity matrix.
//!
//! Parallel edges are never materialised one by one: the gadget graphs used by
//! the hardness reduction carry bundles of several dozen parallel edges, and all
//! cut and firing arithmetic works directly on multiplicities.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Dense node index into a [`MultiGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: loop at node `{node}` is not allowed")]
    LoopRejected { line: usize, node: String },
    #[error("line {line}: unknown node `{name}`")]
    UnknownNode { line: usize, name: String },
    #[error("line {line}: edge multiplicity `{value}` must be an integer >= 1")]
    BadMultiplicity { line: usize, value: String },
    #[error("line {line}: node `{name}` declared twice")]
    DuplicateNode { line: usize, name: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("cut side must be a non-empty proper subset of the nodes")]
    DegenerateCut,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no nodes")]
    Empty,
}

/// A cut `E(U, V \ U)` together with its size counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub side: Vec<NodeId>,
    pub size: u64,
}

/// Connected multigraph without loops. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    names: Vec<String>,
    mult: Vec<u64>,
    adjacency: Vec<Vec<(usize, u64)>>,
    degrees: Vec<u64>,
}

/// Incremental constructor for [`MultiGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize, u64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node and returns its id. Names must be unique.
    pub fn add_node(&mut self, name: impl Into<String>) -> Result<NodeId, GraphError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(GraphError::DuplicateNode { line: 0, name });
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(NodeId(id))
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied().map(NodeId)
    }

    /// Adds `count` parallel edges between `u` and `v`.
    pub fn add_edges(&mut self, u: NodeId, v: NodeId, count: u64) -> Result<(), GraphError> {
        let n = self.names.len();
        for w in [u, v] {
            if w.0 >= n {
                return Err(GraphError::NodeOutOfRange(w.0));
            }
        }
        if u == v {
            return Err(GraphError::LoopRejected { line: 0, node: self.names[u.0].clone() });
        }
        if count == 0 {
            return Err(GraphError::BadMultiplicity { line: 0, value: "0".into() });
        }
        self.edges.push((u.0, v.0, count));
        Ok(())
    }

    pub fn build(self) -> MultiGraph {
        let n = self.names.len();
        let mut mult = vec![0u64; n * n];
        for (u, v, m) in self.edges {
            mult[u * n + v] += m;
            mult[v * n + u] += m;
        }
        MultiGraph::from_parts(self.names, mult)
    }
}

impl MultiGraph {
    fn from_parts(names: Vec<String>, mult: Vec<u64>) -> Self {
        let n = names.len();
        let adjacency: Vec<Vec<(usize, u64)>> = (0..n)
            .map(|u| (0..n).filter(|&v| mult[u * n + v] > 0).map(|v| (v, mult[u * n + v])).collect())
            .collect();
        let degrees = adjacency.iter().map(|row| row.iter().map(|&(_, m)| m).sum()).collect();
        MultiGraph { names, mult, adjacency, degrees }
    }

    /// Builds a graph on nodes named `v0, v1, ...` from `(u, v, multiplicity)` triples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.add_node(format!("v{i}"))?;
        }
        for &(u, v, m) in edges {
            b.add_edges(NodeId(u), NodeId(v), m)?;
        }
        Ok(b.build())
    }

    pub fn edgeless(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("edgeless graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        Self::from_edges(n, &edges).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three nodes");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        Self::from_edges(n, &edges).expect("cycle graph")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        Self::from_edges(n, &edges).expect("complete graph")
    }

    /// Two nodes joined by `m` parallel edges.
    pub fn banana(m: u64) -> Self {
        Self::from_edges(2, &[(0, 1, m)]).expect("banana graph")
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    #[inline]
    pub fn multiplicity(&self, u: NodeId, v: NodeId) -> u64 {
        self.mult[u.0 * self.node_count() + v.0]
    }

    /// Neighbours of `u` with the number of parallel edges to each.
    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[(usize, u64)] {
        &self.adjacency[u.0]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> u64 {
        self.degrees[u.0]
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// `|E|`, counting parallel edges.
    pub fn edge_count(&self) -> u64 {
        self.edges().map(|(_, _, m)| m).sum()
    }

    /// Edge bundles `(u, v, multiplicity)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        let n = self.node_count();
        (0..n).flat_map(move |u| {
            (u + 1..n).filter_map(move |v| {
                let m = self.mult[u * n + v];
                (m > 0).then_some((NodeId(u), NodeId(v), m))
            })
        })
    }

    /// `|E[U]|`: edges with both ends in `nodes`.
    pub fn induced_edge_count(&self, nodes: &[NodeId]) -> u64 {
        let mask = self.mask(nodes);
        self.edges().filter(|(u, v, _)| mask[u.0] && mask[v.0]).map(|(_, _, m)| m).sum()
    }

    /// The Laplacian `Q(G)`: degrees on the diagonal, minus the multiplicity elsewhere.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.node_count();
        (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        if u == v {
                            self.degrees[u] as i64
                        } else {
                            -(self.mult[u * n + v] as i64)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub(crate) fn mask(&self, nodes: &[NodeId]) -> Vec<bool> {
        let mut mask = vec![false; self.node_count()];
        for v in nodes {
            mask[v.0] = true;
        }
        mask
    }

    /// Number of edges from `u` to nodes outside `mask`.
    #[inline]
    pub(crate) fn out_degree(&self, u: usize, mask: &[bool]) -> u64 {
        self.adjacency[u].iter().filter(|&&(w, _)| !mask[w]).map(|&(_, m)| m).sum()
    }

    pub(crate) fn cut_size_mask(&self, mask: &[bool]) -> u64 {
        (0..self.node_count()).filter(|&u| mask[u]).map(|u| self.out_degree(u, mask)).sum()
    }

    /// `|E(U, V \ U)|` counted with multiplicity.
    pub fn cut_size(&self, side: &[NodeId]) -> Result<u64, GraphError> {
        for v in side {
            if v.0 >= self.node_count() {
                return Err(GraphError::NodeOutOfRange(v.0));
            }
        }
        let mask = self.mask(side);
        let inside = mask.iter().filter(|&&b| b).count();
        if inside == 0 || inside == self.node_count() {
            return Err(GraphError::DegenerateCut);
        }
        Ok(self.cut_size_mask(&mask))
    }

    /// Minimum `u`-`v` cut via Edmonds-Karp with capacities equal to multiplicities.
    /// The returned side is the set reachable from `u` in the final residual graph.
    pub fn min_cut(&self, u: NodeId, v: NodeId) -> Result<Cut, GraphError> {
        let n = self.node_count();
        if u.0 >= n || v.0 >= n {
            return Err(GraphError::NodeOutOfRange(u.0.max(v.0)));
        }
        if u == v {
            return Err(GraphError::DegenerateCut);
        }
        let mut residual: Vec<i64> = self.mult.iter().map(|&m| m as i64).collect();
        let mut flow = 0u64;
        let mut parent = vec![usize::MAX; n];
        loop {
            parent.fill(usize::MAX);
            parent[u.0] = u.0;
            let mut queue = VecDeque::from([u.0]);
            while let Some(a) = queue.pop_front() {
                if a == v.0 {
                    break;
                }
                for &(b, _) in &self.adjacency[a] {
                    if parent[b] == usize::MAX && residual[a * n + b] > 0 {
                        parent[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if parent[v.0] == usize::MAX {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut b = v.0;
            while b != u.0 {
                let a = parent[b];
                bottleneck = bottleneck.min(residual[a * n + b]);
                b = a;
            }
            let mut b = v.0;
            while b != u.0 {
                let a = parent[b];
                residual[a * n + b] -= bottleneck;
                residual[b * n + a] += bottleneck;
                b = a;
            }
            flow += bottleneck as u64;
        }
        let side: Vec<NodeId> = (0..n).filter(|&w| parent[w] != usize::MAX).map(NodeId).collect();
        debug_assert_eq!(self.cut_size_mask(&self.mask(&side)), flow);
        Ok(Cut { side, size: flow })
    }

    /// Components of `(V, E \ F)` where every edge bundle listed in `removed` is dropped
    /// entirely. Components are ordered by their smallest node.
    pub fn connected_components(&self, removed: &[(NodeId, NodeId)]) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut cut = vec![false; n * n];
        for &(a, b) in removed {
            cut[a.0 * n + b.0] = true;
            cut[b.0 * n + a.0] = true;
        }
        let mut label = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![];
            let mut stack = vec![start];
            label[start] = id;
            while let Some(a) = stack.pop() {
                members.push(NodeId(a));
                for &(b, _) in &self.adjacency[a] {
                    if label[b] == usize::MAX && !cut[a * n + b] {
                        label[b] = id;
                        stack.push(b);
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.connected_components(&[]).len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.node_count() == 0 {
            Err(GraphError::Empty)
        } else if !self.is_connected() {
            Err(GraphError::Disconnected)
        } else {
            Ok(())
        }
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable nodes.
    pub(crate) fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for &(b, _) in &self.adjacency[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # comment
    /// node a
    /// node b
    /// edge a b 2
    /// ```
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens.as_slice() {
                ["node", name] => {
                    builder.add_node(*name).map_err(|_| GraphError::DuplicateNode {
                        line,
                        name: name.to_string(),
                    })?;
                }
                ["edge", a, b, m] => {
                    if a == b {
                        return Err(GraphError::LoopRejected { line, node: a.to_string() });
                    }
                    let count: u64 = match m.parse::<i64>() {
                        Ok(c) if c >= 1 => c as u64,
                        _ => return Err(GraphError::BadMultiplicity { line, value: m.to_string() }),
                    };
                    let lookup = |name: &str| {
                        builder
                            .node(name)
                            .ok_or_else(|| GraphError::UnknownNode { line, name: name.to_string() })
                    };
                    let (u, v) = (lookup(a)?, lookup(b)?);
                    builder.add_edges(u, v, count)?;
                }
                _ => {
                    return Err(GraphError::Syntax {
                        line,
                        message: format!("expected `node <name>` or `edge <u> <v> <m>`, found `{trimmed}`"),
                    })
                }
            }
        }
        Ok(builder.build())
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.names {
            writeln!(f, "node {name}")?;
        }
        for (u, v, m) in self.edges() {
            writeln!(f, "edge {} {} {}", self.names[u.0], self.names[v.0], m)?;
        }
        Ok(())
    }
}
