//! Reduction from maximum independent set to gonality.
//!
//! For a loop-free multigraph `G = (V, E)` the gadget `Ĝ` has a hub `T`, a
//! triple `v, v', T_v` per node and a pair `e_u, e_v` per edge `e = uv`, with
//! `M = 3|V| + 2|E| + 2`:
//!
//! | edge bundle      | multiplicity |
//! |------------------|--------------|
//! | `e_u - e_v`      | 1            |
//! | `u - e_u`        | M            |
//! | `e_v - v`        | M            |
//! | `v' - T_v`       | 3            |
//! | `v - v'`         | M            |
//! | `T_v - T`        | M            |
//!
//! and `dgon(Ĝ) = 4|V| + |E| + 1 - α(G)`. An independent set `S` yields an
//! explicit positive-rank divisor of degree `4|V| + |E| + 1 - |S|` together
//! with a firing schedule showing every node can be reached by a chip.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::divisor::{self, apply_script, Divisor, DivisorError, DivisorReport, FiringScript};
use crate::graph::{GraphBuilder, MultiGraph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("set is not independent: edge {0}-{1} has both ends in it")]
    NotIndependent(String, String),
    #[error("node {0} is not a node of the base graph")]
    UnknownNode(NodeId),
    #[error("firing step {0} of the certificate schedule leaves a node in debt")]
    ScheduleBroken(usize),
    #[error("certificate divisor does not have positive rank")]
    RankRefuted,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// What a node of `Ĝ` stands for in `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Hub,
    Original(NodeId),
    Prime(NodeId),
    Tee(NodeId),
    /// The end of edge number `edge` of `G` that sits next to `endpoint`.
    HalfEdge { edge: usize, endpoint: NodeId },
}

/// One (unit) edge of `G` and its two half-edge nodes in `Ĝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GadgetEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub at_u: NodeId,
    pub at_v: NodeId,
}

#[derive(Debug, Clone)]
pub struct Gadget {
    base: MultiGraph,
    ghat: MultiGraph,
    m: u64,
    roles: Vec<Role>,
    original: Vec<NodeId>,
    prime: Vec<NodeId>,
    tee: Vec<NodeId>,
    edges: Vec<GadgetEdge>,
}

impl Gadget {
    pub const HUB: NodeId = NodeId(0);

    pub fn graph(&self) -> &MultiGraph {
        &self.ghat
    }

    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    /// The bundle size `M = 3|V| + 2|E| + 2`.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn role(&self, w: NodeId) -> Role {
        self.roles[w.0]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn original(&self, v: NodeId) -> NodeId {
        self.original[v.0]
    }

    pub fn prime(&self, v: NodeId) -> NodeId {
        self.prime[v.0]
    }

    pub fn tee(&self, v: NodeId) -> NodeId {
        self.tee[v.0]
    }

    /// Unit edges of `G` in lexicographic order, parallel copies consecutive.
    pub fn edges(&self) -> &[GadgetEdge] {
        &self.edges
    }

    pub fn describe_role(&self, w: NodeId) -> String {
        let name = |v: NodeId| self.base.name(v).to_string();
        match self.roles[w.0] {
            Role::Hub => "hub".into(),
            Role::Original(v) => format!("original({})", name(v)),
            Role::Prime(v) => format!("prime({})", name(v)),
            Role::Tee(v) => format!("tee({})", name(v)),
            Role::HalfEdge { edge, endpoint } => format!("half_edge(e#{edge}, {})", name(endpoint)),
        }
    }

    /// `M`-fold bundles as node pairs of `Ĝ`.
    pub fn heavy_bundles(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for v in self.base.nodes() {
            out.push((self.original(v), self.prime(v)));
            out.push((self.tee(v), Self::HUB));
        }
        for e in &self.edges {
            out.push((e.u_original(self), e.at_u));
            out.push((e.at_v, e.v_original(self)));
        }
        out
    }
}

impl GadgetEdge {
    fn u_original(&self, g: &Gadget) -> NodeId {
        g.original(self.u)
    }

    fn v_original(&self, g: &Gadget) -> NodeId {
        g.original(self.v)
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# gadget of a graph with {} nodes and {} edges", self.base.node_count(), self.base.edge_count())?;
        writeln!(f, "# M = {}", self.m)?;
        writeln!(f, "# nodes = {}", self.ghat.node_count())?;
        write!(f, "{}", self.ghat)
    }
}

/// Builds `Ĝ` from `G`. Node order: `T`, then `(v, v', T_v)` for each node of
/// `G`, then `(e_u, e_v)` for each unit edge. Connectivity of `G` is not needed.
pub fn build_gadget(g: &MultiGraph) -> Gadget {
    let n = g.node_count();
    let unit_edges: Vec<(NodeId, NodeId)> =
        g.edges().flat_map(|(u, v, m)| std::iter::repeat_n((u, v), m as usize)).collect();
    let m = 3 * n as u64 + 2 * unit_edges.len() as u64 + 2;

    let mut names = NameMint::default();
    let mut b = GraphBuilder::new();
    let mut roles = vec![Role::Hub];
    let hub = b.add_node(names.mint("T".into())).expect("fresh name");
    debug_assert_eq!(hub, Gadget::HUB);
    let (mut original, mut prime, mut tee) = (vec![], vec![], vec![]);
    for v in g.nodes() {
        let name = g.name(v);
        original.push(b.add_node(names.mint(name.to_string())).expect("fresh name"));
        prime.push(b.add_node(names.mint(format!("{name}'"))).expect("fresh name"));
        tee.push(b.add_node(names.mint(format!("T{name}"))).expect("fresh name"));
        roles.extend([Role::Original(v), Role::Prime(v), Role::Tee(v)]);
    }
    let mut edges = Vec::with_capacity(unit_edges.len());
    for (i, &(u, v)) in unit_edges.iter().enumerate() {
        let at_u = b.add_node(names.mint(format!("e#{i}@{}", g.name(u)))).expect("fresh name");
        let at_v = b.add_node(names.mint(format!("e#{i}@{}", g.name(v)))).expect("fresh name");
        roles.push(Role::HalfEdge { edge: i, endpoint: u });
        roles.push(Role::HalfEdge { edge: i, endpoint: v });
        edges.push(GadgetEdge { u, v, at_u, at_v });
    }

    let add = |b: &mut GraphBuilder, x: NodeId, y: NodeId, k: u64| b.add_edges(x, y, k).expect("gadget edge");
    for v in g.nodes() {
        add(&mut b, prime[v.0], tee[v.0], 3);
        add(&mut b, original[v.0], prime[v.0], m);
        add(&mut b, tee[v.0], hub, m);
    }
    for e in &edges {
        add(&mut b, e.at_u, e.at_v, 1);
        add(&mut b, original[e.u.0], e.at_u, m);
        add(&mut b, e.at_v, original[e.v.0], m);
    }
    Gadget { base: g.clone(), ghat: b.build(), m, roles, original, prime, tee, edges }
}

/// Hands out unique node names, suffixing `~` on collisions.
#[derive(Default)]
struct NameMint(HashSet<String>);

impl NameMint {
    fn mint(&mut self, mut name: String) -> String {
        while !self.0.insert(name.clone()) {
            name.push('~');
        }
        name
    }
}

/// Positive-rank divisor on `Ĝ` built from an independent set of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub divisor: Divisor,
    pub independent_set: Vec<NodeId>,
    /// Per unit edge of `G` (same order as [`Gadget::edges`]): `(tail, head)`.
    pub orientation: Vec<(NodeId, NodeId)>,
    /// The singleton classes `U_1, ..., U_k` covering `V \ S`, in node order.
    pub singletons: Vec<NodeId>,
    /// `W_1, ..., W_k` as node sets of `Ĝ`.
    pub schedule: Vec<Vec<NodeId>>,
}

impl Certificate {
    pub fn degree(&self) -> i64 {
        self.divisor.degree()
    }
}

/// The degree `4|V| + |E| + 1 - |S|` of the certificate for a set of size `s`.
pub fn certificate_degree(g: &MultiGraph, s: usize) -> i64 {
    4 * g.node_count() as i64 + g.edge_count() as i64 + 1 - s as i64
}

/// Builds the certificate divisor for the independent set `set`.
///
/// `U_0 = S ∪ {T}` and every other node of `G` is its own class, ordered by
/// index. Each edge of `G` is oriented from the class that comes first. The
/// divisor puts one chip on `T` and on every `v`; `(v', T_v)` get `(1, 1)` for
/// `v ∈ S` and `(0, 3)` otherwise; each edge puts its chip on the tail side.
pub fn certificate_divisor(gadget: &Gadget, set: &[NodeId]) -> Result<Certificate, ReductionError> {
    let g = &gadget.base;
    let n = g.node_count();
    let mut in_set = vec![false; n];
    for &v in set {
        if v.0 >= n {
            return Err(ReductionError::UnknownNode(v));
        }
        in_set[v.0] = true;
    }
    if let Some((u, v, _)) = g.edges().find(|(u, v, _)| in_set[u.0] && in_set[v.0]) {
        return Err(ReductionError::NotIndependent(g.name(u).into(), g.name(v).into()));
    }
    let mut independent_set: Vec<NodeId> = g.nodes().filter(|v| in_set[v.0]).collect();
    independent_set.dedup();
    let singletons: Vec<NodeId> = g.nodes().filter(|v| !in_set[v.0]).collect();
    // Class index: 0 for S, i for the i-th singleton.
    let mut class = vec![0usize; n];
    for (i, v) in singletons.iter().enumerate() {
        class[v.0] = i + 1;
    }

    let mut d = Divisor::zeros(gadget.ghat.node_count());
    d.set(Gadget::HUB, 1);
    for v in g.nodes() {
        d.set(gadget.original(v), 1);
        let (p, t) = if in_set[v.0] { (1, 1) } else { (0, 3) };
        d.set(gadget.prime(v), p);
        d.set(gadget.tee(v), t);
    }
    let mut orientation = Vec::with_capacity(gadget.edges.len());
    for e in &gadget.edges {
        let (tail, head) = if class[e.u.0] < class[e.v.0] { (e.u, e.v) } else { (e.v, e.u) };
        debug_assert_ne!(class[e.u.0], class[e.v.0]);
        let (tail_node, head_node) = if tail == e.u { (e.at_u, e.at_v) } else { (e.at_v, e.at_u) };
        d.set(tail_node, 1);
        d.set(head_node, 0);
        orientation.push((tail, head));
    }

    // W_i = V_i ∪ {v' : v ∈ V_i} ∪ {e_u : u ∈ V_i}, with V_i = U_i ∪ ... ∪ U_k.
    let schedule = (0..singletons.len())
        .map(|i| {
            let tail_nodes = &singletons[i..];
            let mut w: Vec<NodeId> = Vec::new();
            for &v in tail_nodes {
                w.push(gadget.original(v));
                w.push(gadget.prime(v));
            }
            for e in &gadget.edges {
                if tail_nodes.contains(&e.u) {
                    w.push(e.at_u);
                }
                if tail_nodes.contains(&e.v) {
                    w.push(e.at_v);
                }
            }
            w.sort();
            w
        })
        .collect();

    let cert = Certificate { divisor: d, independent_set, orientation, singletons, schedule };
    debug_assert_eq!(cert.degree(), certificate_degree(g, cert.independent_set.len()));
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Step `i` (1-based in messages): `D + Q 1_{W_i}` is effective.
    pub schedule_effective: Vec<bool>,
    /// Step `i` puts a chip on `v'` for `v ∈ U_i` and on `e_v` for edges with head in `U_i`.
    pub schedule_delivers: Vec<bool>,
    /// Nodes holding a chip in `D` or in one of the scheduled divisors.
    pub covered_nodes: Vec<NodeId>,
    /// Independent check: reduction at every node leaves a chip there.
    pub reduction_confirms: bool,
    pub positive_rank_confirmed: bool,
}

/// Checks the firing schedule of `cert` and, independently, positive rank of
/// its divisor via reduction at every node of `Ĝ`.
pub fn verify_certificate(gadget: &Gadget, cert: &Certificate) -> Result<VerificationReport, ReductionError> {
    let ghat = &gadget.ghat;
    let nodes = ghat.node_count();
    cert.divisor.check_len(ghat)?;
    if !cert.divisor.is_effective() {
        return Err(DivisorError::NotEffective.into());
    }
    let mut covered: Vec<bool> = cert.divisor.values().iter().map(|&c| c > 0).collect();
    let mut schedule_effective = Vec::with_capacity(cert.schedule.len());
    let mut schedule_delivers = Vec::with_capacity(cert.schedule.len());
    for (i, w) in cert.schedule.iter().enumerate() {
        // D + Q 1_W == D - Q (-1_W)
        let mut x = vec![0i64; nodes];
        for v in w {
            x[v.0] = -1;
        }
        let moved = apply_script(ghat, &cert.divisor, &FiringScript::new(x))?;
        schedule_effective.push(moved.is_effective());
        let delivers = match cert.singletons.get(i) {
            Some(&u) => {
                moved[gadget.prime(u)] >= 1
                    && gadget
                        .edges
                        .iter()
                        .zip(&cert.orientation)
                        .filter(|(_, &(_, head))| head == u)
                        .all(|(e, _)| moved[if e.u == u { e.at_u } else { e.at_v }] >= 1)
            }
            None => false,
        };
        schedule_delivers.push(delivers);
        if moved.is_effective() {
            for (c, &chips) in covered.iter_mut().zip(moved.values()) {
                *c |= chips > 0;
            }
        }
    }
    let reduction_confirms = ghat.is_connected()
        && ghat.nodes().collect::<Vec<_>>().par_iter().all(|&v| {
            cert.divisor[v] >= 1 || divisor::reduce(ghat, &cert.divisor, v).map(|r| r.reduced[v] >= 1).unwrap_or(false)
        });
    if !reduction_confirms {
        return Err(ReductionError::RankRefuted);
    }
    if let Some(i) = schedule_effective.iter().position(|ok| !ok) {
        return Err(ReductionError::ScheduleBroken(i + 1));
    }
    let covered_nodes: Vec<NodeId> = (0..nodes).filter(|&v| covered[v]).map(NodeId).collect();
    let positive_rank_confirmed = covered_nodes.len() == nodes && schedule_delivers.iter().all(|&b| b);
    Ok(VerificationReport { schedule_effective, schedule_delivers, covered_nodes, reduction_confirms, positive_rank_confirmed })
}

/// Reads `α(G)` off the gonality of `Ĝ`: `α = 4|V| + |E| + 1 - dgon(Ĝ)`.
pub fn alpha_from_gonality(g: &MultiGraph, dgon_hat: u64) -> Result<u64, ReductionError> {
    let alpha = certificate_degree(g, 0) - dgon_hat as i64;
    let n = g.node_count() as i64;
    if alpha < 1 || alpha > n {
        return Err(ReductionError::InconsistentInput(format!(
            "gonality {dgon_hat} gives independence number {alpha}, outside [1, {n}]"
        )));
    }
    Ok(alpha as u64)
}

/// The chip count forced on a positive-rank divisor whose `≡_D` classes
/// restricted to `V ∪ {T}` are given: `hub_class` is the class of `T` minus
/// `T` itself and `others` the remaining classes. Returns
/// `|V| + 1 + 3|V| - |U_0| + |E| + |E[U_0]|` with `U_0 = hub_class`.
pub fn accounting_lower_bound(g: &MultiGraph, hub_class: &[NodeId], others: &[Vec<NodeId>]) -> Result<u64, ReductionError> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    for &v in hub_class.iter().chain(others.iter().flatten()) {
        if v.0 >= n {
            return Err(ReductionError::UnknownNode(v));
        }
        if std::mem::replace(&mut seen[v.0], true) {
            return Err(ReductionError::InconsistentInput(format!("node {} appears in two classes", g.name(v))));
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(ReductionError::InconsistentInput(format!("node {} is in no class", g.name(NodeId(v)))));
    }
    let u0 = hub_class.len() as u64;
    Ok(4 * n as u64 + 1 - u0 + g.edge_count() + g.induced_edge_count(hub_class))
}

/// Serialisable certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub independent_set: Vec<String>,
    pub divisor: DivisorReport,
    pub schedule: Vec<Vec<String>>,
    pub degree: i64,
    /// `4|V| + |E| + 1 - |S|`.
    pub formula_rhs: i64,
}

impl CertificateRecord {
    pub fn new(gadget: &Gadget, cert: &Certificate) -> Self {
        let base = &gadget.base;
        let ghat = &gadget.ghat;
        CertificateRecord {
            independent_set: cert.independent_set.iter().map(|&v| base.name(v).to_string()).collect(),
            divisor: cert.divisor.report(),
            schedule: cert.schedule.iter().map(|w| w.iter().map(|&v| ghat.name(v).to_string()).collect()).collect(),
            degree: cert.degree(),
            formula_rhs: certificate_degree(base, cert.independent_set.len()),
        }
    }
}
