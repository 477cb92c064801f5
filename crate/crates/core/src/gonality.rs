//! Exact divisorial gonality.
//!
//! Every positive-rank effective divisor is equivalent to its `q`-reduced form,
//! which keeps the degree and carries at least one chip on `q`. So for each
//! degree `d = 1, 2, ...` it suffices to test the `q`-reduced effective divisors
//! of degree `d` with `D(q) >= 1`, i.e. superstable configurations on `V \ {q}`
//! of total at most `d - 1` with the remaining chips on `q`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds;
use crate::divisor::{positive_rank_unchecked, Divisor};
use crate::graph::{GraphError, MultiGraph, NodeId};

/// Candidates are generated in canonical order and tested in batches of this size.
const BATCH: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GonalityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no positive-rank divisor of degree <= {max_degree}")]
    SearchCapped { max_degree: u64 },
    #[error("base point {0} is not a node of the graph")]
    BadBasePoint(NodeId),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub base_point: NodeId,
    /// Defaults to `|V|`, which always suffices.
    pub max_degree: Option<u64>,
    pub workers: usize,
    /// Start at the ceiling of the spectral lower bound instead of 1.
    pub spectral_pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            base_point: NodeId(0),
            max_degree: None,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            spectral_pruning: false,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        SearchConfig { workers, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GonalityResult {
    pub gonality: u64,
    pub witness: Divisor,
    /// Candidates tested, in canonical order, up to and including the witness.
    pub candidates_examined: u64,
    pub degree_schedule: Vec<u64>,
}

/// Minimum degree of a positive-rank divisor, with a witness.
pub fn gonality(g: &MultiGraph, cfg: &SearchConfig) -> Result<GonalityResult, GonalityError> {
    g.require_connected()?;
    let n = g.node_count();
    let q = cfg.base_point;
    if q.0 >= n {
        return Err(GonalityError::BadBasePoint(q));
    }
    let max_degree = cfg.max_degree.unwrap_or(n as u64);
    let mut start = 1u64;
    if cfg.spectral_pruning {
        if let Ok(lower) = bounds::spectral_lower_bound(g) {
            start = start.max((lower - 1e-9).ceil() as u64);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| GonalityError::Pool(e.to_string()))?;
    let mut examined = 0u64;
    let mut schedule = Vec::new();
    for d in start..=max_degree {
        schedule.push(d);
        let (found, count) = pool.install(|| search_degree_counted(g, q, d));
        examined += count;
        if let Some(witness) = found {
            return Ok(GonalityResult { gonality: d, witness, candidates_examined: examined, degree_schedule: schedule });
        }
    }
    Err(GonalityError::SearchCapped { max_degree })
}

/// First candidate of degree `d` (in canonical order) with positive rank. The
/// answer does not depend on `workers`.
pub fn search_degree(g: &MultiGraph, q: NodeId, d: u64, workers: usize) -> Result<Option<Divisor>, GonalityError> {
    g.require_connected()?;
    if q.0 >= g.node_count() {
        return Err(GonalityError::BadBasePoint(q));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| GonalityError::Pool(e.to_string()))?;
    Ok(pool.install(|| search_degree_counted(g, q, d)).0)
}

fn search_degree_counted(g: &MultiGraph, q: NodeId, d: u64) -> (Option<Divisor>, u64) {
    let mut candidates = enumerate_reduced_candidates(g, q, d);
    let mut examined = 0u64;
    loop {
        let batch: Vec<Divisor> = candidates.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return (None, examined);
        }
        match batch.par_iter().position_first(|c| positive_rank_unchecked(g, c)) {
            Some(i) => return (Some(batch[i].clone()), examined + i as u64 + 1),
            None => examined += batch.len() as u64,
        }
    }
}

/// Streams the `q`-reduced effective divisors of degree `d` with at least one
/// chip on `q`, ordered lexicographically by their chips off `q`.
pub fn enumerate_reduced_candidates(g: &MultiGraph, q: NodeId, d: u64) -> ReducedCandidates<'_> {
    let order: Vec<usize> = (0..g.node_count()).filter(|&v| v != q.0).collect();
    ReducedCandidates {
        graph: g,
        q: q.0,
        chips: vec![0; g.node_count()],
        order,
        budget: d.saturating_sub(1) as i64,
        degree: d as i64,
        depth: 0,
        used: 0,
        phase: if d == 0 { Phase::Done } else { Phase::Descend },
        assigned: vec![false; g.node_count()],
        heat: vec![0; g.node_count()],
        stack: Vec::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Descend,
    Advance,
    Done,
}

/// Depth-first generator of superstable configurations. A prefix is abandoned
/// as soon as its assigned nodes contain a set that could fire no matter how the
/// remaining nodes are filled in; adding chips never repairs that, so the whole
/// branch to the right is skipped too.
#[derive(Debug, Clone)]
pub struct ReducedCandidates<'g> {
    graph: &'g MultiGraph,
    q: usize,
    order: Vec<usize>,
    chips: Vec<i64>,
    budget: i64,
    degree: i64,
    depth: usize,
    used: i64,
    phase: Phase,
    assigned: Vec<bool>,
    heat: Vec<u64>,
    stack: Vec<usize>,
}

impl ReducedCandidates<'_> {
    /// Dhar burn with `q` and every unassigned node already on fire.
    fn prefix_is_superstable(&mut self) -> bool {
        let g = self.graph;
        self.assigned.fill(false);
        for &v in &self.order[..self.depth] {
            self.assigned[v] = true;
        }
        self.heat.fill(0);
        self.stack.clear();
        let mut unburnt = self.depth;
        for v in 0..self.chips.len() {
            if !self.assigned[v] {
                self.stack.push(v);
            }
        }
        while let Some(a) = self.stack.pop() {
            for &(b, m) in g.neighbors(NodeId(a)) {
                if !self.assigned[b] {
                    continue;
                }
                self.heat[b] += m;
                if self.heat[b] as i64 > self.chips[b] {
                    self.assigned[b] = false;
                    unburnt -= 1;
                    self.stack.push(b);
                }
            }
        }
        unburnt == 0
    }

    fn emit(&self) -> Divisor {
        let mut values = self.chips.clone();
        values[self.q] = self.degree - self.used;
        Divisor::new(values)
    }
}

impl Iterator for ReducedCandidates<'_> {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        loop {
            match self.phase {
                Phase::Done => return None,
                Phase::Descend => {
                    let mut dead_end = false;
                    while self.depth < self.order.len() {
                        self.chips[self.order[self.depth]] = 0;
                        self.depth += 1;
                        if !self.prefix_is_superstable() {
                            self.depth -= 1;
                            dead_end = true;
                            break;
                        }
                    }
                    self.phase = Phase::Advance;
                    if !dead_end {
                        return Some(self.emit());
                    }
                }
                Phase::Advance => loop {
                    if self.depth == 0 {
                        self.phase = Phase::Done;
                        break;
                    }
                    let v = self.order[self.depth - 1];
                    if self.used < self.budget && ((self.chips[v] + 1) as u64) < self.graph.degree(NodeId(v)) {
                        self.chips[v] += 1;
                        self.used += 1;
                        if self.prefix_is_superstable() {
                            self.phase = Phase::Descend;
                            break;
                        }
                    }
                    self.used -= self.chips[v];
                    self.chips[v] = 0;
                    self.depth -= 1;
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::reduce;

    fn d(v: &[i64]) -> Divisor {
        Divisor::new(v.to_vec())
    }

    #[test]
    fn candidates_on_small_graphs() {
        let k2 = MultiGraph::complete(2);
        assert_eq!(enumerate_reduced_candidates(&k2, NodeId(0), 1).collect::<Vec<_>>(), vec![d(&[1, 0])]);
        assert_eq!(enumerate_reduced_candidates(&k2, NodeId(0), 2).collect::<Vec<_>>(), vec![d(&[2, 0])]);
        let k1 = MultiGraph::edgeless(1);
        assert_eq!(enumerate_reduced_candidates(&k1, NodeId(0), 1).collect::<Vec<_>>(), vec![d(&[1])]);
        // C3 at q = 0 with degree 2: superstables of total <= 1.
        let c3 = MultiGraph::cycle(3);
        assert_eq!(
            enumerate_reduced_candidates(&c3, NodeId(0), 2).collect::<Vec<_>>(),
            vec![d(&[2, 0, 0]), d(&[1, 0, 1]), d(&[1, 1, 0])]
        );
    }

    #[test]
    fn candidates_are_reduced_and_distinct() {
        let g = MultiGraph::from_edges(5, &[(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 4, 1), (0, 4, 1), (1, 3, 1)]).unwrap();
        for q in g.nodes() {
            for deg in 1..6 {
                let all: Vec<_> = enumerate_reduced_candidates(&g, q, deg).collect();
                assert!(all.windows(2).all(|w| w[0] != w[1]));
                for c in &all {
                    assert_eq!(c.degree(), deg as i64);
                    assert!(c[q] >= 1);
                    assert_eq!(&reduce(&g, c, q).unwrap().reduced, c);
                }
            }
        }
    }

    #[test]
    fn gonality_examples() {
        let r = gonality(&MultiGraph::complete(2), &SearchConfig::with_workers(1)).unwrap();
        assert_eq!((r.gonality, r.witness.clone()), (1, d(&[1, 0])));
        assert_eq!(gonality(&MultiGraph::cycle(3), &SearchConfig::with_workers(2)).unwrap().gonality, 2);
        assert_eq!(gonality(&MultiGraph::edgeless(1), &SearchConfig::default()).unwrap().gonality, 1);
        assert_eq!(gonality(&MultiGraph::complete(4), &SearchConfig::default()).unwrap().gonality, 3);
        assert!(matches!(
            gonality(&MultiGraph::edgeless(2), &SearchConfig::default()),
            Err(GonalityError::Graph(GraphError::Disconnected))
        ));
        let capped = SearchConfig { max_degree: Some(1), ..SearchConfig::default() };
        assert_eq!(gonality(&MultiGraph::cycle(3), &capped), Err(GonalityError::SearchCapped { max_degree: 1 }));
    }

    #[test]
    fn search_degree_examples() {
        let c3 = MultiGraph::cycle(3);
        assert_eq!(search_degree(&MultiGraph::complete(2), NodeId(0), 1, 1).unwrap(), Some(d(&[1, 0])));
        assert_eq!(search_degree(&c3, NodeId(0), 1, 4).unwrap(), None);
        let w = search_degree(&c3, NodeId(0), 2, 4).unwrap().unwrap();
        assert_eq!(w.degree(), 2);
        assert!(crate::divisor::positive_rank(&c3, &w).unwrap());
    }

    #[test]
    fn worker_count_does_not_change_answer() {
        let g = MultiGraph::from_edges(6, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 2), (5, 0, 1), (1, 4, 1)])
            .unwrap();
        let one = gonality(&g, &SearchConfig::with_workers(1)).unwrap();
        let four = gonality(&g, &SearchConfig::with_workers(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn spectral_pruning_keeps_answer() {
        let g = MultiGraph::complete(5);
        let plain = gonality(&g, &SearchConfig::default()).unwrap();
        let pruned = gonality(&g, &SearchConfig { spectral_pruning: true, ..SearchConfig::default() }).unwrap();
        assert_eq!(plain.gonality, pruned.gonality);
    }
}
