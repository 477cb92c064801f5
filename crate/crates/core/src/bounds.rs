//! Gonality bounds reported alongside exact results.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("a single node has no nonzero Laplacian eigenvalue")]
    TooSmall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub trivial_lower: u64,
    pub trivial_upper: u64,
    /// `|V| λ1 / (24 Δ)`; absent when it is undefined.
    pub spectral_lower: Option<f64>,
    pub spectral_lower_ceil: Option<u64>,
    /// `⌊(|E| - |V| + 4) / 2⌋`. Conjectural, never used for pruning.
    pub brill_noether_conjecture: i64,
    pub brill_noether_status: &'static str,
}

/// The smallest nonzero eigenvalue `λ1` of the Laplacian of a connected graph.
pub fn algebraic_connectivity(g: &MultiGraph) -> Result<f64, BoundsError> {
    let n = g.node_count();
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    if n < 2 {
        return Err(BoundsError::TooSmall);
    }
    let q = g.laplacian();
    let m = DMatrix::from_fn(n, n, |i, j| q[i][j] as f64);
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig[1])
}

/// Spectral lower bound `|V| λ1(Q) / (24 Δ)` on the gonality.
pub fn spectral_lower_bound(g: &MultiGraph) -> Result<f64, BoundsError> {
    let lambda = algebraic_connectivity(g)?;
    Ok(g.node_count() as f64 * lambda / (24.0 * g.max_degree() as f64))
}

/// `⌊(|E| - |V| + 4) / 2⌋`, the conjectured Brill-Noether upper bound.
pub fn conjectured_upper_bound(g: &MultiGraph) -> i64 {
    (g.edge_count() as i64 - g.node_count() as i64 + 4).div_euclid(2)
}

pub fn bounds_report(g: &MultiGraph) -> Result<BoundsReport, BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let spectral = spectral_lower_bound(g).ok();
    Ok(BoundsReport {
        trivial_lower: 1,
        trivial_upper: g.node_count() as u64,
        spectral_lower: spectral,
        spectral_lower_ceil: spectral.map(|x| (x - 1e-9).ceil().max(0.0) as u64),
        brill_noether_conjecture: conjectured_upper_bound(g),
        brill_noether_status: "conjectural",
    })
}
