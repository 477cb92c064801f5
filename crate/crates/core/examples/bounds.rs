//! Spectral lower bound and conjectured upper bound next to exact gonality.
//!
//! cargo run --release --example bounds

use chipfire::bounds::bounds_report;
use chipfire::gonality::{gonality, SearchConfig};
use chipfire::MultiGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<8} {:>9} {:>6} {:>5}", "graph", "spectral", "dgon", "conj");
    for (label, g) in [
        ("K5", MultiGraph::complete(5)),
        ("C8", MultiGraph::cycle(8)),
        ("P6", MultiGraph::path(6)),
        ("K3x2", MultiGraph::from_edges(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)])?),
    ] {
        let b = bounds_report(&g)?;
        let dgon = gonality(&g, &SearchConfig::default())?.gonality;
        println!(
            "{label:<8} {:>9.4} {dgon:>6} {:>5}",
            b.spectral_lower.unwrap_or(0.0),
            b.brill_noether_conjecture
        );
    }
    Ok(())
}
