//! Exact gonality of a few small graphs, with the witness divisor.
//!
//! cargo run --release --example gonality

use chipfire::gonality::{gonality, SearchConfig};
use chipfire::MultiGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("K4", MultiGraph::complete(4)),
        ("C6", MultiGraph::cycle(6)),
        ("P5", MultiGraph::path(5)),
        ("banana(3)", MultiGraph::banana(3)),
        ("paw", MultiGraph::parse("node a\nnode b\nnode c\nnode d\nedge a b 1\nedge b c 1\nedge c a 1\nedge c d 1\n")?),
    ];
    let cfg = SearchConfig::default();
    for (label, g) in &graphs {
        let r = gonality(g, &cfg)?;
        println!(
            "{label:<10} dgon = {}  witness {}  ({} candidates)",
            r.gonality,
            r.witness.to_named(g),
            r.candidates_examined
        );
    }
    Ok(())
}
