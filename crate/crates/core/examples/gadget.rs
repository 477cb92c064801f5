//! The independent-set gadget of a small graph, printed as a graph file.
//!
//! cargo run --example gadget

use chipfire::reduction::build_gadget;
use chipfire::MultiGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A triangle with a pendant node: 4 nodes, 4 edges.
    let g = MultiGraph::parse("node a\nnode b\nnode c\nnode d\nedge a b 1\nedge b c 1\nedge c a 1\nedge c d 1\n")?;
    let gadget = build_gadget(&g);
    let ghat = gadget.graph();
    eprintln!(
        "M = {}, {} nodes, {} edges in the gadget",
        gadget.m(),
        ghat.node_count(),
        ghat.edge_count()
    );
    for w in ghat.nodes() {
        eprintln!("  {:<8} {}", ghat.name(w), gadget.describe_role(w));
    }
    print!("{gadget}");
    Ok(())
}
