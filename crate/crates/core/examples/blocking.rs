//! Which nodes can trade chips under a divisor, and the edges that block them.
//!
//! cargo run --example blocking

use chipfire::divisor::{component_chip_counts, equivalence_classes, equivalent_by_cut};
use chipfire::{Divisor, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two triangles joined by a heavy bundle of 4 edges.
    let g = MultiGraph::parse(
        "node a\nnode b\nnode c\nnode x\nnode y\nnode z\n\
         edge a b 1\nedge b c 1\nedge c a 1\n\
         edge c x 4\n\
         edge x y 1\nedge y z 1\nedge z x 1\n",
    )?;
    let d = Divisor::parse_literal("a:1, b:1, y:1", &g)?;
    let classes = equivalence_classes(&g, &d)?;
    for cell in &classes.cells {
        let names: Vec<&str> = cell.iter().map(|&v| g.name(v)).collect();
        println!("class {{{}}}", names.join(", "));
    }
    let blocked: Vec<String> =
        classes.blocking_edges.iter().map(|&(u, v)| format!("{}-{}", g.name(u), g.name(v))).collect();
    println!("blocking edges: {}", blocked.join(" "));
    for c in component_chip_counts(&g, &d, &classes) {
        let names: Vec<&str> = c.nodes.iter().map(|&v| g.name(v)).collect();
        println!("component {{{}}} holds {} chips", names.join(", "), c.chips);
    }
    let (c, x) = (g.node_by_name("c").unwrap(), g.node_by_name("x").unwrap());
    // Four parallel edges outweigh the three chips, so c and x always fire together.
    println!("c and x forced together by the bundle: {}", equivalent_by_cut(&g, &d, c, x)?);
    Ok(())
}
