//! Reduced divisors, linear equivalence and chains of set firings.
//!
//! cargo run --example reduce

use chipfire::divisor::{chain_decompose, equivalent, reduce};
use chipfire::{Divisor, MultiGraph, NodeId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = MultiGraph::parse(
        "# a square with one doubled side\n\
         node a\nnode b\nnode c\nnode d\n\
         edge a b 2\n\
         edge b c 1\n\
         edge c d 1\n\
         edge d a 1\n",
    )?;
    let d = Divisor::parse_literal("a:-2, b:3, c:1, d:0", &g)?;
    for q in g.nodes() {
        let r = reduce(&g, &d, q)?;
        println!("{}-reduced form of {}: {}", g.name(q), d.to_named(&g), r.reduced.to_named(&g));
    }

    let a = Divisor::new(vec![0, 3, 0, 0]);
    let b = reduce(&g, &a, NodeId(0))?.reduced;
    println!("{} ~ {}: {}", a, b, equivalent(&g, &a, &b)?);

    let chain = chain_decompose(&g, &a, &b)?;
    let mut current = a.clone();
    for (set, next) in chain.sets.iter().zip(&chain.intermediates) {
        let names: Vec<&str> = set.iter().map(|&v| g.name(v)).collect();
        println!("  {current} --fire {{{}}}--> {next}", names.join(","));
        current = next.clone();
    }
    Ok(())
}
