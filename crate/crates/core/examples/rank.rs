//! Baker-Norine rank, checked against the brute-force oracle.
//!
//! cargo run --example rank

use chipfire::divisor::{positive_rank, rank};
use chipfire::oracles::rank_bruteforce;
use chipfire::{Divisor, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = MultiGraph::complete(4);
    // Genus 3, so the canonical divisor deg(v) - 2 has degree 4 and rank 2.
    let canonical = Divisor::new(k4.nodes().map(|v| k4.degree(v) as i64 - 2).collect());
    let cases = [
        Divisor::new(vec![1, 0, 0, 0]),
        Divisor::new(vec![1, 1, 1, 0]),
        Divisor::new(vec![2, 2, 0, -1]),
        canonical,
        Divisor::new(vec![3, 3, 0, 0]),
    ];
    for d in &cases {
        let r = rank(&k4, d)?;
        let o = rank_bruteforce(&k4, d)?;
        println!("rank {d} = {r} (oracle {o})");
        assert_eq!(r, o);
    }
    println!("positive rank of all-ones: {}", positive_rank(&k4, &Divisor::ones(4))?);
    Ok(())
}
