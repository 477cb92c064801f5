//! Cross-checks the fast solver against brute force on every connected
//! multigraph with three nodes and multiplicity at most 2.
//!
//! cargo run --release --example oracle_check

use chipfire::divisor::{effective_equivalent, positive_rank, rank};
use chipfire::generate::all_connected_multigraphs;
use chipfire::gonality::{gonality, SearchConfig};
use chipfire::oracles::{gonality_bruteforce, positive_rank_bruteforce, EffectivityOracle};
use chipfire::util::Compositions;
use chipfire::Divisor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SearchConfig::with_workers(1);
    let (mut graphs, mut divisors) = (0, 0);
    for g in all_connected_multigraphs(3, 2) {
        graphs += 1;
        assert_eq!(gonality(&g, &cfg)?.gonality, gonality_bruteforce(&g)?);
        let mut oracle = EffectivityOracle::new(&g)?;
        for deg in 0..=3 {
            for chips in Compositions::new(3, deg) {
                let d = Divisor::new(chips.iter().map(|&c| c as i64).collect());
                assert_eq!(rank(&g, &d)?, oracle.rank(&d)?);
                assert_eq!(positive_rank(&g, &d)?, positive_rank_bruteforce(&g, &d)?);
                // Shift one chip into debt to exercise non-effective inputs.
                let mut shifted = d.clone();
                shifted.add(chipfire::NodeId(0), -2);
                assert_eq!(effective_equivalent(&g, &shifted)?, oracle.effective_equivalent(&shifted)?);
                divisors += 1;
            }
        }
    }
    println!("{graphs} graphs, {divisors} divisors: solver and oracles agree");
    Ok(())
}
