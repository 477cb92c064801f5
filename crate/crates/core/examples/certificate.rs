//! Positive-rank certificates on the gadget from independent sets.
//!
//! cargo run --release --example certificate

use chipfire::oracles::alpha_bruteforce;
use chipfire::reduction::{build_gadget, certificate_divisor, verify_certificate, CertificateRecord};
use chipfire::MultiGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = MultiGraph::complete(4);
    let gadget = build_gadget(&g);
    let (alpha, set) = alpha_bruteforce(&g)?;
    let cert = certificate_divisor(&gadget, &set)?;
    let report = verify_certificate(&gadget, &cert)?;
    println!("K4: alpha = {alpha}, certificate degree {}", cert.degree());
    println!("schedule steps effective: {:?}", report.schedule_effective);
    println!("positive rank confirmed: {}", report.positive_rank_confirmed);
    println!("{}", serde_json::to_string_pretty(&CertificateRecord::new(&gadget, &cert))?);

    // A non-independent set is rejected.
    let ab = [g.node_by_name("v0").unwrap(), g.node_by_name("v1").unwrap()];
    println!("{{v0, v1}}: {}", certificate_divisor(&gadget, &ab).unwrap_err());
    Ok(())
}
