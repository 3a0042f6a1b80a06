//! Certifies non-abelian mod-n images from traces of Frobenius alone.

use divfield::elliptic::WeierstrassCurve;
use divfield::frobenius::{certify_fingerprint, fingerprint, Certificate, DEFAULT_PRIME_BOUND};
use std::time::Instant;

fn main() {
    let cases = [
        ("11a1", [0, -1, 1, -10, -20], 7),
        ("y^2 = x^3 + x", [0, 0, 0, 1, 0], 8),
        ("14a1", [1, 0, 1, 4, -6], 9),
        ("11a1", [0, -1, 1, -10, -20], 5),
    ];
    for (name, a, n) in cases {
        let e = WeierstrassCurve::from_ints(a).unwrap();
        let t = Instant::now();
        let fp = fingerprint(&e, n, DEFAULT_PRIME_BOUND);
        let cert = certify_fingerprint(&fp).unwrap();
        println!(
            "{name} mod {n}: {} (tr, det) pairs, {} lifted  ({:.2}s)",
            fp.pairs.len(),
            fp.lifted.len(),
            t.elapsed().as_secs_f64()
        );
        match cert {
            Certificate::CertifiedNonAbelian { witnesses } => {
                println!("  non-abelian: all {} abelian candidates ruled out", witnesses.len());
                for (c, d) in witnesses.iter().take(3) {
                    println!("    {} (order {}) misses {d:?}", c.structure, c.order);
                }
            }
            Certificate::Inconclusive { survivors, matching } => {
                let names: Vec<&str> = matching.iter().map(|c| c.structure.as_str()).collect();
                println!("  inconclusive: {} candidates survive, exact matches {names:?}", survivors.len());
            }
        }
    }
}
