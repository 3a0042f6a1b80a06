//! Verifies every catalogued family on deterministic parameter samples.
//!
//! `cargo run --release --example family_claims -- 25 X58i X8d` limits the run to the
//! listed families; with no ids all families are checked.

use divfield::families::{catalog, family, verify_family_claims};
use std::time::Instant;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map(|s| s.parse().expect("sample count")).unwrap_or(10);
    let ids: Vec<String> = args.collect();
    let ids: Vec<&str> = if ids.is_empty() {
        catalog().iter().map(|f| f.id).collect()
    } else {
        ids.iter().map(|s| family(s).expect("known family").id).collect()
    };
    for id in ids {
        let t = Instant::now();
        let samples = family(id).unwrap().samples(count);
        let r = verify_family_claims(id, &samples);
        let status = if r.passed() { "ok" } else { "FAILED" };
        println!("{id:<16} {:>4} checks  {status:<6} {:.2}s", r.cases, t.elapsed().as_secs_f64());
        for c in r.counterexamples.iter().take(6) {
            println!("    {c}");
        }
    }
}
