//! Exhaustive checks of the GL(2) structure lemmas, plus abelian image candidates per level.

use divfield::matgroups::{
    abelian_candidates, audit_borel_lemma, audit_diagonalizability, audit_mod_p2_diagonal, AuditReport,
};
use std::collections::BTreeMap;
use std::time::Instant;

fn show(r: AuditReport, secs: f64) {
    let status = if r.passed() { "ok" } else { "FAILED" };
    println!("{:<20} {:<6} {:>7} cases  {:<6} {:.2}s", r.name, r.scope, r.cases, status, secs);
    for c in r.counterexamples.iter().take(5) {
        println!("    {c}");
    }
}

fn timed<F: FnOnce() -> AuditReport>(f: F) {
    let t = Instant::now();
    let r = f();
    show(r, t.elapsed().as_secs_f64());
}

fn main() {
    for (p, e) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
        timed(|| audit_borel_lemma(p, e));
    }
    for p in [3, 5] {
        timed(|| audit_mod_p2_diagonal(p));
    }
    for p in [3, 5, 7] {
        timed(|| audit_diagonalizability(p));
    }

    println!();
    for n in 2..=9 {
        let t = Instant::now();
        let cands = abelian_candidates(n).unwrap();
        let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
        for c in cands {
            *shapes.entry(c.structure()).or_default() += 1;
        }
        let summary: Vec<String> = shapes.iter().map(|(s, k)| format!("{k}x {s}")).collect();
        println!("level {n}: {} classes ({:.2}s): {}", cands.len(), t.elapsed().as_secs_f64(), summary.join(", "));
    }
}
