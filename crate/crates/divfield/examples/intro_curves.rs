//! Classifies every level for the introduction's example curves.
//!
//! Pass five comma-separated coefficients to classify another curve:
//! `cargo run --release --example intro_curves -- 0,-1,1,-10,-20`

use divfield::algebra_core::parse_rational;
use divfield::division_fields::{bundled_fixtures, classify_all, CurveFixture, Provenance};
use divfield::elliptic::WeierstrassCurve;
use std::time::Instant;

fn from_arg(s: &str) -> CurveFixture {
    let coeffs: Vec<_> = s.split(',').map(|c| parse_rational(c.trim()).expect("rational coefficient")).collect();
    let curve = WeierstrassCurve::new(coeffs.try_into().expect("five coefficients")).expect("nonsingular");
    CurveFixture { label: s.to_string(), curve, provenance: Provenance::ExternalDatabase }
}

fn main() {
    let fixtures = match std::env::args().nth(1) {
        Some(arg) => vec![from_arg(&arg)],
        None => bundled_fixtures(),
    };
    for fx in fixtures {
        let t = Instant::now();
        let reports = classify_all(&fx.curve);
        println!("{} {}  ({:.2}s)", fx.label, fx.curve, t.elapsed().as_secs_f64());
        for r in reports.values() {
            println!("  {}", r.summary());
        }
    }
}
