//! Quadratic twists keep abelian verdicts and change the group by at most one Z/2.
//!
//! `cargo run --release --example twist_suite -- 8` checks one level only.

use divfield::division_fields::classify;
use divfield::elliptic::quadratic_twist;
use divfield::families::{catalog, twist_classes};

fn main() {
    let levels: Vec<u32> = match std::env::args().nth(1) {
        Some(n) => vec![n.parse().expect("level")],
        None => vec![2, 3, 4, 5, 6, 8],
    };
    let ds: Vec<_> = twist_classes().take(6).collect();
    for n in levels {
        let (mut pairs, mut abelian, mut violations) = (0, 0, 0);
        for f in catalog() {
            for t in f.samples(2) {
                let e = f.instantiate(&t).unwrap().curve;
                let r = classify(&e, n).unwrap();
                for d in &ds {
                    let rt = classify(&quadratic_twist(&e, d), n).unwrap();
                    pairs += 1;
                    let ok = r.is_abelian() == rt.is_abelian() && (!r.is_abelian() || r.group.within_one_z2(&rt.group));
                    abelian += usize::from(r.is_abelian());
                    if !ok {
                        violations += 1;
                        println!("  {}@{t} d={d}: {} vs {}", f.id, r.group, rt.group);
                    }
                }
            }
        }
        println!("n = {n}: {pairs} pairs, {abelian} abelian, {violations} violations");
    }
}
