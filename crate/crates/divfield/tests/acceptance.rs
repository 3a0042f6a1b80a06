//! Acceptance gate: nine criteria, one PASS/FAIL line each.
//!
//! Criteria run one at a time (a shared lock) so the wall-clock budgets are not
//! distorted by sibling tests.

use divfield::algebra_core::{factor_over_q, rat, Rational, UniPoly};
use divfield::cli::tables::{diff_cm_table, diff_level_row, RowStatus, CM_ROWS, LEVEL_ROWS};
use divfield::division_fields::{bundled_fixtures, classify, GroupType};
use divfield::elliptic::{
    cm_recognize, four_torsion_field, halve_point, quadratic_twist, rational_isogeny_kernels, scalar_mul, velu_isogeny,
    CurvePoint, FourTorsion, WeierstrassCurve, CM_TABLE,
};
use divfield::families::{audit_proof_identities, catalog, family, printed_families, samples, verify_family_claims, Claim};
use divfield::frobenius::{ap, certify_nonabelian};
use divfield::matgroups::{audit_borel_lemma, audit_diagonalizability, audit_mod_p2_diagonal, AuditReport};
use divfield::multiquad::{MqElement, MqField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

static SERIAL: Mutex<()> = Mutex::new(());

const LEVELS: [u32; 6] = [2, 3, 4, 5, 6, 8];

/// Runs one criterion under its time budget and prints its verdict line.
fn criterion(id: u32, name: &str, budget: Duration, body: impl FnOnce() -> Vec<String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut failures = body();
    let elapsed = start.elapsed();
    if elapsed > budget {
        failures.push(format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {id}: {name} ({:.2}s of {}s budget)",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for f in failures.iter().take(20) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} ({name}) failed: {failures:#?}");
}

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

fn fixture(label: &str) -> WeierstrassCurve {
    bundled_fixtures().into_iter().find(|f| f.label == label).unwrap().curve
}

fn field(classes: &[i64]) -> std::sync::Arc<MqField> {
    MqField::new(&classes.iter().map(|&d| rat(d)).collect::<Vec<_>>()).unwrap()
}

/// The main theorem's table of abelian groups, written out independently of the library.
fn theorem_table(n: u32) -> Vec<GroupType> {
    let c = |fs: &[u32]| GroupType::from_cyclic_factors(fs);
    match n {
        2 => vec![c(&[]), c(&[2]), c(&[3])],
        3 => vec![c(&[2]), c(&[2, 2])],
        4 => vec![c(&[2]), c(&[2, 2]), c(&[2, 2, 2]), c(&[2, 2, 2, 2])],
        5 => vec![c(&[4]), c(&[2, 4]), c(&[4, 4])],
        6 => vec![c(&[2, 2]), c(&[2, 2, 2])],
        8 => vec![c(&[2, 2, 2, 2]), c(&[2, 2, 2, 2, 2]), c(&[2, 2, 2, 2, 2, 2])],
        _ => vec![],
    }
}

/// Bundled fixtures plus `per_family` samples of every catalog family.
fn corpus(per_family: usize) -> Vec<(String, WeierstrassCurve)> {
    let mut out: Vec<(String, WeierstrassCurve)> = bundled_fixtures().into_iter().map(|f| (f.label, f.curve)).collect();
    for f in catalog() {
        for t in f.samples(per_family) {
            let inst = f.instantiate(&t).unwrap();
            out.push((format!("{}@{}", f.id, t), inst.curve));
        }
    }
    out
}

#[test]
fn criterion_1_intro_sextet() {
    criterion(1, "intro sextet", Duration::from_secs(30), || {
        let mut bad = Vec::new();
        let mut expect = |label: &str, n: u32, group: &[u32], classes: Option<&[i64]>, cyclotomic: bool| {
            let r = classify(&fixture(label), n).unwrap();
            let want = GroupType::from_cyclic_factors(group);
            if !r.is_abelian() || r.group != want {
                bad.push(format!("{label} n={n}: group {} (want {want})", r.group));
            }
            if let Some(c) = classes {
                if r.mq_field().map(|k| **k != *field(c)).unwrap_or(true) {
                    bad.push(format!("{label} n={n}: field {:?}", r.field.as_ref().map(|f| f.to_string())));
                }
            }
            if r.cyclotomic != cyclotomic {
                bad.push(format!("{label} n={n}: cyclotomic = {}", r.cyclotomic));
            }
            r
        };
        expect("15a2", 2, &[], Some(&[]), true);
        expect("19a1", 3, &[2], Some(&[-3]), true);
        expect("15a1", 4, &[2], Some(&[-1]), true);
        expect("11a1", 5, &[4], None, true);
        expect("14a1", 6, &[2, 2], Some(&[-3, -7]), false);
        let r8 = expect("15a1", 8, &[2, 2, 2, 2], None, false);

        // the two printed variants of Q(E[8]) for 15a1; exactly one may match
        let k = r8.mq_field().cloned();
        let table4 = k.as_ref().is_some_and(|k| **k == *field(&[-1, 2, 3, 5]));
        let intro = k.as_ref().is_some_and(|k| **k == *field(&[-1, 2, 3, 7]));
        if !table4 || intro {
            bad.push(format!("15a1 n=8: field {:?} must be Q(zeta8, sqrt3, sqrt5) only", k.map(|k| k.name())));
        }
        let row = LEVEL_ROWS.iter().find(|r| r.label == "15a1" && r.n == 8).unwrap();
        let d = diff_level_row(row, &fixture("15a1"));
        if d.status != RowStatus::AgreeWithErratum || !d.note.as_deref().is_some_and(|n| n.contains("erratum")) {
            bad.push(format!("15a1 table row: {}", d.line()));
        }
        bad
    });
}

#[test]
fn criterion_2_group_table_conformance() {
    criterion(2, "group-table conformance", Duration::from_secs(300), || {
        let mut bad = Vec::new();
        let mut abelian = 0;
        let mut seen: BTreeMap<u32, std::collections::BTreeSet<String>> = BTreeMap::new();
        for (label, e) in corpus(25) {
            for n in LEVELS {
                let r = classify(&e, n).unwrap();
                if r.is_abelian() {
                    abelian += 1;
                    seen.entry(n).or_default().insert(r.group.to_string());
                    if !theorem_table(n).contains(&r.group) {
                        bad.push(format!("{label} n={n}: abelian group {} outside the table", r.group));
                    }
                }
            }
        }
        for n in LEVELS {
            if !seen.contains_key(&n) {
                bad.push(format!("corpus has no abelian case at n={n}"));
            }
        }
        println!("    {abelian} abelian verdicts; groups seen: {seen:?}");
        bad
    });
}

/// One timed batch of audits; failures include a blown sub-budget.
fn audit_batch(budget: u64, label: &str, reports: impl FnOnce() -> Vec<AuditReport>) -> Vec<String> {
    let t = Instant::now();
    let rs = reports();
    let secs = t.elapsed().as_secs_f64();
    let mut bad = Vec::new();
    for r in &rs {
        if !r.passed() {
            bad.push(format!("{} {}: {:?}", r.name, r.scope, &r.counterexamples[..r.counterexamples.len().min(3)]));
        }
        if r.cases == 0 {
            bad.push(format!("{} {}: no cases", r.name, r.scope));
        }
    }
    if secs > budget as f64 {
        bad.push(format!("{label}: {secs:.1}s over {budget}s"));
    }
    println!("    {label}: {} audits, {secs:.2}s of {budget}s", rs.len());
    bad
}

#[test]
fn criterion_3_group_audits() {
    criterion(3, "GL2 structure audits", Duration::from_secs(725), || {
        let mut bad = audit_batch(5, "p = 3", || {
            vec![audit_borel_lemma(3, 1), audit_borel_lemma(3, 2), audit_mod_p2_diagonal(3), audit_diagonalizability(3)]
        });
        bad.extend(audit_batch(120, "p = 5", || {
            vec![audit_borel_lemma(5, 1), audit_borel_lemma(5, 2), audit_mod_p2_diagonal(5), audit_diagonalizability(5)]
        }));
        bad.extend(audit_batch(600, "p = 7 diagonalizability", || vec![audit_diagonalizability(7)]));
        bad
    });
}

#[test]
fn criterion_4_identities() {
    criterion(4, "proof identities", Duration::from_secs(5), || {
        let r = audit_proof_identities();
        let mut bad = r.counterexamples.clone();
        if r.cases < 12 {
            bad.push(format!("only {} identities checked", r.cases));
        }
        bad
    });
}

#[test]
fn criterion_5_family_claims() {
    criterion(5, "family claims, 25 samples each", Duration::from_secs(300), || {
        let mut bad = Vec::new();
        let has = |id: &str, want: &dyn Fn(&Claim) -> bool| family(id).unwrap().claims.iter().any(want);
        let required: [(&str, &str, bool); 8] = [
            ("X(3)", "point of order 3", has("X(3)", &|c| matches!(c, Claim::PointOfOrder(3)))),
            ("X(3)", "Q(E[3]) = Q(sqrt -3)", has("X(3)", &|c| matches!(c, Claim::Field { n: 3, classes: [-3] }))),
            ("Et6", "point of order 6", has("Et6", &|c| matches!(c, Claim::PointOfOrder(6)))),
            ("Et6", "two 3-isogenies", has("Et6", &|c| matches!(c, Claim::IsogenyKernels { p: 3, at_least: 2 }))),
            ("Et6", "(Z/2)^2 at n = 6", has("Et6", &|c| matches!(c, Claim::Group { n: 6, factors: [2, 2] }))),
            ("X58i", "Z/2 x Z/4 torsion", has("X58i", &|c| matches!(c, Claim::TorsionAt { n: 4, pair: (2, 4) }))),
            ("X58i", "Q(E[4]) = Q(i)", has("X58i", &|c| matches!(c, Claim::Field { n: 4, classes: [-1] }))),
            ("X183a", "(Z/2)^4 at n = 8", has("X183a", &|c| matches!(c, Claim::Group { n: 8, factors: [2, 2, 2, 2] }))),
        ];
        for (id, what, present) in required {
            if !present {
                bad.push(format!("{id}: catalog lacks claim {what}"));
            }
        }
        if !has("X183d", &|c| matches!(c, Claim::Group { n: 8, factors: [2, 2, 2, 2] })) {
            bad.push("X183d: catalog lacks (Z/2)^4 at n = 8".into());
        }
        for id in printed_families() {
            let ts = samples(id, 25).unwrap();
            if ts.len() != 25 {
                bad.push(format!("{id}: only {} admissible samples", ts.len()));
            }
            let r = verify_family_claims(id, &ts);
            bad.extend(r.counterexamples.iter().take(3).map(|c| format!("{id}: {c}")));
        }
        // the X187d representative
        let r = classify(&fixture("15a1"), 8).unwrap();
        if r.group != GroupType::elementary(4) {
            bad.push(format!("15a1 n=8: {}", r.group));
        }
        bad
    });
}

#[test]
fn criterion_6_cm_table() {
    criterion(6, "CM table", Duration::from_secs(60), || {
        let mut bad: Vec<String> = diff_cm_table().iter().filter(|d| d.status != RowStatus::Agree).map(|d| d.line()).collect();
        let mut js: Vec<i128> = CM_TABLE.iter().map(|r| r.j as i128).collect();
        js.sort();
        js.dedup();
        if js.len() != 13 {
            bad.push(format!("{} CM j-invariants", js.len()));
        }
        let negatives = CM_ROWS.iter().filter(|r| r.largest_abelian.is_none()).count();
        if negatives == 0 {
            bad.push("no rows with no abelian level".into());
        }
        // the two cyclotomic CM cases
        let two = classify(&curve([0, 0, 0, -4, 0]), 2).unwrap();
        if !two.cyclotomic || cm_recognize(&two.curve.j).map(|r| r.j) != Some(1728) {
            bad.push("y^2 = x^3 - 4x: Q(E[2]) is not Q".into());
        }
        let three = classify(&curve([0, 0, 0, 0, 16]), 3).unwrap();
        if !three.cyclotomic {
            bad.push("y^2 = x^3 + 16: Q(E[3]) is not Q(zeta3)".into());
        }
        bad
    });
}

#[test]
fn criterion_7_certification() {
    criterion(7, "non-abelian certificates at bound 10^4", Duration::from_secs(60), || {
        let mut bad = Vec::new();
        for (name, e, n) in [
            ("11a1", fixture("11a1"), 7),
            ("y^2 = x^3 + x", curve([0, 0, 0, 1, 0]), 8),
            ("14a1", fixture("14a1"), 9),
        ] {
            match certify_nonabelian(&e, n) {
                Ok(c) if c.is_certified() => {}
                other => bad.push(format!("{name} n={n}: {other:?}")),
            }
        }
        bad
    });
}

/// Pool for the twist suite: every family sample and fixture, plus random small curves.
fn twist_pool(rng: &mut ChaCha8Rng) -> Vec<WeierstrassCurve> {
    let mut pool: Vec<WeierstrassCurve> = corpus(4).into_iter().map(|(_, e)| e).collect();
    while pool.len() < 200 {
        let a: [i64; 5] = std::array::from_fn(|i| if i < 3 { rng.gen_range(0..2) } else { rng.gen_range(-30..30) });
        if let Ok(e) = WeierstrassCurve::from_ints(a) {
            pool.push(e);
        }
    }
    pool
}

fn random_squarefree(rng: &mut ChaCha8Rng) -> BigInt {
    loop {
        let d: i64 = rng.gen_range(-60..60);
        if d != 0 && d != 1 && (2..=7i64).all(|p| d % (p * p) != 0) {
            return BigInt::from(d);
        }
    }
}

#[test]
fn criterion_8_twist_invariance() {
    criterion(8, "twist invariance, 50 pairs per level", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
        let pool = twist_pool(&mut rng);
        let mut bad = Vec::new();
        for n in LEVELS {
            // half the draws come from curves abelian at this level
            let hits: Vec<&WeierstrassCurve> = pool.iter().filter(|e| classify(e, n).unwrap().is_abelian()).collect();
            let mut abelian = 0;
            for _ in 0..50 {
                let e = if rng.gen_bool(0.5) { hits[rng.gen_range(0..hits.len())] } else { &pool[rng.gen_range(0..pool.len())] };
                let d = random_squarefree(&mut rng);
                let et = quadratic_twist(e, &d);
                let (r, rt) = (classify(e, n).unwrap(), classify(&et, n).unwrap());
                if r.is_abelian() != rt.is_abelian() {
                    bad.push(format!("n={n} d={d} {e}: verdicts {:?} vs {:?}", r.verdict, rt.verdict));
                } else if r.is_abelian() {
                    abelian += 1;
                    if !r.group.within_one_z2(&rt.group) {
                        bad.push(format!("n={n} d={d} {e}: groups {} vs {}", r.group, rt.group));
                    }
                    if n == 2 && r.group != rt.group {
                        bad.push(format!("n=2 d={d} {e}: Q(E[2]) changed"));
                    }
                }
            }
            println!("    n={n}: {abelian} of 50 pairs abelian");
        }
        bad
    });
}

/// Rational roots of an integer polynomial by the rational root theorem.
fn has_rational_root(cs: &[i64]) -> bool {
    let divisors = |m: i64| -> Vec<i64> { (1..=m.abs()).filter(|k| m % k == 0).collect() };
    if cs[0] == 0 {
        return true;
    }
    for p in divisors(cs[0]) {
        for q in divisors(*cs.last().unwrap()) {
            for s in [p, -p] {
                // sum c_i s^i q^(deg - i) == 0
                let deg = cs.len() - 1;
                let v: i128 = cs.iter().enumerate().map(|(i, &c)| c as i128 * (s as i128).pow(i as u32) * (q as i128).pow((deg - i) as u32)).sum();
                if v == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Random irreducible factor of degree 1 to 3, primitive with positive leading coefficient.
fn random_irreducible(rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(1..=3usize);
        let mut cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if cs[deg] == 0 {
            continue;
        }
        if cs[deg] < 0 {
            cs.iter_mut().for_each(|c| *c = -*c);
        }
        let g = cs.iter().fold(0i64, |g, c| g.gcd(c));
        cs.iter_mut().for_each(|c| *c /= g);
        // degree 2 and 3 are irreducible over Q iff there is no rational root
        if deg == 1 || !has_rational_root(&cs) {
            return cs;
        }
    }
}

fn oracle_factorization(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bad = Vec::new();
    for case in 0..100 {
        let mut known: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        let content = Rational::new(rng.gen_range(1..20).into(), rng.gen_range(1..5).into()) * rat(if rng.gen() { 1 } else { -1 });
        let mut f = UniPoly::constant(content.clone());
        for _ in 0..rng.gen_range(1..=4) {
            let g = random_irreducible(rng);
            f = &f * &UniPoly::from_ints(&g);
            *known.entry(g).or_default() += 1;
        }
        let fac = factor_over_q(&f).unwrap();
        let got: BTreeMap<Vec<i64>, u32> = fac
            .factors
            .iter()
            .map(|(g, e)| (g.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect(), *e))
            .collect();
        if got != known || fac.content != content || fac.expand() != f {
            bad.push(format!("case {case}: {f} gave {got:?}, expected {known:?}"));
        }
    }
    bad
}

/// `u + v sqrt(d)` is a square iff `u^2 - d v^2 = w^2` and `(u + w)/2` or `(u - w)/2` is a
/// rational square (for `v != 0`); `u` itself or `u/d` must be a square when `v = 0`.
fn classical_square(u: i64, v: i64, d: i64) -> bool {
    let sq = |q: Rational| !q.is_negative() && {
        let (n, m) = (q.numer().sqrt(), q.denom().sqrt());
        &n * &n == *q.numer() && &m * &m == *q.denom()
    };
    if v == 0 {
        return sq(rat(u)) || sq(Rational::new(u.into(), d.into()));
    }
    let norm = u * u - d * v * v;
    if norm < 0 {
        return false;
    }
    let w = (norm as f64).sqrt().round() as i64;
    if w * w != norm {
        return false;
    }
    sq(Rational::new((u + w).into(), 2.into())) || sq(Rational::new((u - w).into(), 2.into()))
}

fn oracle_square_grid() -> Vec<String> {
    let mut bad = Vec::new();
    for d in [-11, -7, -6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13] {
        let k = field(&[d]);
        for u in -15..=15 {
            for v in -8..=8 {
                if u == 0 && v == 0 {
                    continue;
                }
                let a = MqElement::from_coords(&k, vec![rat(u), rat(v)]);
                if a.is_square().unwrap() != classical_square(u, v, d) {
                    bad.push(format!("{u} + {v} sqrt({d})"));
                }
            }
        }
        // exhaustive: every (x + y sqrt d)^2 is recognized
        for x in -5..=5 {
            for y in -5..=5 {
                let s = MqElement::from_coords(&k, vec![rat(x), rat(y)]);
                let a = s.try_mul(&s).unwrap();
                if !a.is_zero() && !a.is_square().unwrap() {
                    bad.push(format!("({x} + {y} sqrt({d}))^2 not recognized"));
                }
            }
        }
    }
    bad
}

fn oracle_halving() -> Vec<String> {
    let mut bad = Vec::new();
    let mut checked = 0;
    // y^2 = x (x - a)(x - b)
    for (a, b) in [(1, -1), (1, 2), (1, -3), (2, -2), (3, -5), (4, 9), (-1, 6), (5, -4), (9, 16), (2, 7)] {
        let e = curve([0, -(a + b), 0, a * b, 0]);
        let k = match four_torsion_field(&e) {
            FourTorsion::Field(k) => k,
            FourTorsion::NotPolyquadratic => {
                bad.push(format!("{e}: Q(E[4]) not polyquadratic"));
                continue;
            }
        };
        let mut points: Vec<CurvePoint<Rational>> =
            [0, a, b].iter().map(|&x| CurvePoint::Affine(rat(x), rat(0))).collect();
        // small rational points and their doubles
        for x in -30..=30 {
            let rhs = rat(x) * rat(x - a) * rat(x - b);
            if rhs.is_negative() {
                continue;
            }
            let y = rhs.numer().sqrt();
            if &y * &y == *rhs.numer() && !y.is_zero() {
                let p = CurvePoint::Affine(rat(x), Rational::from_integer(y));
                points.push(scalar_mul(&e, 2, &p).unwrap());
                points.push(p);
            }
        }
        for (i, p) in points.iter().enumerate() {
            let pk = p.lift(&k);
            match halve_point(&e, &pk, &k) {
                Ok(Some(q)) => {
                    checked += 1;
                    if scalar_mul(&e, 2, &q).unwrap() != pk {
                        bad.push(format!("{e}: 2 * half({p:?}) != P"));
                    }
                }
                // 2-torsion points always halve in Q(E[4]); doubles of rational points halve in Q
                Ok(None) if i < 3 || i % 2 == 1 => bad.push(format!("{e}: {p:?} should halve")),
                Ok(None) => {}
                Err(err) => bad.push(format!("{e}: {err}")),
            }
        }
    }
    if checked < 40 {
        bad.push(format!("only {checked} halvings checked"));
    }
    bad
}

fn oracle_velu() -> Vec<String> {
    let mut bad = Vec::new();
    let mut triples = 0;
    'outer: for (label, e) in corpus(3) {
        for p in [2, 3, 5, 7] {
            for k in rational_isogeny_kernels(&e, p).unwrap() {
                let e2 = velu_isogeny(&e, &k).unwrap();
                let mut compared = 0;
                for l in (3..400u64).filter(|&l| num_prime::nt_funcs::is_prime64(l)) {
                    if let (Ok(a), Ok(b)) = (ap(&e, l), ap(&e2, l)) {
                        compared += 1;
                        if a != b {
                            bad.push(format!("{label} p={p} l={l}: a_l {a} vs {b}"));
                        }
                    }
                }
                if compared < 30 {
                    bad.push(format!("{label} p={p}: only {compared} primes compared"));
                }
                triples += 1;
                if triples == 20 {
                    break 'outer;
                }
            }
        }
    }
    if triples < 20 {
        bad.push(format!("only {triples} isogeny triples"));
    }
    bad
}

#[test]
fn criterion_9_oracle_equivalences() {
    criterion(9, "oracle equivalences", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut bad = Vec::new();
        for (name, part) in [
            ("factorization", oracle_factorization(&mut rng)),
            ("is_square grid", oracle_square_grid()),
            ("halving", oracle_halving()),
            ("velu", oracle_velu()),
        ] {
            println!("    {name}: {} violations", part.len());
            bad.extend(part.into_iter().map(|b| format!("{name}: {b}")));
        }
        bad
    });
}
