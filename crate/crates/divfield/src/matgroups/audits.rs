use super::mat::{inv_mod, is_unit, Mat2};
use super::{is_diagonalizable, Gl2Subgroup};
pub use crate::audit::AuditReport;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

fn units(n: u32) -> Vec<u32> {
    (1..n).filter(|&u| is_unit(u, n)).collect()
}

/// Upper-triangular matrix `(a b; 0 d)` as a compact index.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Upper {
    a: u32,
    b: u32,
    d: u32,
}

impl Upper {
    fn mul(self, o: Upper, n: u32) -> Upper {
        let n64 = n as u64;
        Upper {
            a: (self.a as u64 * o.a as u64 % n64) as u32,
            b: ((self.a as u64 * o.b as u64 + self.b as u64 * o.d as u64) % n64) as u32,
            d: (self.d as u64 * o.d as u64 % n64) as u32,
        }
    }

    fn inv(self, n: u32) -> Upper {
        let ai = inv_mod(self.a, n).unwrap() as u64;
        let di = inv_mod(self.d, n).unwrap() as u64;
        let n64 = n as u64;
        let b = (n64 - self.b as u64 % n64) * ai % n64 * di % n64;
        Upper { a: ai as u32, b: b as u32, d: di as u32 }
    }

    fn index(self, n: u32) -> usize {
        ((self.a * n + self.b) * n + self.d) as usize
    }
}

/// Closure of upper-triangular generators, reusing a stamped membership table.
struct UpperClosure {
    n: u32,
    stamp: Vec<u32>,
    round: u32,
}

impl UpperClosure {
    fn new(n: u32) -> Self {
        UpperClosure { n, stamp: vec![0; (n * n * n) as usize], round: 0 }
    }

    fn generate(&mut self, gens: &[Upper]) -> Vec<Upper> {
        self.round += 1;
        let id = Upper { a: 1, b: 0, d: 1 };
        self.stamp[id.index(self.n)] = self.round;
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in gens {
                let y = x.mul(*g, self.n);
                let k = y.index(self.n);
                if self.stamp[k] != self.round {
                    self.stamp[k] = self.round;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    fn contains(&self, x: Upper) -> bool {
        self.stamp[x.index(self.n)] == self.round
    }
}

fn commutator(x: Upper, y: Upper, n: u32) -> Upper {
    x.inv(n).mul(y.inv(n), n).mul(x, n).mul(y, n)
}

fn is_power_of(mut k: usize, p: usize) -> bool {
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

/// Borel lemma over Z/p^e: for B upper triangular containing g = (a b; 0 c) with
/// a != c mod p and h = (1 b/(c-a); 0 1), the conjugate B' = h^-1 B h satisfies
/// B' = B'_d B'_1 and [B', B'] = B'_1.
///
/// Groups are `<diag(a, c), (x b; 0 y)>`, which covers every two-generated upper
/// triangular group with such an element up to conjugation by upper triangular
/// matrices; b runs over `{0} U {p^k}` since diagonal conjugation rescales it.
pub fn audit_borel_lemma(p: u32, exponent: u32) -> AuditReport {
    assert!(matches!(p, 3 | 5) && matches!(exponent, 1 | 2));
    let n = p.pow(exponent);
    let us = units(n);
    let mut bs = vec![0u32];
    bs.extend((0..exponent).map(|k| p.pow(k)));
    let mut seen: HashSet<u64> = HashSet::new();
    let mut counterexamples = Vec::new();
    let mut groups = UpperClosure::new(n);
    let mut conj = UpperClosure::new(n);
    for &a in &us {
        for &c in &us {
            if a % p == c % p {
                continue;
            }
            let g1 = Upper { a, b: 0, d: c };
            let mut powers = vec![(1u32, 1u32)];
            loop {
                let &(s, t) = powers.last().unwrap();
                let next = ((s * a) % n, (t * c) % n);
                if next == (1, 1) {
                    break;
                }
                powers.push(next);
            }
            for &x in &us {
                for &y in &us {
                    // g2 g1^k generates the same group, and only rescales b
                    let smaller = powers.iter().any(|&(s, t)| ((x * s) % n, (y * t) % n) < (x, y));
                    if smaller {
                        continue;
                    }
                    for &b in &bs {
                        let g2 = Upper { a: x, b, d: y };
                        let mut elems = groups.generate(&[g1, g2]);
                        let mut key: Vec<usize> = elems.iter().map(|e| e.index(n)).collect();
                        key.sort_unstable();
                        let mut hasher = DefaultHasher::new();
                        key.hash(&mut hasher);
                        if !seen.insert(hasher.finish()) {
                            continue;
                        }
                        let g = if x % p != y % p { g2 } else { g1 };
                        let t = (g.b as u64 * inv_mod((g.d + n - g.a) % n, n).unwrap() as u64 % n as u64) as u32;
                        let h = Upper { a: 1, b: t, d: 1 };
                        let hi = h.inv(n);
                        for e in elems.iter_mut() {
                            *e = hi.mul(*e, n).mul(h, n);
                        }
                        let gens = [hi.mul(g1, n).mul(h, n), hi.mul(g2, n).mul(h, n)];
                        let bp = conj.generate(&gens);
                        debug_assert_eq!(bp.len(), elems.len());
                        let mut problems = Vec::new();
                        // B' = B'_d B'_1: the diagonal part of each element lies in B'
                        if !bp.iter().all(|m| conj.contains(Upper { a: m.a, b: 0, d: m.d })) {
                            problems.push("B' != B'_d B'_1");
                        }
                        // [B', B'] is normally generated by the generator commutator and lies in
                        // the cyclic group of unipotents, whose subgroups are all normal
                        let comm = commutator(gens[0], gens[1], n);
                        let mut derived: Vec<usize> = conj.generate(&[comm]).iter().map(|e| e.index(n)).collect();
                        derived.sort_unstable();
                        let mut b1: Vec<usize> =
                            bp.iter().filter(|m| m.a == 1 && m.d == 1).map(|e| e.index(n)).collect();
                        b1.sort_unstable();
                        if derived != b1 {
                            problems.push("[B', B'] != B'_1");
                        }
                        if !is_power_of(b1.len(), p as usize) {
                            problems.push("B'_1 is not a p-group");
                        }
                        if !problems.is_empty() {
                            counterexamples.push(format!(
                                "<diag({a},{c}), ({x} {b}; 0 {y})> mod {n}: {}",
                                problems.join(", ")
                            ));
                        }
                    }
                }
            }
        }
    }
    AuditReport { name: "borel_lemma".into(), scope: format!("mod {n}"), cases: seen.len(), counterexamples }
}

/// Mod p^2 lemma: if g = (a bp; cp d) with a != d mod p and t is diagonal mod p and
/// commutes with g, then m = (1 -bp/(a-d); cp/(a-d) 1) conjugates g and t to
/// diagonal matrices, so `<g, t>` is conjugate to a diagonal group.
pub fn audit_mod_p2_diagonal(p: u32) -> AuditReport {
    assert!(matches!(p, 3 | 5));
    let n = p * p;
    let us = units(n);
    let pi = p as i64;
    let shaped: Vec<Mat2> = us
        .iter()
        .flat_map(|&a| us.iter().map(move |&d| (a, d)))
        .flat_map(|(a, d)| {
            (0..pi).flat_map(move |b| (0..pi).map(move |c| Mat2::new(n, a as i64, b * pi, c * pi, d as i64)))
        })
        .collect();
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for g in shaped.iter().filter(|g| g.a % p != g.d % p) {
        let k = inv_mod((g.a + n - g.d) % n, n).unwrap() as i64;
        let m = Mat2::new(n, 1, -(g.b as i64) * k, g.c as i64 * k, 1);
        let gd = g.conj(&m);
        for t in shaped.iter().filter(|t| t.commutes(g)) {
            cases += 1;
            if !gd.is_diagonal() || !t.conj(&m).is_diagonal() {
                counterexamples.push(format!("g = {g}, t = {t}"));
            }
        }
    }
    AuditReport { name: "mod_p2_diagonal".into(), scope: format!("mod {n}"), cases, counterexamples }
}

/// Hypothesis-dropped witness for the mod p^2 lemma: `<1 + p (0 1; 0 0)>` is abelian,
/// diagonal mod p, and not diagonalizable mod p^2.
pub fn mod_p2_hypothesis_witness(p: u32) -> Gl2Subgroup {
    let n = p * p;
    Gl2Subgroup::generate(n, &[Mat2::new(n, 1, p as i64, 0, 1)]).unwrap()
}

/// Abelian subgroups of GL(2, F_p) generated by one or two commuting elements, deduplicated.
pub(crate) fn abelian_two_generated(p: u32) -> Vec<Gl2Subgroup> {
    let all = super::gl2_elements(p);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for (i, x) in all.iter().enumerate() {
        for y in &all[i..] {
            if !x.commutes(y) {
                continue;
            }
            let g = Gl2Subgroup::generate(p, &[*x, *y]).unwrap();
            if seen.insert(g.key()) {
                out.push(g);
            }
        }
    }
    out
}

/// Every abelian G in GL(2, F_p) with surjective determinant and an element with
/// characteristic polynomial x^2 - 1 (non-scalar) is diagonalizable.
pub fn audit_diagonalizability(p: u32) -> AuditReport {
    assert!(matches!(p, 3 | 5 | 7));
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for g in abelian_two_generated(p) {
        let conj = g.elements().iter().any(|m| m.tr() == 0 && m.det() == p - 1);
        if !g.is_det_surjective() || !conj {
            continue;
        }
        cases += 1;
        if is_diagonalizable(&g).unwrap().is_none() {
            counterexamples.push(format!("generated by {:?}", g.generators));
        }
    }
    AuditReport { name: "diagonalizability".into(), scope: format!("mod {p}"), cases, counterexamples }
}

#[cfg(test)]
mod tests {
    use super::super::cartan_subgroups;
    use super::*;
    use std::time::Instant;

    #[test]
    fn borel_lemma_small_moduli() {
        for (p, e) in [(3, 1), (5, 1), (3, 2)] {
            let r = audit_borel_lemma(p, e);
            assert!(r.passed(), "{r:?}");
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn borel_commutators_agree_with_full_computation() {
        // oracle for the generator-commutator shortcut
        let n = 9;
        for (g1, g2) in [
            (Mat2::diag(n, 2, 1), Mat2::new(n, 4, 1, 0, 7)),
            (Mat2::diag(n, 1, 5), Mat2::new(n, 1, 3, 0, 1)),
            (Mat2::diag(n, 4, 2), Mat2::new(n, 2, 1, 0, 2)),
        ] {
            let b = Gl2Subgroup::generate(n, &[g1, g2]).unwrap();
            let (b1, _) = super::super::borel_parts(&b).unwrap();
            assert_eq!(b.commutator_subgroup().key(), b1.key());
        }
    }

    #[test]
    fn mod_p2_lemma() {
        let t = Instant::now();
        let r = audit_mod_p2_diagonal(3);
        assert!(r.passed(), "{r:?}");
        assert!(r.cases > 100);
        assert!(t.elapsed().as_secs() < 5);
        let w = mod_p2_hypothesis_witness(3);
        assert!(w.is_abelian());
        assert!(w.elements().iter().all(|m| m.reduce(3).is_diagonal()));
        assert_eq!(is_diagonalizable(&w).unwrap(), None);
    }

    #[test]
    fn diagonalizability_small_primes() {
        for p in [3, 5] {
            let r = audit_diagonalizability(p);
            assert!(r.passed(), "{r:?}");
            assert!(r.cases > 0);
        }
        // without the conjugation element C_ns is a non-diagonalizable abelian group
        let ns = cartan_subgroups(3).unwrap().nonsplit;
        assert!(ns.is_abelian() && ns.is_det_surjective());
        assert!(!ns.elements().iter().any(|m| m.tr() == 0 && m.det() == 2));
        assert_eq!(is_diagonalizable(&ns).unwrap(), None);
    }

    #[test]
    fn triple_generation_adds_nothing_mod_3() {
        let pairs: HashSet<Vec<u32>> = abelian_two_generated(3).iter().map(Gl2Subgroup::key).collect();
        let all = super::super::gl2_elements(3);
        for g in abelian_two_generated(3) {
            for z in &all {
                if g.generators.iter().all(|x| x.commutes(z)) {
                    let mut gens = g.generators.clone();
                    gens.push(*z);
                    let big = Gl2Subgroup::generate(3, &gens).unwrap();
                    assert!(pairs.contains(&big.key()));
                }
            }
        }
    }

    #[test]
    fn enumerated_diagonalizable_groups_are_abelian() {
        // every group found diagonalizable among all 2-generated subgroups mod 3 is abelian
        let all = super::super::gl2_elements(3);
        for x in &all {
            for y in &all {
                let g = Gl2Subgroup::generate(3, &[*x, *y]).unwrap();
                if is_diagonalizable(&g).unwrap().is_some() {
                    assert!(g.is_abelian());
                }
            }
        }
    }
}
