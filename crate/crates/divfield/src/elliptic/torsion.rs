use super::divpoly::division_polynomial_unbounded;
use super::point::{add_points, point_order, scalar_mul};
use super::{CurvePoint, WeierstrassCurve};
use crate::algebra_core::{rational_roots, rational_sqrt, rat, Rational, UniPoly};
use crate::frobenius::ap;
use num_integer::Integer;
use num_prime::nt_funcs::is_prime64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Abelian group `Z/m` or `Z/m1 x Z/m2` with `m1 | m2`; `[]` is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionType {
    pub invariants: Vec<u32>,
}

impl TorsionType {
    pub fn new(m1: u32, m2: u32) -> Self {
        assert!(m1 >= 1 && m2 % m1 == 0);
        let invariants = match (m1, m2) {
            (1, 1) => vec![],
            (1, m) => vec![m],
            (a, b) => vec![a, b],
        };
        TorsionType { invariants }
    }

    pub fn trivial() -> Self {
        TorsionType { invariants: vec![] }
    }

    pub fn order(&self) -> u32 {
        self.invariants.iter().product()
    }

    /// `(m1, m2)` with `m1 = 1` for cyclic groups.
    pub fn pair(&self) -> (u32, u32) {
        match self.invariants[..] {
            [] => (1, 1),
            [m] => (1, m),
            [a, b] => (a, b),
            _ => unreachable!(),
        }
    }

    /// The n-torsion subgroup.
    pub fn n_torsion(&self, n: u32) -> TorsionType {
        let (a, b) = self.pair();
        TorsionType::new(a.gcd(&n), b.gcd(&n))
    }

    pub fn is_mazur_admissible(&self) -> bool {
        match self.pair() {
            (1, m) => m <= 10 || m == 12,
            (2, m) => matches!(m, 2 | 4 | 6 | 8),
            _ => false,
        }
    }
}

impl fmt::Display for TorsionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariants.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTorsion {
    pub structure: TorsionType,
    /// One generator per invariant factor, in the same order.
    pub generators: Vec<CurvePoint<Rational>>,
    /// All torsion points including O, sorted.
    pub points: Vec<CurvePoint<Rational>>,
}

fn point_key(p: &CurvePoint<Rational>) -> (u8, Rational, Rational) {
    match p {
        CurvePoint::Infinity => (0, rat(0), rat(0)),
        CurvePoint::Affine(x, y) => (1, x.clone(), y.clone()),
    }
}

/// Rational points whose x-coordinate is a root of `psi_n`.
fn points_over_roots(e: &WeierstrassCurve, n: u32) -> Vec<CurvePoint<Rational>> {
    let psi = division_polynomial_unbounded(e, n);
    let roots = rational_roots(&psi).expect("nonzero division polynomial");
    let mut out = Vec::new();
    for x in roots {
        // (2y + a1 x + a3)^2 = B(x)
        let Some(r) = rational_sqrt(&e.two_division_poly().eval(&x)) else { continue };
        let shift = e.a1() * &x + e.a3();
        for s in [r.clone(), -r.clone()] {
            let y = (s - &shift) / rat(2);
            let p = CurvePoint::Affine(x.clone(), y);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Rational points `Q` with `2Q = P`: the x-coordinates are roots of
/// `x^4 - b4 x^2 - 2 b6 x - b8 = x0 (4x^3 + b2 x^2 + 2 b4 x + b6)`.
fn rational_halves(e: &WeierstrassCurve, p: &CurvePoint<Rational>) -> Vec<CurvePoint<Rational>> {
    let CurvePoint::Affine(x0, _) = p else { return vec![] };
    let [a1, a2, a3, a4, a6] = e.a_invariants();
    let b2 = a1 * a1 + rat(4) * a2;
    let b4 = rat(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + rat(4) * a6;
    let b8 = a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let quartic = UniPoly::new(vec![
        -b8 - x0 * &b6,
        rat(-2) * &b6 - rat(2) * x0 * &b4,
        -b4 - x0 * &b2,
        rat(-4) * x0,
        rat(1),
    ]);
    let mut out = Vec::new();
    for x in rational_roots(&quartic).expect("monic quartic") {
        let Some(r) = rational_sqrt(&e.two_division_poly().eval(&x)) else { continue };
        let shift = e.a1() * &x + e.a3();
        for s in [r.clone(), -r] {
            let q = CurvePoint::Affine(x.clone(), (s - &shift) / rat(2));
            if add_points(e, &q, &q).unwrap() == *p && !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// Points of 2-power order: rational 2-torsion, then repeated rational halving.
fn two_primary_points(e: &WeierstrassCurve) -> Vec<CurvePoint<Rational>> {
    let mut all = points_over_roots(e, 2);
    let mut frontier = all.clone();
    while let Some(p) = frontier.pop() {
        for h in rational_halves(e, &p) {
            if !all.contains(&h) {
                all.push(h.clone());
                frontier.push(h);
            }
        }
    }
    all
}

/// A multiple of `#E(Q)_tors`: the gcd of `#E(F_l)` over odd primes of good reduction,
/// into which the torsion injects. Zero when no prime is usable (no pruning).
fn order_bound(e: &WeierstrassCurve) -> u64 {
    let mut g = 0u64;
    let mut used = 0;
    for l in (3u64..2000).filter(|&l| is_prime64(l)) {
        if let Ok(a) = ap(e, l) {
            g = g.gcd(&((l as i64 + 1 - a) as u64));
            used += 1;
            if used == 16 {
                break;
            }
        }
    }
    g
}

/// Full rational torsion subgroup. Candidate orders come from Mazur's list, so
/// every torsion point has order dividing 8, 9, 5 or 7 in each primary part.
pub fn torsion_over_q(e: &WeierstrassCurve) -> RationalTorsion {
    // p -> points of p-power order (without O)
    let mut primary: BTreeMap<u32, Vec<(u32, CurvePoint<Rational>)>> = BTreeMap::new();
    let bound = order_bound(e);
    for (p, max_n) in [(2u32, 8u32), (3, 9), (5, 5), (7, 7)] {
        let mut n = 1;
        while n < max_n && bound % (n * p) as u64 == 0 {
            n *= p;
        }
        if n == 1 {
            continue;
        }
        let pts = if p == 2 { two_primary_points(e) } else { points_over_roots(e, n) };
        for pt in pts {
            let ord = point_order(e, &pt, n).expect("root of psi_n has order dividing n");
            debug_assert_eq!(n % ord, 0);
            primary.entry(p).or_default().push((ord, pt));
        }
    }
    let (mut m1, mut m2) = (1u32, 1u32);
    let mut cyc_gen = CurvePoint::Infinity;
    let mut second_gen = CurvePoint::Infinity;
    for (&p, pts) in primary.iter_mut() {
        pts.sort_by_key(|(o, pt)| (std::cmp::Reverse(*o), point_key(pt)));
        let size = pts.len() as u32 + 1;
        let exponent = pts[0].0;
        let rest = size / exponent;
        m2 *= exponent;
        m1 *= rest;
        let g = pts[0].1.clone();
        cyc_gen = add_points(e, &cyc_gen, &g).unwrap();
        if rest > 1 {
            debug_assert_eq!((p, rest), (2, 2));
            let inside = scalar_mul(e, (exponent / 2) as i64, &g).unwrap();
            let mut twos: Vec<_> = pts.iter().filter(|(o, q)| *o == 2 && *q != inside).collect();
            twos.sort_by_key(|(_, q)| point_key(q));
            second_gen = twos[0].1.clone();
        }
    }
    let structure = TorsionType::new(m1, m2);
    let mut points = vec![CurvePoint::Infinity];
    for pts in primary.values() {
        let mut next = Vec::new();
        for a in &points {
            next.push(a.clone());
            for (_, b) in pts {
                next.push(add_points(e, a, b).unwrap());
            }
        }
        points = next;
    }
    points.sort_by_key(point_key);
    points.dedup();
    assert_eq!(points.len() as u32, structure.order());
    let mut generators = Vec::new();
    if m1 > 1 {
        generators.push(second_gen);
    }
    if m2 > 1 {
        generators.push(cyc_gen);
    }
    RationalTorsion { structure, generators, points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::ratio;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_ints(a).unwrap()
    }

    /// Independent oracle: search points with small-height x and check orders.
    fn brute_force_count(e: &WeierstrassCurve) -> usize {
        let mut pts = vec![CurvePoint::Infinity];
        for den in [1i64, 4, 9, 16, 36, 64] {
            for num in -2000i64..=2000 {
                let x = ratio(num, den);
                if *x.denom() != den.into() {
                    continue;
                }
                let Some(r) = rational_sqrt(&e.two_division_poly().eval(&x)) else { continue };
                for s in [r.clone(), -r.clone()] {
                    let y = (s - (e.a1() * &x + e.a3())) / rat(2);
                    let p = CurvePoint::Affine(x.clone(), y);
                    if point_order(e, &p, 12).is_some() && !pts.contains(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        pts.len()
    }

    #[test]
    fn known_groups() {
        let t = torsion_over_q(&curve([0, -1, 1, -10, -20]));
        assert_eq!(t.structure, TorsionType::new(1, 5));
        assert!(t.points.contains(&CurvePoint::Affine(rat(5), rat(5))));
        assert_eq!(torsion_over_q(&curve([1, 0, 1, 4, -6])).structure, TorsionType::new(1, 6));
        let t = torsion_over_q(&curve([0, 0, 0, 0, 16]));
        assert_eq!(t.structure, TorsionType::new(1, 3));
        assert!(t.generators[0] == CurvePoint::Affine(rat(0), rat(4)) || t.generators[0] == CurvePoint::Affine(rat(0), rat(-4)));
        assert_eq!(torsion_over_q(&curve([1, 1, 1, -10, -10])).structure, TorsionType::new(2, 4));
        assert_eq!(torsion_over_q(&curve([0, 0, 0, -1, 0])).structure, TorsionType::new(2, 2));
        assert_eq!(torsion_over_q(&curve([0, 0, 0, 1, 0])).structure, TorsionType::new(1, 2));
        assert_eq!(torsion_over_q(&curve([0, 0, 0, 0, 2])).structure, TorsionType::trivial());
        assert_eq!(torsion_over_q(&curve([1, 1, 1, -135, -660])).structure, TorsionType::new(2, 2));
    }

    #[test]
    fn generators_have_invariant_orders() {
        for a in [[1, 1, 1, -10, -10], [1, 0, 1, 4, -6], [0, -1, 1, -10, -20], [0, 0, 0, -1, 0], [1, 1, 1, -135, -660]] {
            let e = curve(a);
            let t = torsion_over_q(&e);
            for (g, m) in t.generators.iter().zip(&t.structure.invariants) {
                assert_eq!(point_order(&e, g, 12), Some(*m));
            }
            assert_eq!(t.points.len(), brute_force_count(&e));
            assert!(t.structure.is_mazur_admissible());
        }
    }

    #[test]
    fn n_torsion_subgroups() {
        let t = TorsionType::new(2, 4);
        assert_eq!(t.n_torsion(2), TorsionType::new(2, 2));
        assert_eq!(t.n_torsion(3), TorsionType::trivial());
        assert_eq!(TorsionType::new(1, 6).n_torsion(3).to_string(), "Z/3");
        assert_eq!(t.to_string(), "Z/2 x Z/4");
    }
}
