//! Exact audits of the polynomial identities used in the level-6 and level-10
//! arguments, the division-polynomial shapes of the CM families, and the family
//! displays (discriminants and j-lines).

use super::{discriminant_generic, family, parse_poly, Model};
use crate::algebra_core::{rat, ratio, BiPoly, UniPoly};
use crate::audit::AuditReport;
use crate::elliptic::{division_polynomial, division_polynomial_generic, DivPolyRing, WeierstrassCurve};
use std::ops::{Add, Mul, Neg, Sub};

/// Element of Q(t), kept as `num/den` with `gcd = 1` and monic `den`.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RatFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (n, d) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let lc = d.lc();
        RatFn { num: n.scale(&lc.recip()), den: d.monic() }
    }

    pub fn poly(p: UniPoly) -> Self {
        RatFn { num: p, den: UniPoly::one() }
    }

    pub fn inv(&self) -> Self {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        RatFn::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl DivPolyRing for RatFn {
    fn int(n: i64) -> Self {
        RatFn::poly(UniPoly::constant(rat(n)))
    }
    fn var_x() -> Self {
        RatFn::poly(UniPoly::x())
    }
}

/// `num/den` in Q(x, y), for rational maps between plane curves.
#[derive(Clone, Debug)]
struct BiFrac {
    num: BiPoly,
    den: BiPoly,
}

impl BiFrac {
    fn poly(p: BiPoly) -> Self {
        BiFrac { num: p, den: BiPoly::one() }
    }

    fn new(num: BiPoly, den: BiPoly) -> Self {
        BiFrac { num, den }
    }

    fn sub(&self, o: &BiFrac) -> BiFrac {
        BiFrac::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    /// Substitutes `x -> fx`, `y -> fy`.
    fn compose(&self, fx: &BiFrac, fy: &BiFrac) -> BiFrac {
        let ex = self.num.deg_x().max(self.den.deg_x());
        let ey = self.num.deg_y().max(self.den.deg_y());
        let powers = |p: &BiPoly, e: u32| -> Vec<BiPoly> {
            let mut v = vec![BiPoly::one()];
            for _ in 0..e {
                let next = &v[v.len() - 1] * p;
                v.push(next);
            }
            v
        };
        let (an, ad) = (powers(&fx.num, ex), powers(&fx.den, ex));
        let (cn, cd) = (powers(&fy.num, ey), powers(&fy.den, ey));
        let homog = |p: &BiPoly| -> BiPoly {
            let mut out = BiPoly::zero();
            for (&(i, j), c) in p.terms() {
                let t = &(&an[i as usize] * &ad[(ex - i) as usize]) * &(&cn[j as usize] * &cd[(ey - j) as usize]);
                out = &out + &t.scale(c);
            }
            out
        };
        BiFrac::new(homog(&self.num), homog(&self.den))
    }

    /// Zero on the curve `y^2 = g(x)`.
    fn vanishes_on(&self, g: &BiPoly) -> bool {
        self.num.reduce_mod_curve(g).is_zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

fn bx(src: &str) -> BiPoly {
    BiPoly::from_x(&parse_poly(src, 'x').expect("identity display"))
}

fn x3_model() -> [UniPoly; 5] {
    match &family("X(3)").unwrap().model {
        Model::Weierstrass(a) => a.clone(),
        _ => unreachable!("X(3) has a Weierstrass model"),
    }
}

fn c4_generic<R: DivPolyRing>(a: &[R; 5]) -> R
where
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R>,
{
    let [a1, a2, a3, a4, _] = a;
    let b2 = &(a1 * a1) + &(&R::int(4) * a2);
    let b4 = &(&R::int(2) * a4) + &(a1 * a3);
    &(&b2 * &b2) - &(&R::int(24) * &b4)
}

/// `j = c4^3 / disc` of a polynomial family as an element of Q(t).
pub fn model_j(a: &[UniPoly; 5]) -> RatFn {
    let a = a.clone().map(RatFn::poly);
    let c4 = c4_generic(&a);
    &(&(&c4 * &c4) * &c4) * &discriminant_generic(&a).inv()
}

fn jline_matches_model(id: &str) -> bool {
    let f = family(id).unwrap();
    match (&f.model, &f.jline) {
        (Model::Weierstrass(a), Some(j)) => model_j(a) == j.as_ratfn(),
        _ => false,
    }
}

fn x3_discriminant() -> bool {
    let d = discriminant_generic(&x3_model());
    let t3m1 = &UniPoly::x().pow(3) - &UniPoly::one();
    let expect = t3m1.pow(3).scale(&rat(2i64.pow(12) * 3i64.pow(9)));
    d == expect
}

/// `disc(E')` for `E': y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)`, `j = j_{Xs(5)}(t)`,
/// against the factored display.
fn xs5_discriminant() -> bool {
    let f = family("Xs(5)-jline").unwrap();
    let j = f.jline.as_ref().unwrap().as_ratfn();
    let k = &j - &RatFn::int(1728);
    let kinv = k.inv();
    let a = [RatFn::int(1), RatFn::int(0), RatFn::int(0), &RatFn::int(-36) * &kinv, -&kinv];
    let disc = discriminant_generic(&a);
    let p = |s: &str| RatFn::poly(parse_poly(s, 't').unwrap());
    let lead = &p("(t(t^4 + 5t^3 + 15t^2 + 25t + 25))^5") * &p("(t^2 + 2t + 5)^3").inv();
    let inner = &p("(t^2 + 5t + 5)(t^4 + 5t^2 + 25)(t^4 + 5t^3 + 20t^2 + 25t + 25)")
        * &p("(t^2 - 5)(t^4 + 15t^2 + 25)(t^4 + 4t^3 + 9t^2 + 10t + 5)(t^4 + 10t^3 + 45t^2 + 100t + 125)").inv();
    let mut sixth = RatFn::int(1);
    for _ in 0..6 {
        sixth = &sixth * &inner;
    }
    disc == &lead * &sixth
}

fn genus3_curve() -> BiPoly {
    bx("x(x^2 + 2x + 5)(x^4 + 5x^3 + 15x^2 + 25x + 25)")
}

fn tau() -> (BiFrac, BiFrac) {
    let x4 = BiPoly::x().pow(4);
    (BiFrac::new(BiPoly::int(5), BiPoly::x()), BiFrac::new(BiPoly::y().scale(&rat(25)), x4))
}

fn pi() -> (BiFrac, BiFrac) {
    (BiFrac::new(bx("x^2 + 2x + 5"), BiPoly::x()), BiFrac::new(-&BiPoly::y(), bx("x^2")))
}

fn coord_x() -> BiFrac {
    BiFrac::poly(BiPoly::x())
}

fn coord_y() -> BiFrac {
    BiFrac::poly(BiPoly::y())
}

fn tau_involution() -> bool {
    let (tx, ty) = tau();
    let xx = coord_x().compose(&tx, &ty).compose(&tx, &ty);
    let yy = coord_y().compose(&tx, &ty).compose(&tx, &ty);
    xx.sub(&coord_x()).is_zero() && yy.sub(&coord_y()).is_zero()
}

/// `F(x, y) = y^2 - g(x)` as a fraction, for pulling back curve equations.
fn curve_eq(g: &BiPoly) -> BiFrac {
    BiFrac::poly(&BiPoly::y().pow(2) - g)
}

fn tau_preserves_curve() -> bool {
    let (tx, ty) = tau();
    let g = genus3_curve();
    curve_eq(&g).compose(&tx, &ty).vanishes_on(&g)
}

fn pi_lands_on_quotient() -> bool {
    let (px, py) = pi();
    let target = curve_eq(&bx("x^3 + x^2 - x"));
    target.compose(&px, &py).vanishes_on(&genus3_curve())
}

fn pi_is_tau_invariant() -> bool {
    let (tx, ty) = tau();
    let (px, py) = pi();
    let u = px.compose(&tx, &ty).sub(&px);
    let v = py.compose(&tx, &ty).sub(&py);
    let g = genus3_curve();
    u.vanishes_on(&g) && v.vanishes_on(&g)
}

/// `(x, y) = 3(u, v)` carries `v^2 = 3(u^3 - 1)` onto `y^2 = x^3 - 27`.
fn scaling_onto_36a3() -> bool {
    let three = |p: BiPoly| BiFrac::poly(p.scale(&rat(3)));
    let pulled = curve_eq(&bx("x^3 - 27")).compose(&three(BiPoly::x()), &three(BiPoly::y()));
    let source = &BiPoly::y().pow(2) - &bx("3(x^3 - 1)");
    let exact = pulled.num == source.scale(&rat(9)) && pulled.den == BiPoly::one();
    exact && pulled.vanishes_on(&bx("3(x^3 - 1)"))
}

/// Division polynomials of `y^2 = x^3 + s` (`psi2 = x^3 + s`, `psi3 = x(x^3 + 4s)`)
/// and `y^2 = x^3 + s x` (`psi2 = x(x^2 + s)`, `psi4/psi2 = (x^2 - s)(x^4 + 6 s x^2 + s^2)`),
/// over Q[s]. In the library's normalization `psi2 = B/4`, `psi3 = f3/3`, `psi4/psi2 = f4/2`.
fn cm_formulas_symbolic() -> bool {
    let s = BiPoly::y();
    let x = BiPoly::x();
    let zero = BiPoly::zero();
    let c = |k: i64| BiPoly::int(k);
    let b = [zero.clone(), zero.clone(), &c(4) * &s, zero.clone()];
    let (f3, big_b) = division_polynomial_generic(&b, 3);
    let psi2 = &x.pow(3) + &s;
    let psi3 = &x * &(&x.pow(3) + &(&c(4) * &s));
    let ok0 = big_b.scale(&ratio(1, 4)) == psi2 && f3.scale(&ratio(1, 3)) == psi3;
    let b = [zero.clone(), &c(2) * &s, zero.clone(), -&(&s * &s)];
    let (f4, big_b) = division_polynomial_generic(&b, 4);
    let psi2 = &x * &(&x.pow(2) + &s);
    let quartic = &(&x.pow(4) + &(&(&c(6) * &s) * &x.pow(2))) + &s.pow(2);
    let quotient = &(&x.pow(2) - &s) * &quartic;
    let ok1728 = big_b.scale(&ratio(1, 4)) == psi2 && f4.scale(&ratio(1, 2)) == quotient;
    ok0 && ok1728
}

/// The same shapes at more specializations of `s` than their s-degree, against the
/// library's numeric division polynomials, up to scalars.
fn cm_formulas_specialized() -> bool {
    let same_roots = |a: &UniPoly, b: &UniPoly| a.monic() == b.monic();
    let mut ok = true;
    for s in (-4i64..=4).filter(|s| *s != 0) {
        let sq = format!("({s})");
        let e0 = WeierstrassCurve::from_ints([0, 0, 0, 0, s]).unwrap();
        let psi3 = parse_poly(&format!("x(x^3 + 4{sq})"), 'x').unwrap();
        ok &= same_roots(&division_polynomial(&e0, 3).unwrap(), &psi3);
        let psi2 = parse_poly(&format!("x^3 + {sq}"), 'x').unwrap();
        ok &= same_roots(&division_polynomial(&e0, 2).unwrap(), &psi2);
        let e1728 = WeierstrassCurve::from_ints([0, 0, 0, s, 0]).unwrap();
        let psi4 = parse_poly(&format!("x(x^2 - {sq})(x^2 + {sq})(x^4 + 6{sq}x^2 + {sq}^2)"), 'x').unwrap();
        ok &= same_roots(&division_polynomial(&e1728, 4).unwrap(), &psi4);
    }
    ok
}

/// Every identity by name, with its outcome.
pub fn proof_identities() -> Vec<(&'static str, bool)> {
    vec![
        ("disc of E_X(3)(t) = 2^12 3^9 (t^3 - 1)^3", x3_discriminant()),
        ("(x, y) = 3(u, v): v^2 = 3(u^3 - 1) onto y^2 = x^3 - 27", scaling_onto_36a3()),
        ("tau o tau = id", tau_involution()),
        ("tau maps C to C", tau_preserves_curve()),
        ("pi maps C to v^2 = u^3 + u^2 - u", pi_lands_on_quotient()),
        ("pi o tau = pi on C", pi_is_tau_invariant()),
        ("disc of E' over the Xs(5) j-line", xs5_discriminant()),
        ("psi2, psi3 of y^2 = x^3 + s and psi2, psi4/psi2 of y^2 = x^3 + s x over Q[s]", cm_formulas_symbolic()),
        ("the same division polynomials at s = -4..4", cm_formulas_specialized()),
        ("j of E_X(3)(t) = j_X(3)(t)", jline_matches_model("X(3)")),
        ("j of E_X(5)(t) = j_X(5)(t)", jline_matches_model("X(5)")),
        ("j of E_t = j(E_t) display", jline_matches_model("Et6")),
    ]
}

/// Exact audit of all identities; zero counterexamples expected.
pub fn audit_proof_identities() -> AuditReport {
    let mut r = AuditReport::new("proof_identities", "exact");
    for (name, ok) in proof_identities() {
        r.check(ok, || name.to_string());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        for (name, ok) in proof_identities() {
            assert!(ok, "{name}");
        }
        assert!(audit_proof_identities().passed());
    }

    #[test]
    fn perturbed_identities_fail() {
        // wrong exponent in the X(3) discriminant
        let d = discriminant_generic(&x3_model());
        let t3m1 = &UniPoly::x().pow(3) - &UniPoly::one();
        assert_ne!(d, t3m1.pow(2).scale(&rat(2i64.pow(12) * 3i64.pow(9))));
        // tau with 24 instead of 25 does not preserve C
        let tx = BiFrac::new(BiPoly::int(5), BiPoly::x());
        let ty = BiFrac::new(BiPoly::y().scale(&rat(24)), BiPoly::x().pow(4));
        assert!(!curve_eq(&genus3_curve()).compose(&tx, &ty).vanishes_on(&genus3_curve()));
        // pi does not land on v^2 = u^3 + u^2 + u
        let (px, py) = pi();
        assert!(!curve_eq(&bx("x^3 + x^2 + x")).compose(&px, &py).vanishes_on(&genus3_curve()));
    }

    #[test]
    fn ratfn_arithmetic() {
        let t = RatFn::poly(UniPoly::x());
        let one = RatFn::int(1);
        let f = &(&t + &one) * &(&t - &one).inv();
        let g = &one + &(&RatFn::int(2) * &(&t - &one).inv());
        assert_eq!(f, g);
        assert!((&f - &g).is_zero());
        assert_eq!(f.den, UniPoly::from_ints(&[-1, 1]));
    }
}
