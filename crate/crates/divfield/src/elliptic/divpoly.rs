use super::{EllipticError, WeierstrassCurve};
use crate::algebra_core::{rat, BiPoly, UniPoly};
use std::ops::{Add, Mul, Sub};

/// Polynomial rings in which division polynomials are built: Q[x] and Q[s][x].
pub trait DivPolyRing: Clone + PartialEq
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Sub<&'a Self, Output = Self> + Mul<&'a Self, Output = Self>,
{
    fn int(n: i64) -> Self;
    fn var_x() -> Self;
}

impl DivPolyRing for UniPoly {
    fn int(n: i64) -> Self {
        UniPoly::constant(rat(n))
    }
    fn var_x() -> Self {
        UniPoly::x()
    }
}

impl DivPolyRing for BiPoly {
    fn int(n: i64) -> Self {
        BiPoly::int(n)
    }
    fn var_x() -> Self {
        BiPoly::x()
    }
}

struct Recursion<R> {
    b: R,
    memo: Vec<Option<R>>,
}

impl<R: DivPolyRing> Recursion<R>
where
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R>,
{
    fn f(&mut self, n: usize) -> R {
        if let Some(v) = &self.memo[n] {
            return v.clone();
        }
        let v = if n % 2 == 1 {
            let m = (n - 1) / 2;
            let a = &self.f(m + 2) * &self.f(m).pow3();
            let c = &self.f(m - 1) * &self.f(m + 1).pow3();
            let b2 = &self.b * &self.b;
            if m % 2 == 0 {
                &(&b2 * &a) - &c
            } else {
                &a - &(&b2 * &c)
            }
        } else {
            let m = n / 2;
            let fm1 = self.f(m - 1);
            let fp1 = self.f(m + 1);
            let inner = &(&self.f(m + 2) * &(&fm1 * &fm1)) - &(&self.f(m - 2) * &(&fp1 * &fp1));
            &self.f(m) * &inner
        };
        self.memo[n] = Some(v.clone());
        v
    }
}

trait Pow3 {
    fn pow3(&self) -> Self;
}

impl<R: Clone> Pow3 for R
where
    for<'a> &'a R: Mul<&'a R, Output = R>,
{
    fn pow3(&self) -> R {
        &(self * self) * self
    }
}

/// `f_n` with `psi_n = f_n` for odd n and `psi_n = (2y + a1 x + a3) f_n` for even n,
/// from `[b2, b4, b6, b8]` in the coefficient ring. Returns `(f_n, B)` where
/// `B = 4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn division_polynomial_generic<R: DivPolyRing>(b: &[R; 4], n: usize) -> (R, R)
where
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R>,
{
    let [b2, b4, b6, b8] = b;
    let x = R::var_x();
    let c = R::int;
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let x4 = &x3 * &x;
    let x5 = &x4 * &x;
    let x6 = &x5 * &x;
    let big_b = &(&(&(&c(4) * &x3) + &(b2 * &x2)) + &(&(&c(2) * b4) * &x)) + b6;
    let f3 = &(&(&(&(&c(3) * &x4) + &(b2 * &x3)) + &(&(&c(3) * b4) * &x2)) + &(&(&c(3) * b6) * &x)) + b8;
    let f4 = [
        &c(2) * &x6,
        b2 * &x5,
        &(&c(5) * b4) * &x4,
        &(&c(10) * b6) * &x3,
        &(&c(10) * b8) * &x2,
        &(&(b2 * b8) - &(b4 * b6)) * &x,
        &(b4 * b8) - &(b6 * b6),
    ]
    .iter()
    .fold(c(0), |a, t| &a + t);
    let mut memo = vec![None; (n + 3).max(5)];
    memo[0] = Some(c(0));
    memo[1] = Some(c(1));
    memo[2] = Some(c(1));
    memo[3] = Some(f3);
    memo[4] = Some(f4);
    let mut rec = Recursion { b: big_b.clone(), memo };
    (rec.f(n), big_b)
}

fn b_invariants(e: &WeierstrassCurve) -> [UniPoly; 4] {
    [&e.b2, &e.b4, &e.b6, &e.b8].map(|b| UniPoly::constant(b.clone()))
}

/// `f_n` over Q (no y-factor, no normalization).
pub(crate) fn raw_division_poly(e: &WeierstrassCurve, n: usize) -> UniPoly {
    division_polynomial_generic(&b_invariants(e), n).0
}

/// Primitive x-polynomial vanishing exactly on x-coordinates of nonzero points of
/// order dividing n: `f_n` for odd n, `B * f_n` for even n.
pub fn division_polynomial_unbounded(e: &WeierstrassCurve, n: u32) -> UniPoly {
    let (f, b) = division_polynomial_generic(&b_invariants(e), n as usize);
    let g = if n % 2 == 0 { &b * &f } else { f };
    g.primitive()
}

pub fn division_polynomial(e: &WeierstrassCurve, n: u32) -> Result<UniPoly, EllipticError> {
    if !(2..=10).contains(&n) {
        return Err(EllipticError::UnsupportedN(n));
    }
    Ok(division_polynomial_unbounded(e, n))
}

/// `x(2P) = N(x) / D(x)`.
pub fn doubling_map(e: &WeierstrassCurve) -> (UniPoly, UniPoly) {
    let n = UniPoly::new(vec![-e.b8.clone(), -(rat(2) * &e.b6), -e.b4.clone(), rat(0), rat(1)]);
    (n, e.two_division_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{factor_over_q, poly_identity_check, ratio};
    use num_traits::Zero;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn small_examples() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 0, 2]).unwrap();
        assert_eq!(division_polynomial(&e, 3).unwrap(), p(&[0, 8, 0, 0, 1]));
        let e = WeierstrassCurve::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!(division_polynomial(&e, 2).unwrap(), p(&[0, 1, 0, 1]));
        let psi4 = division_polynomial(&e, 4).unwrap();
        let quo = psi4.exact_div(&division_polynomial(&e, 2).unwrap()).unwrap();
        assert_eq!(quo, &p(&[-1, 0, 1]) * &p(&[1, 0, 6, 0, 1]));
        assert_eq!(division_polynomial(&e, 11), Err(EllipticError::UnsupportedN(11)));
        assert_eq!(division_polynomial(&e, 1), Err(EllipticError::UnsupportedN(1)));
    }

    #[test]
    fn degrees() {
        let e = WeierstrassCurve::from_ints([1, 1, 1, -10, -10]).unwrap();
        for n in 2..=10u32 {
            let expect = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 + 3 };
            assert_eq!(division_polynomial(&e, n).unwrap().deg() as u32, expect, "n = {n}");
        }
    }

    /// Division polynomials from iterated point arithmetic: nonzero points of order
    /// dividing n are exactly the roots, checked on rational torsion points.
    #[test]
    fn roots_match_torsion_points() {
        // 15a1 has rational torsion Z/2 x Z/4; 14a1 has Z/6.
        for (a, pts) in [
            ([1, 1, 1, -10, -10], vec![(rat(-2), rat(-2)), (rat(8), rat(18)), (ratio(-13, 4), ratio(9, 8))]),
            ([1, 0, 1, 4, -6], vec![(rat(2), rat(2)), (rat(1), rat(-1))]),
        ] {
            let e = WeierstrassCurve::from_ints(a).unwrap();
            for (x, y) in pts {
                assert!(e.on_curve(&x, &y));
                let pt = super::super::CurvePoint::Affine(x.clone(), y);
                let ord = super::super::point::point_order(&e, &pt, 12).unwrap();
                for n in 2..=10u32 {
                    let v = division_polynomial(&e, n).unwrap().eval(&x);
                    assert_eq!(v.is_zero(), n % ord == 0, "order {ord}, n {n}");
                }
            }
        }
    }

    #[test]
    fn family_identities_over_q_s() {
        let s = BiPoly::y();
        let zero = BiPoly::zero();
        // y^2 = x^3 + s: b2 = 0, b4 = 0, b6 = 4s, b8 = 0
        let b = [zero.clone(), zero.clone(), &BiPoly::int(4) * &s, zero.clone()];
        let (f3, big_b) = division_polynomial_generic(&b, 3);
        let x = BiPoly::x();
        let x3 = x.pow(3);
        assert!(poly_identity_check(&big_b.scale(&ratio(1, 4)), &(&x3 + &s)));
        let expect3 = &BiPoly::int(3) * &(&x * &(&x3 + &(&BiPoly::int(4) * &s)));
        assert!(poly_identity_check(&f3, &expect3));
        // y^2 = x^3 + s x: b4 = 2s, b8 = -s^2
        let b = [zero.clone(), &BiPoly::int(2) * &s, zero.clone(), -&(&s * &s)];
        let (f4, _) = division_polynomial_generic(&b, 4);
        let x2 = &x * &x;
        let quartic = &(&(&x2 * &x2) + &(&(&BiPoly::int(6) * &s) * &x2)) + &(&s * &s);
        let rhs = &(&x2 - &s) * &quartic;
        assert!(poly_identity_check(&f4.scale(&ratio(1, 2)), &rhs));
    }

    #[test]
    fn psi8_new_part_has_degree_24() {
        let e = WeierstrassCurve::from_ints([1, 1, 1, -10, -10]).unwrap();
        let q = division_polynomial(&e, 8).unwrap().exact_div(&division_polynomial(&e, 4).unwrap()).unwrap();
        assert_eq!(q.deg(), 24);
        assert!(factor_over_q(&q).is_ok());
    }
}
