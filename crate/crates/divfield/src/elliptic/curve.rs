use super::EllipticError;
use crate::algebra_core::{format_rational, rat, squarefree_part, Rational, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with cached invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    a: [Rational; 5],
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

impl WeierstrassCurve {
    pub fn new(a: [Rational; 5]) -> Result<Self, EllipticError> {
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = a1 * a1 + rat(4) * a2;
        let b4 = rat(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat(4) * a6;
        let b8 = a1 * a1 * a6 + rat(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - rat(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + rat(36) * &b2 * &b4 - rat(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6 + rat(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(EllipticError::SingularCurve);
        }
        let j = &c4 * &c4 * &c4 / &disc;
        Ok(WeierstrassCurve { a, b2, b4, b6, b8, c4, c6, disc, j })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, EllipticError> {
        Self::new(a.map(rat))
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: Rational, a6: Rational) -> Result<Self, EllipticError> {
        Self::new([Rational::zero(), Rational::zero(), Rational::zero(), a4, a6])
    }

    pub fn a_invariants(&self) -> &[Rational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Rational {
        &self.a[0]
    }
    pub fn a2(&self) -> &Rational {
        &self.a[1]
    }
    pub fn a3(&self) -> &Rational {
        &self.a[2]
    }
    pub fn a4(&self) -> &Rational {
        &self.a[3]
    }
    pub fn a6(&self) -> &Rational {
        &self.a[4]
    }

    /// `(c4, c6, disc, j)`.
    pub fn invariants(&self) -> (Rational, Rational, Rational, Rational) {
        (self.c4.clone(), self.c6.clone(), self.disc.clone(), self.j.clone())
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2`.
    pub fn two_division_poly(&self) -> UniPoly {
        UniPoly::new(vec![self.b6.clone(), rat(2) * &self.b4, self.b2.clone(), rat(4)])
    }

    /// Right-hand side of the completed-square model `y'^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4`.
    pub fn monic_two_division_poly(&self) -> UniPoly {
        self.two_division_poly().monic()
    }

    pub fn on_curve(&self, x: &Rational, y: &Rational) -> bool {
        let [a1, a2, a3, a4, a6] = &self.a;
        y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6
    }

    /// Model with integer coefficients via `a_i -> u^i a_i`, `u` the least positive integer that works.
    pub fn integral_model(&self) -> (WeierstrassCurve, BigInt) {
        let weights = [1u32, 2, 3, 4, 6];
        let mut u = BigInt::one();
        for (c, &w) in self.a.iter().zip(&weights) {
            // smallest v with v^w * c integral: per-prime valuation ceil(v_p(den)/w)
            let den = c.denom();
            if den.is_one() {
                continue;
            }
            for (p, e) in crate::algebra_core::factor_integer(den) {
                let need = (e as u32).div_ceil(w);
                let p = BigInt::from(p);
                let mut have = 0u32;
                let mut t = u.clone();
                while (&t % &p).is_zero() {
                    t /= &p;
                    have += 1;
                }
                if have < need {
                    u *= p.pow(need - have);
                }
            }
        }
        let scaled: Vec<Rational> = self
            .a
            .iter()
            .zip(&weights)
            .map(|(c, &w)| c * Rational::from_integer(u.pow(w)))
            .collect();
        let e = WeierstrassCurve::new(scaled.try_into().unwrap()).expect("scaling preserves nonsingularity");
        (e, u)
    }

    /// Short model `y^2 = x^3 - 27 c4 x - 54 c6`, isomorphic over Q.
    pub fn short_model(&self) -> WeierstrassCurve {
        WeierstrassCurve::short(rat(-27) * &self.c4, rat(-54) * &self.c6).unwrap()
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    pub fn coeff_strings(&self) -> [String; 5] {
        self.a.clone().map(|c| format_rational(&c))
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_strings().join(","))
    }
}

/// Twist by a squarefree integer `d`, via the completed-square model.
pub fn quadratic_twist(e: &WeierstrassCurve, d: &BigInt) -> WeierstrassCurve {
    assert!(!d.is_zero(), "twist parameter must be nonzero");
    if d.is_one() {
        return e.clone();
    }
    debug_assert!(squarefree_part(&Rational::from_integer(d.clone())).unwrap().squarefree == *d);
    let dq = Rational::from_integer(d.clone());
    let a2 = &e.b2 / rat(4) * &dq;
    let a4 = &e.b4 / rat(2) * &dq * &dq;
    let a6 = &e.b6 / rat(4) * &dq * &dq * &dq;
    WeierstrassCurve::new([Rational::zero(), a2, Rational::zero(), a4, a6]).expect("twist of a smooth curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::ratio;

    #[test]
    fn invariants_examples() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 0, 16]).unwrap();
        assert_eq!((e.disc.clone(), e.j.clone()), (rat(-110592), rat(0)));
        let e = WeierstrassCurve::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!((e.disc.clone(), e.j.clone()), (rat(-64), rat(1728)));
        let e = WeierstrassCurve::from_ints([0, 0, 0, 0, -27]).unwrap();
        assert_eq!((e.disc.clone(), e.j.clone()), (rat(-314928), rat(0)));
        assert_eq!(WeierstrassCurve::from_ints([0, 0, 0, 0, 0]), Err(EllipticError::SingularCurve));
        // 11a1
        let e = WeierstrassCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e.disc, rat(-161051));
        assert_eq!(e.j, ratio(-122023936, 161051));
        assert_eq!(rat(1728) * &e.disc, &e.c4 * &e.c4 * &e.c4 - &e.c6 * &e.c6);
    }

    #[test]
    fn twists() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 1, 0]).unwrap();
        let t = quadratic_twist(&e, &BigInt::from(-3));
        assert_eq!(t, WeierstrassCurve::from_ints([0, 0, 0, 9, 0]).unwrap());
        assert_eq!(quadratic_twist(&e, &BigInt::from(1)), e);
        let e = WeierstrassCurve::from_ints([1, 1, 1, -10, -10]).unwrap();
        assert_eq!(quadratic_twist(&e, &BigInt::from(5)).j, e.j);
    }

    #[test]
    fn integral_scaling() {
        let e = WeierstrassCurve::new([rat(0), rat(0), rat(0), ratio(1, 4), ratio(1, 8)]).unwrap();
        let (m, u) = e.integral_model();
        assert_eq!(u, BigInt::from(2));
        assert!(m.is_integral());
        assert_eq!(m.j, e.j);
    }
}
