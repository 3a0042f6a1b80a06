use super::{EllipticError, FieldElem, WeierstrassCurve};
use crate::algebra_core::Rational;
use crate::multiquad::{MqElement, MqError, MqField};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint<F> {
    Infinity,
    Affine(F, F),
}

impl<F: FieldElem> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine(_, y) => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn on_curve(&self, e: &WeierstrassCurve) -> bool {
        let CurvePoint::Affine(x, y) = self else { return true };
        let c = |q: &Rational| x.from_rational_like(q);
        let [a1, a2, a3, a4, a6] = e.a_invariants();
        let lhs = y.f_mul(y).f_add(&c(a1).f_mul(x).f_mul(y)).f_add(&c(a3).f_mul(y));
        let x2 = x.f_mul(x);
        let rhs = x2.f_mul(x).f_add(&c(a2).f_mul(&x2)).f_add(&c(a4).f_mul(x)).f_add(&c(a6));
        lhs == rhs
    }

    pub fn neg(&self, e: &WeierstrassCurve) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let t = x.from_rational_like(e.a1()).f_mul(x).f_add(&x.from_rational_like(e.a3()));
                CurvePoint::Affine(x.clone(), y.f_neg().f_sub(&t))
            }
        }
    }
}

impl CurvePoint<Rational> {
    /// The same point with coordinates in a multiquadratic field.
    pub fn lift(&self, field: &Arc<MqField>) -> CurvePoint<MqElement> {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(
                MqElement::from_rational(field, x.clone()),
                MqElement::from_rational(field, y.clone()),
            ),
        }
    }
}

impl CurvePoint<MqElement> {
    pub fn embed(&self, field: &Arc<MqField>) -> Result<Self, MqError> {
        Ok(match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.embed(field)?, y.embed(field)?),
        })
    }
}

/// Chord-tangent addition on the long Weierstrass model.
pub fn add_points<F: FieldElem>(
    e: &WeierstrassCurve,
    p: &CurvePoint<F>,
    q: &CurvePoint<F>,
) -> Result<CurvePoint<F>, EllipticError> {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return Ok(q.clone()),
        (_, CurvePoint::Infinity) => return Ok(p.clone()),
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    if !(x1.same_field(x2) && x1.same_field(y1) && x2.same_field(y2)) {
        return Err(EllipticError::CoordinateFieldMismatch);
    }
    let c = |r: &Rational| x1.from_rational_like(r);
    let [a1, a2, a3, a4, a6] = e.a_invariants().clone().map(|r| c(&r));
    let (lambda, nu) = if x1 == x2 {
        let denom = y1.f_add(y2).f_add(&a1.f_mul(x2)).f_add(&a3);
        if denom.f_is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let den = c(&Rational::from_integer(2.into())).f_mul(y1).f_add(&a1.f_mul(x1)).f_add(&a3);
        let inv = den.f_inv().expect("nonzero tangent denominator");
        let x1sq = x1.f_mul(x1);
        let three = c(&Rational::from_integer(3.into()));
        let two = c(&Rational::from_integer(2.into()));
        let num_l = three.f_mul(&x1sq).f_add(&two.f_mul(&a2).f_mul(x1)).f_add(&a4).f_sub(&a1.f_mul(y1));
        let num_n = x1sq.f_mul(x1).f_neg().f_add(&a4.f_mul(x1)).f_add(&two.f_mul(&a6)).f_sub(&a3.f_mul(y1));
        (num_l.f_mul(&inv), num_n.f_mul(&inv))
    } else {
        let inv = x2.f_sub(x1).f_inv().expect("distinct x");
        let lambda = y2.f_sub(y1).f_mul(&inv);
        let nu = y1.f_mul(x2).f_sub(&y2.f_mul(x1)).f_mul(&inv);
        (lambda, nu)
    };
    let x3 = lambda.f_mul(&lambda).f_add(&a1.f_mul(&lambda)).f_sub(&a2).f_sub(x1).f_sub(x2);
    let y3 = lambda.f_add(&a1).f_mul(&x3).f_neg().f_sub(&nu).f_sub(&a3);
    Ok(CurvePoint::Affine(x3, y3))
}

/// Double-and-add; negative multipliers use the inverse point.
pub fn scalar_mul<F: FieldElem>(e: &WeierstrassCurve, m: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>, EllipticError> {
    let mut base = if m < 0 { p.neg(e) } else { p.clone() };
    let mut k = m.unsigned_abs();
    let mut acc = CurvePoint::Infinity;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_points(e, &acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = add_points(e, &base, &base)?;
        }
    }
    Ok(acc)
}

/// Exact order of a point, if at most `bound`.
pub(crate) fn point_order<F: FieldElem>(e: &WeierstrassCurve, p: &CurvePoint<F>, bound: u32) -> Option<u32> {
    let mut q = p.clone();
    for k in 1..=bound {
        if q.is_infinity() {
            return Some(k);
        }
        q = add_points(e, &q, p).ok()?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rat;
    use crate::multiquad::mq_field;

    #[test]
    fn doubling_over_gaussian_field() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let k = mq_field(&[rat(-1)]).unwrap();
        let i = MqElement::basis_element(&k, 1);
        let one = MqElement::one(&k);
        let p = CurvePoint::Affine(i.clone(), &one - &i);
        assert!(p.on_curve(&e));
        let two_p = scalar_mul(&e, 2, &p).unwrap();
        assert_eq!(two_p, CurvePoint::Affine(MqElement::zero(&k), MqElement::zero(&k)));
        assert_eq!(scalar_mul(&e, 4, &p).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn eleven_a1_five_torsion() {
        let e = WeierstrassCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        let p = CurvePoint::Affine(rat(5), rat(5));
        assert!(p.on_curve(&e));
        assert_eq!(scalar_mul(&e, 5, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(point_order(&e, &p, 12), Some(5));
        let o: CurvePoint<Rational> = CurvePoint::Infinity;
        assert_eq!(scalar_mul(&e, 7, &o).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn mismatched_fields() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let k1 = mq_field(&[rat(-1)]).unwrap();
        let k2 = mq_field(&[rat(2)]).unwrap();
        let p = CurvePoint::Affine(MqElement::zero(&k1), MqElement::zero(&k1));
        let q = CurvePoint::Affine(MqElement::one(&k2), MqElement::zero(&k2));
        assert_eq!(add_points(&e, &p, &q), Err(EllipticError::CoordinateFieldMismatch));
    }
}
