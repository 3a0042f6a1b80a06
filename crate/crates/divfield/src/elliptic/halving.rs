use super::point::scalar_mul;
use super::{CurvePoint, EllipticError, WeierstrassCurve};
use crate::algebra_core::{factor_over_q, rat, ratio, Rational, UniPoly};
use crate::multiquad::{adjoin_sqrt, mq_field, sqrt_in, Adjoined, MqElement, MqField};
use std::sync::Arc;

/// Roots of the monic 2-division cubic inside `Q(E[2])` when that field is Q or
/// quadratic: rational roots ascending, then `(-b +- sqrt(D))/2`.
pub fn two_division_roots(e: &WeierstrassCurve) -> Result<(Arc<MqField>, [MqElement; 3]), EllipticError> {
    let cubic = e.monic_two_division_poly();
    let fac = factor_over_q(&cubic).expect("cubic");
    let mut lin: Vec<Rational> = Vec::new();
    let mut quad = None;
    for (g, m) in &fac.factors {
        match g.deg() {
            1 => {
                for _ in 0..*m {
                    lin.push(-g.monic().coeff(0));
                }
            }
            2 => quad = Some(g.monic()),
            _ => return Err(EllipticError::TwoTorsionNotSplit),
        }
    }
    lin.sort();
    match quad {
        None => {
            let k = MqField::rationals();
            let r: Vec<MqElement> = lin.into_iter().map(|q| MqElement::from_rational(&k, q)).collect();
            Ok((k, r.try_into().unwrap()))
        }
        Some(q) => {
            let (b, c) = (q.coeff(1), q.coeff(0));
            let disc = &b * &b - rat(4) * &c;
            let k = mq_field(&[disc.clone()]).expect("nonzero discriminant");
            let sd = MqElement::sqrt_rational(&k, &disc).unwrap();
            let half = MqElement::from_rational(&k, -b / rat(2));
            let r1 = &half + &sd.scale(&ratio(1, 2));
            let r2 = &half - &sd.scale(&ratio(1, 2));
            Ok((k.clone(), [MqElement::from_rational(&k, lin[0].clone()), r1, r2]))
        }
    }
}

/// Roots of the 2-division cubic embedded in `field`.
fn roots_in(e: &WeierstrassCurve, field: &Arc<MqField>) -> Result<[MqElement; 3], EllipticError> {
    let (k, roots) = two_division_roots(e)?;
    if !k.is_subfield_of(field) {
        return Err(EllipticError::TwoTorsionNotSplit);
    }
    Ok(roots.map(|r| r.embed(field).expect("subfield")))
}

/// `[x0 - e1, x0 - e2, x0 - e3]` for the roots `e_i` of the 2-division cubic; the point is
/// halvable over its field iff all three are squares there. `O` gives three zeros.
pub fn halving_obstruction(
    e: &WeierstrassCurve,
    p: &CurvePoint<MqElement>,
    field: &Arc<MqField>,
) -> Result<[MqElement; 3], EllipticError> {
    let roots = roots_in(e, field)?;
    match p {
        CurvePoint::Infinity => Ok(roots.map(|r| MqElement::zero(r.field()))),
        CurvePoint::Affine(x0, _) => {
            let x0 = x0.embed(field).map_err(|_| EllipticError::CoordinateFieldMismatch)?;
            Ok(roots.map(|r| &x0 - &r))
        }
    }
}

/// Value of `y'^2 = (x - e1)(x - e2)(x - e3)` where `y' = y + (a1 x + a3)/2`.
fn y_from_x(e: &WeierstrassCurve, x: &MqElement, yprime: &MqElement) -> MqElement {
    let k = x.field();
    let shift = &x.scale(e.a1()) + &MqElement::from_rational(k, e.a3().clone());
    yprime - &shift.scale(&ratio(1, 2))
}

/// A point `Q` over `field` with `2Q = p`, if one exists there.
pub fn halve_point(e: &WeierstrassCurve, p: &CurvePoint<MqElement>, field: &Arc<MqField>) -> Result<Option<CurvePoint<MqElement>>, EllipticError> {
    let p = match p {
        CurvePoint::Infinity => return Ok(Some(CurvePoint::Infinity)),
        CurvePoint::Affine(x, y) => CurvePoint::Affine(
            x.embed(field).map_err(|_| EllipticError::CoordinateFieldMismatch)?,
            y.embed(field).map_err(|_| EllipticError::CoordinateFieldMismatch)?,
        ),
    };
    let obs = halving_obstruction(e, &p, field)?;
    let mut r = Vec::new();
    for o in &obs {
        if o.is_zero() {
            r.push(o.clone());
            continue;
        }
        match sqrt_in(o).expect("nonzero") {
            Some(s) => r.push(s),
            None => return Ok(None),
        }
    }
    let x0 = p.x().unwrap().clone();
    let cubic = e.monic_two_division_poly();
    for signs in 0..8u32 {
        let ri: Vec<MqElement> = (0..3).map(|i| if signs >> i & 1 == 1 { -&r[i] } else { r[i].clone() }).collect();
        let x1 = &(&(&x0 + &(&ri[0] * &ri[1])) + &(&ri[0] * &ri[2])) + &(&ri[1] * &ri[2]);
        let rhs = eval_mq(&cubic, &x1);
        let yp = if rhs.is_zero() {
            rhs.clone()
        } else {
            match sqrt_in(&rhs).expect("nonzero") {
                Some(s) => s,
                None => continue,
            }
        };
        for yp in [yp.clone(), -&yp] {
            let q = CurvePoint::Affine(x1.clone(), y_from_x(e, &x1, &yp));
            if scalar_mul(e, 2, &q)? == p {
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

fn eval_mq(f: &UniPoly, x: &MqElement) -> MqElement {
    f.coeffs().iter().rev().fold(MqElement::zero(x.field()), |acc, c| {
        &(&acc * x) + &MqElement::from_rational(x.field(), c.clone())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Halved {
    Point { field: Arc<MqField>, point: CurvePoint<MqElement> },
    NotPolyquadratic,
}

/// Halve `p`, adjoining square roots of the obstructions as needed.
pub fn halve_point_extending(
    e: &WeierstrassCurve,
    p: &CurvePoint<MqElement>,
    field: &Arc<MqField>,
) -> Result<Halved, EllipticError> {
    let mut k = field.clone();
    let obs = halving_obstruction(e, p, field)?;
    for o in &obs {
        if o.is_zero() {
            continue;
        }
        let o = o.embed(&k).unwrap();
        match adjoin_sqrt(&o).unwrap() {
            Adjoined::Unchanged { .. } => {}
            Adjoined::Extended { field, .. } => k = field,
            Adjoined::NotPolyquadratic => return Ok(Halved::NotPolyquadratic),
        }
    }
    match halve_point(e, p, &k)? {
        Some(point) => Ok(Halved::Point { field: k, point }),
        None => unreachable!("all obstructions are squares"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FourTorsion {
    Field(Arc<MqField>),
    NotPolyquadratic,
}

/// `Q(E[4]) = F(sqrt(-1), sqrt(a - b), sqrt(a - c), sqrt(b - c))` over `F = Q(E[2])`.
pub fn four_torsion_field(e: &WeierstrassCurve) -> FourTorsion {
    let Ok((f0, [a, b, c])) = two_division_roots(e) else { return FourTorsion::NotPolyquadratic };
    let mut k = f0.clone();
    let gens = [MqElement::from_rational(&f0, rat(-1)), &a - &b, &a - &c, &b - &c];
    for g in &gens {
        let g = g.embed(&k).unwrap();
        match adjoin_sqrt(&g).unwrap() {
            Adjoined::Unchanged { .. } => {}
            Adjoined::Extended { field, .. } => k = field,
            Adjoined::NotPolyquadratic => return FourTorsion::NotPolyquadratic,
        }
    }
    FourTorsion::Field(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::point::point_order;
    use num_bigint::BigInt;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_ints(a).unwrap()
    }

    fn classes(k: &MqField) -> Vec<i64> {
        k.basis_i64()
    }

    #[test]
    fn obstruction_values() {
        let e = curve([0, 0, 0, -1, 0]);
        let q = MqField::rationals();
        let p = CurvePoint::Affine(rat(0), rat(0)).lift(&q);
        let obs = halving_obstruction(&e, &p, &q).unwrap();
        let vals: Vec<Rational> = obs.iter().map(|o| o.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![rat(1), rat(0), rat(-1)]);
        assert_eq!(halve_point(&e, &p, &q).unwrap(), None);
        let zeros = halving_obstruction(&e, &CurvePoint::Infinity, &q).unwrap();
        assert!(zeros.iter().all(|z| z.is_zero()));
        assert_eq!(halve_point(&e, &CurvePoint::Infinity, &q).unwrap(), Some(CurvePoint::Infinity));
    }

    #[test]
    fn halving_over_gaussian_and_zeta8() {
        let e = curve([0, 0, 0, -1, 0]);
        let ki = mq_field(&[rat(-1)]).unwrap();
        let p = CurvePoint::Affine(rat(0), rat(0)).lift(&ki);
        let q = halve_point(&e, &p, &ki).unwrap().unwrap();
        assert_eq!(scalar_mul(&e, 2, &q).unwrap(), p);
        let i = MqElement::basis_element(&ki, 1);
        assert!(q.x() == Some(&i) || q.x() == Some(&-&i));
        let z8 = mq_field(&[rat(-1), rat(2)]).unwrap();
        let q = halve_point(&e, &p, &z8).unwrap().unwrap();
        assert_eq!(point_order(&e, &q, 12), Some(4));
    }

    #[test]
    fn not_split() {
        let e = curve([0, 0, 0, 0, 2]);
        let q = MqField::rationals();
        let p = CurvePoint::Affine(rat(-1), rat(1)).lift(&q);
        assert_eq!(halve_point(&e, &p, &q), Err(EllipticError::TwoTorsionNotSplit));
        // y^2 = x^3 + 1: one rational root, Q(E[2]) = Q(sqrt(-3))
        let e = curve([0, 0, 0, 0, 1]);
        assert_eq!(halve_point(&e, &CurvePoint::Affine(rat(0), rat(1)).lift(&q), &q), Err(EllipticError::TwoTorsionNotSplit));
        let (k, _) = two_division_roots(&e).unwrap();
        assert_eq!(classes(&k), vec![-3]);
    }

    #[test]
    fn halving_extends_field() {
        let e = curve([0, 0, 0, -1, 0]);
        let q = MqField::rationals();
        let p = CurvePoint::Affine(rat(0), rat(0)).lift(&q);
        match halve_point_extending(&e, &p, &q).unwrap() {
            Halved::Point { field, point } => {
                assert_eq!(classes(&field), vec![-1]);
                assert_eq!(scalar_mul(&e, 2, &point).unwrap(), p.embed(&field).unwrap());
            }
            Halved::NotPolyquadratic => panic!(),
        }
        // (1, 0) on y^2 = x^3 - x: obstructions 1, 2 -> adjoin sqrt(2)
        let p = CurvePoint::Affine(rat(1), rat(0)).lift(&q);
        let Halved::Point { field, point } = halve_point_extending(&e, &p, &q).unwrap() else { panic!() };
        assert_eq!(classes(&field), vec![2]);
        assert_eq!(point_order(&e, &point, 12), Some(4));
    }

    #[test]
    fn four_torsion_examples() {
        let f = |a| match four_torsion_field(&curve(a)) {
            FourTorsion::Field(k) => Some(classes(&k)),
            FourTorsion::NotPolyquadratic => None,
        };
        assert_eq!(f([0, 0, 0, -1, 0]), Some(vec![-1, 2]));
        // y^2 = x(x - 1)(x + 3) = x^3 + 2x^2 - 3x
        assert_eq!(f([0, 2, 0, -3, 0]), Some(vec![-1, 3]));
        assert_eq!(f([0, 0, 0, 0, 1]), None);
        assert_eq!(f([0, 0, 0, 0, 2]), None);
        assert_eq!(f([1, 1, 1, -10, -10]), Some(vec![-1]));
    }

    /// Points of order dividing 4 over F_p, by brute force.
    fn four_torsion_count_mod_p(a: [i64; 5], p: i64) -> usize {
        let m = |v: i64| v.rem_euclid(p);
        let inv = |v: i64| (1..p).find(|k| m(v * k) == 1).unwrap();
        let add = |u: Option<(i64, i64)>, v: Option<(i64, i64)>| -> Option<(i64, i64)> {
            let ((x1, y1), (x2, y2)) = match (u, v) {
                (None, w) | (w, None) => return w,
                (Some(u), Some(v)) => (u, v),
            };
            let l = if x1 == x2 {
                let den = m(2 * y1 + a[0] * x1 + a[2]);
                if den == 0 {
                    return None;
                }
                m((3 * x1 * x1 + 2 * a[1] * x1 + a[3] - a[0] * y1) * inv(den))
            } else {
                m((y2 - y1) * inv(m(x2 - x1)))
            };
            let x3 = m(l * l + a[0] * l - a[1] - x1 - x2);
            let y3 = m(-(l + a[0]) * x3 - (y1 - l * x1) - a[2]);
            Some((x3, y3))
        };
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if m(y * y + a[0] * x * y + a[2] * y - (x * x * x + a[1] * x * x + a[3] * x + a[4])) != 0 {
                    continue;
                }
                let q = Some((x, y));
                let q2 = add(q, q);
                if add(q2, q2).is_none() {
                    n += 1;
                }
            }
        }
        n
    }

    /// Good primes split completely in Q(E[4]) exactly when E[4] is F_p-rational.
    #[test]
    fn four_torsion_matches_frobenius_oracle() {
        for a in [[1, 1, 1, -10, -10], [0, 0, 0, -1, 0], [0, 2, 0, -3, 0], [1, 1, 1, -135, -660], [0, 0, 0, -4, 0]] {
            let e = curve(a);
            let FourTorsion::Field(k) = four_torsion_field(&e) else { panic!("{a:?}") };
            for p in [7i64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 113] {
                let disc: BigInt = e.disc.numer().clone();
                if (&disc % p) == BigInt::from(0) {
                    continue;
                }
                let split = k.basis_i64().iter().all(|&d| (1..p).any(|t| (t * t - d).rem_euclid(p) == 0));
                assert_eq!(four_torsion_count_mod_p(a, p) == 16, split, "{a:?} p={p}");
            }
        }
    }

    #[test]
    fn four_torsion_contains_i() {
        for a in [[0, 0, 0, -1, 0], [0, 2, 0, -3, 0], [1, 1, 1, -10, -10], [0, 0, 0, 1, 0], [0, 0, 0, -4, 0], [1, 1, 1, -135, -660]] {
            if let FourTorsion::Field(k) = four_torsion_field(&curve(a)) {
                assert!(k.contains_class(&BigInt::from(-1)));
            }
        }
    }
}
