use super::{ev, fmt_q, set_cyclotomic, ClassificationReport, FieldDescription, GroupType, Verdict};
use crate::algebra_core::{cubic_discriminant, cubic_galois, rat, ratio, squarefree_part, CubicGalois, Rational, UniPoly};
use crate::elliptic::{
    four_torsion_field, halve_point, halve_point_extending, rational_isogeny_kernels, two_division_roots, CurvePoint,
    FourTorsion, Halved, Kernel, WeierstrassCurve,
};
use crate::multiquad::{mq_field, subfield_generated_by, MqElement, MqField};
use num_bigint::BigInt;
use num_traits::One;
use std::sync::Arc;

const DIAGONALIZABILITY: &str = "diagonalizability lemma";
const WEIL: &str = "Weil pairing";
const TWO_POWER: &str = "abelian 2-power levels are polyquadratic";

fn eval_in(f: &UniPoly, x: &MqElement) -> MqElement {
    f.coeffs().iter().rev().fold(MqElement::zero(x.field()), |acc, c| {
        &(&acc * x) + &MqElement::from_rational(x.field(), c.clone())
    })
}

fn elementary_of(k: &MqField) -> GroupType {
    GroupType::elementary(k.depth() as u32)
}

fn weil_evidence(k: &MqField, class: i64, n: u32) -> super::Evidence {
    let ok = k.contains_class(&BigInt::from(class));
    ev(WEIL, format!("sqrt({class}) {} Q(E[{n}])", if ok { "lies in" } else { "is MISSING from" }))
}

/// `Q(E[2])` from the factorization of the 2-division cubic.
pub fn classify2(e: &WeierstrassCurve) -> ClassificationReport {
    let cubic = e.monic_two_division_poly();
    let disc = cubic_discriminant(&cubic).expect("cubic");
    let gal = cubic_galois(&cubic).expect("nonsingular curve has a separable 2-division cubic");
    let cite = "2-division cubic";
    let mut r = match gal {
        CubicGalois::ReducibleSplit => {
            let mut r = ClassificationReport::new(e, 2, Verdict::Abelian, GroupType::trivial());
            r.field = Some(FieldDescription::Multiquadratic(MqField::rationals()));
            r.evidence.push(ev(cite, format!("{} splits over Q", cubic)));
            r
        }
        CubicGalois::ReducibleOneRoot => {
            let (k, _) = two_division_roots(e).expect("one rational root");
            let mut r = ClassificationReport::new(e, 2, Verdict::Abelian, GroupType::cyclic(2));
            r.evidence.push(ev(
                cite,
                format!("{} has one rational root; discriminant {} has square class {}", cubic, fmt_q(&disc), k.basis()[0]),
            ));
            r.field = Some(FieldDescription::Multiquadratic(k));
            r
        }
        CubicGalois::C3 => {
            let mut r = ClassificationReport::new(e, 2, Verdict::Abelian, GroupType::cyclic(3));
            r.field = Some(FieldDescription::Symbolic(format!("Q(a), {} = 0", cubic.to_string_var("a"))));
            r.evidence.push(ev(cite, format!("{} is irreducible with square discriminant {}", cubic, fmt_q(&disc))));
            r
        }
        CubicGalois::S3 => {
            let mut r = ClassificationReport::new(e, 2, Verdict::NonAbelianCertified, GroupType::S3);
            r.field = Some(FieldDescription::Symbolic(format!("splitting field of {}", cubic.to_string_var("a"))));
            r.evidence.push(ev(cite, format!("{} is irreducible with non-square discriminant {}", cubic, fmt_q(&disc))));
            r
        }
    };
    set_cyclotomic(&mut r);
    r
}

/// Rational roots of the 3-isogeny kernels: the x-coordinates of Galois-stable order-3 subgroups.
fn three_kernel_xs(e: &WeierstrassCurve) -> Vec<Rational> {
    rational_isogeny_kernels(e, 3)
        .expect("p = 3 supported")
        .into_iter()
        .map(|k| match k {
            Kernel::Odd(g) => -g.monic().coeff(0),
            _ => unreachable!("order-3 kernels are odd"),
        })
        .collect()
}

/// `Q(E[3]) = Q(sqrt f(x1), sqrt f(x2))` when two 3-isogeny kernels have rational x.
pub fn classify3(e: &WeierstrassCurve) -> ClassificationReport {
    let xs = three_kernel_xs(e);
    if xs.len() < 2 {
        let mut r = ClassificationReport::new(e, 3, Verdict::NonAbelianCertified, GroupType::NonAbelian);
        r.evidence.push(ev(
            DIAGONALIZABILITY,
            format!("{} rational 3-isogeny kernel(s); an abelian mod-3 image needs two", xs.len()),
        ));
        return r;
    }
    let f = e.two_division_poly();
    let vals: Vec<Rational> = xs[..2].iter().map(|x| f.eval(x)).collect();
    let k = mq_field(&vals).expect("3-torsion points are not 2-torsion");
    let mut r = ClassificationReport::new(e, 3, Verdict::Abelian, elementary_of(&k));
    r.evidence.push(ev(
        DIAGONALIZABILITY,
        format!(
            "kernels at x = {}, {}; (2y + a1 x + a3)^2 = {}, {}",
            fmt_q(&xs[0]),
            fmt_q(&xs[1]),
            fmt_q(&vals[0]),
            fmt_q(&vals[1])
        ),
    ));
    r.evidence.push(weil_evidence(&k, -3, 3));
    r.field = Some(FieldDescription::Multiquadratic(k));
    set_cyclotomic(&mut r);
    r
}

/// `Q(E[4])` from the 2-division roots, adjoining square roots while the field stays polyquadratic.
pub fn classify4(e: &WeierstrassCurve) -> ClassificationReport {
    let two = classify2(e);
    let mut r = match &two.group {
        GroupType::S3 => {
            let mut r = ClassificationReport::new(e, 4, Verdict::NonAbelianCertified, GroupType::NonAbelian);
            r.evidence.push(ev("quotient", "Gal(Q(E[2])/Q) = S3 is a quotient"));
            return r;
        }
        GroupType::Abelian(f) if f == &[3] => {
            let mut r = ClassificationReport::new(e, 4, Verdict::NonAbelianByClassification, GroupType::NonAbelian);
            r.evidence.push(ev(TWO_POWER, "Q(E[2]) has degree 3, so Q(E[4]) is not a 2-extension"));
            return r;
        }
        _ => match four_torsion_field(e) {
            FourTorsion::Field(k) => {
                let mut r = ClassificationReport::new(e, 4, Verdict::Abelian, elementary_of(&k));
                r.evidence.push(ev(
                    "4-torsion generators",
                    format!("Q(E[2]) = {}; adjoining sqrt(-1) and sqrt(e_i - e_j) gives {}", two.field.as_ref().unwrap(), k),
                ));
                r.evidence.push(weil_evidence(&k, -1, 4));
                r.field = Some(FieldDescription::Multiquadratic(k));
                r
            }
            FourTorsion::NotPolyquadratic => {
                let mut r =
                    ClassificationReport::new(e, 4, Verdict::NonAbelianByClassification, GroupType::NonAbelian);
                r.evidence.push(ev(TWO_POWER, "some sqrt(e_i - e_j) generates a non-polyquadratic extension"));
                r
            }
        },
    };
    set_cyclotomic(&mut r);
    r
}

/// Field cut out by the Galois character on one 5-isogeny kernel.
#[derive(Clone, Debug)]
enum KernelField {
    /// The kernel points are rational.
    Rational,
    /// `Q(sqrt c)`.
    Quadratic(BigInt),
    /// Cyclic quartic `Q(sqrt D)(sqrt beta)`, with the kernel polynomial.
    Quartic { disc_class: BigInt, beta: MqElement, kernel: UniPoly },
}

impl KernelField {
    fn of(e: &WeierstrassCurve, g: &UniPoly) -> KernelField {
        let g = g.monic();
        let f = e.two_division_poly();
        let (b, c) = (g.coeff(1), g.coeff(0));
        let d = &b * &b - rat(4) * &c;
        let dclass = squarefree_part(&d).expect("separable kernel polynomial").squarefree;
        if dclass.is_one() {
            let root = -&b / rat(2) + crate::algebra_core::rational_sqrt(&d).unwrap() / rat(2);
            let cls = squarefree_part(&f.eval(&root)).expect("not 2-torsion").squarefree;
            return if cls.is_one() { KernelField::Rational } else { KernelField::Quadratic(cls) };
        }
        let k = mq_field(&[d.clone()]).unwrap();
        let sd = MqElement::sqrt_rational(&k, &d).unwrap();
        let x = &MqElement::from_rational(&k, -&b / rat(2)) + &sd.scale(&ratio(1, 2));
        KernelField::Quartic { disc_class: dclass, beta: eval_in(&f, &x), kernel: g }
    }

    /// `[K * Q(zeta5) : Q]`.
    fn compositum_degree(&self) -> u64 {
        let five = BigInt::from(5);
        match self {
            KernelField::Rational => 4,
            KernelField::Quadratic(c) => {
                if *c == five {
                    4
                } else {
                    8
                }
            }
            KernelField::Quartic { disc_class, beta, .. } => {
                if *disc_class != five {
                    return 16;
                }
                // Q(zeta5) = Q(sqrt5)(sqrt gamma), gamma = (zeta5 - zeta5^-1)^2 = (-5 - sqrt5)/2
                let k = beta.field();
                let s5 = MqElement::sqrt_rational(k, &rat(5)).unwrap();
                let gamma = (&MqElement::from_rational(k, rat(-5)) - &s5).scale(&ratio(1, 2));
                let q = beta.try_mul(&gamma.inv().unwrap()).unwrap();
                if q.is_square().unwrap() {
                    4
                } else {
                    8
                }
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            KernelField::Rational => "Q".into(),
            KernelField::Quadratic(c) => format!("Q(sqrt({c}))"),
            KernelField::Quartic { kernel, .. } => format!("Q(P), x(P) a root of {}", kernel),
        }
    }

    fn degree(&self) -> u32 {
        match self {
            KernelField::Rational => 1,
            KernelField::Quadratic(_) => 2,
            KernelField::Quartic { .. } => 4,
        }
    }
}

/// Abelian iff two 5-isogeny kernels; then `Q(E[5])` is `Q(zeta5)` times the field of one kernel point.
pub fn classify5(e: &WeierstrassCurve) -> ClassificationReport {
    let kernels = rational_isogeny_kernels(e, 5).expect("p = 5 supported");
    if kernels.len() < 2 {
        let mut r = ClassificationReport::new(e, 5, Verdict::NonAbelianCertified, GroupType::NonAbelian);
        r.evidence.push(ev(
            DIAGONALIZABILITY,
            format!("{} rational 5-isogeny kernel(s); an abelian mod-5 image needs two", kernels.len()),
        ));
        return r;
    }
    let fields: Vec<KernelField> = kernels[..2].iter().map(|k| KernelField::of(e, &k.polynomial())).collect();
    let degrees: Vec<u64> = fields.iter().map(KernelField::compositum_degree).collect();
    let group = match degrees[0] {
        4 => GroupType::cyclic(4),
        8 => GroupType::from_cyclic_factors(&[2, 4]),
        _ => GroupType::from_cyclic_factors(&[4, 4]),
    };
    let mut r = ClassificationReport::new(e, 5, Verdict::Abelian, group);
    r.evidence.push(ev(
        DIAGONALIZABILITY,
        format!(
            "kernels {} and {}; point fields {} and {}",
            kernels[0].polynomial(),
            kernels[1].polynomial(),
            fields[0].describe(),
            fields[1].describe()
        ),
    ));
    r.evidence.push(ev(
        WEIL,
        format!(
            "Q(E[5]) = Q(zeta5) * K for either kernel field K; degrees {} and {}{}",
            degrees[0],
            degrees[1],
            if degrees[0] == degrees[1] { "" } else { " DISAGREE" }
        ),
    ));
    let simplest = fields.iter().min_by_key(|f| f.degree()).unwrap();
    let text = match (degrees[0], simplest) {
        (4, _) => "Q(zeta5)".to_string(),
        (_, KernelField::Quadratic(c)) => format!("Q(zeta5, sqrt({c}))"),
        _ => format!("Q(zeta5) * {} * {}", fields[0].describe(), fields[1].describe()),
    };
    r.field = Some(FieldDescription::Symbolic(text));
    set_cyclotomic(&mut r);
    r
}

/// `Q(E[6]) = Q(E[2]) Q(E[3])`.
pub fn classify6(e: &WeierstrassCurve) -> ClassificationReport {
    let two = classify2(e);
    let three = classify3(e);
    if !two.is_abelian() || !three.is_abelian() {
        let (sub, m) = if two.is_abelian() { (&three, 3) } else { (&two, 2) };
        let mut r = ClassificationReport::new(e, 6, sub.verdict, GroupType::NonAbelian);
        r.evidence.push(ev("quotient", format!("Q(E[{m}]) is not abelian")));
        r.evidence.extend(sub.evidence.iter().cloned());
        return r;
    }
    let k3 = three.mq_field().expect("abelian level 3 is multiquadratic").clone();
    let mut r = match two.mq_field() {
        Some(k2) => {
            let k = k2.compositum(&k3).expect("depth at most 3");
            let mut r = ClassificationReport::new(e, 6, Verdict::Abelian, elementary_of(&k));
            r.evidence.push(ev("compositum", format!("Q(E[2]) = {k2}, Q(E[3]) = {k3}")));
            r.evidence.push(weil_evidence(&k, -3, 6));
            r.field = Some(FieldDescription::Multiquadratic(k));
            r
        }
        None => {
            let mut factors = vec![3];
            factors.extend(std::iter::repeat_n(2, k3.depth()));
            let mut r = ClassificationReport::new(e, 6, Verdict::Abelian, GroupType::from_cyclic_factors(&factors));
            r.field = Some(FieldDescription::Symbolic(format!("{} * {}", two.field.as_ref().unwrap(), k3)));
            r.evidence.push(ev("compositum", "cyclic cubic Q(E[2]) with abelian Q(E[3])"));
            r
        }
    };
    if two.group != GroupType::cyclic(2) {
        r.evidence.push(ev("level-6 lemma", format!("Gal(Q(E[2])/Q) = {} is unexpected for abelian Q(E[6])", two.group)));
    }
    set_cyclotomic(&mut r);
    r
}

fn two_torsion_point(e: &WeierstrassCurve, x: &MqElement) -> CurvePoint<MqElement> {
    let k = x.field();
    let y = (&x.scale(e.a1()) + &MqElement::from_rational(k, e.a3().clone())).scale(&ratio(-1, 2));
    CurvePoint::Affine(x.clone(), y)
}

/// Halve a 4-torsion basis twice over, tracking the field.
pub fn classify8(e: &WeierstrassCurve) -> ClassificationReport {
    let four = classify4(e);
    if !four.is_abelian() {
        let mut r = ClassificationReport::new(e, 8, four.verdict, GroupType::NonAbelian);
        r.evidence.push(ev("quotient", "Q(E[4]) is not abelian"));
        r.evidence.extend(four.evidence);
        return r;
    }
    let (_, roots) = two_division_roots(e).expect("abelian level 4 has quadratic 2-division field");
    if !roots.iter().all(MqElement::is_rational) {
        let mut r = ClassificationReport::new(e, 8, Verdict::NonAbelianByClassification, GroupType::NonAbelian);
        r.evidence.push(ev("classification of abelian levels", "abelian Q(E[8]) needs full rational 2-torsion"));
        return r;
    }
    let k4 = four.mq_field().unwrap().clone();
    let lift = |x: &MqElement| MqElement::from_rational(&k4, x.as_rational().unwrap());
    let t1 = two_torsion_point(e, &lift(&roots[0]));
    let t2 = two_torsion_point(e, &lift(&roots[1]));
    let p1 = halve_point(e, &t1, &k4).unwrap().expect("E[4] is defined over Q(E[4])");
    let p2 = halve_point(e, &t2, &k4).unwrap().expect("E[4] is defined over Q(E[4])");
    let not_poly = |four: &ClassificationReport| {
        let mut r = ClassificationReport::new(e, 8, Verdict::NonAbelianByClassification, GroupType::NonAbelian);
        r.evidence.push(ev(TWO_POWER, format!("halving a 4-torsion point leaves polyquadratic fields over {}", four.field.as_ref().unwrap())));
        r
    };
    let (k1, q1) = match halve_point_extending(e, &p1, &k4).unwrap() {
        Halved::Point { field, point } => (field, point),
        Halved::NotPolyquadratic => return not_poly(&four),
    };
    let (k2, q2) = match halve_point_extending(e, &p2, &k1).unwrap() {
        Halved::Point { field, point } => (field, point),
        Halved::NotPolyquadratic => return not_poly(&four),
    };
    let q1 = q1.embed(&k2).unwrap();
    let coords: Vec<MqElement> = [&q1, &q2]
        .iter()
        .flat_map(|q| [q.x().unwrap().clone(), q.y().unwrap().clone()])
        .collect();
    let (k, _) = subfield_generated_by(&coords).unwrap();
    let mut r = ClassificationReport::new(e, 8, Verdict::Abelian, elementary_of(&k));
    r.evidence.push(ev(
        "8-torsion basis",
        format!("halves of a 4-torsion basis over {} generate {}", k4, k),
    ));
    r.evidence.push(ev(WEIL, format!("sqrt(-1), sqrt(2) {} Q(E[8])", if contains_zeta8(&k) { "lie in" } else { "are MISSING from" })));
    r.field = Some(FieldDescription::Multiquadratic(k));
    set_cyclotomic(&mut r);
    r
}

fn contains_zeta8(k: &Arc<MqField>) -> bool {
    k.contains_class(&BigInt::from(-1)) && k.contains_class(&BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_ints(a).unwrap()
    }

    fn basis(r: &ClassificationReport) -> Vec<i64> {
        r.mq_field().unwrap().basis_i64()
    }

    fn field_of(classes: &[i64]) -> Arc<MqField> {
        mq_field(&classes.iter().map(|&c| rat(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn level2() {
        let r = classify2(&curve([1, 1, 1, -135, -660]));
        assert_eq!((r.verdict, r.group.clone(), r.cyclotomic), (Verdict::Abelian, GroupType::trivial(), true));
        let r = classify2(&curve([0, 1, 0, 1, 0]));
        assert_eq!(r.group, GroupType::cyclic(2));
        assert_eq!(basis(&r), vec![-3]);
        assert!(!r.cyclotomic);
        // simplest cubic at t = 0: y^2 = x^3 - 3x - 1
        let r = classify2(&curve([0, 0, 0, -3, -1]));
        assert_eq!(r.group, GroupType::cyclic(3));
        let r = classify2(&curve([0, 0, 0, 1, 1]));
        assert_eq!((r.verdict, r.group), (Verdict::NonAbelianCertified, GroupType::S3));
    }

    #[test]
    fn level3() {
        let r = classify3(&curve([0, 1, 1, -9, -15]));
        assert_eq!(r.group, GroupType::elementary(1));
        assert_eq!(basis(&r), vec![-3]);
        assert!(r.cyclotomic);
        let r = classify3(&curve([0, 0, 0, 0, 16]));
        assert_eq!((r.group.clone(), basis(&r)), (GroupType::elementary(1), vec![-3]));
        let r = classify3(&curve([0, 0, 0, 0, 2]));
        assert_eq!(r.group, GroupType::elementary(2));
        assert_eq!(*r.mq_field().unwrap().as_ref(), *field_of(&[-3, 2]));
        assert!(!r.cyclotomic);
        assert!(!classify3(&curve([0, 0, 0, 0, 1])).is_abelian());
    }

    #[test]
    fn level4() {
        let r = classify4(&curve([1, 1, 1, -10, -10]));
        assert_eq!(r.group, GroupType::elementary(1));
        assert_eq!(basis(&r), vec![-1]);
        assert!(r.cyclotomic);
        let r = classify4(&curve([1, 1, 0, -11, 0]));
        assert_eq!(r.group, GroupType::elementary(3));
        assert_eq!(*r.mq_field().unwrap().as_ref(), *field_of(&[-1, 3, 11]));
        let r = classify4(&curve([0, 0, 0, 0, 1]));
        assert_eq!(r.verdict, Verdict::NonAbelianByClassification);
    }

    #[test]
    fn level5() {
        let e = curve([0, -1, 1, -10, -20]);
        let r = classify5(&e);
        assert_eq!(r.group, GroupType::cyclic(4));
        assert!(r.cyclotomic);
        assert_eq!(r.field, Some(FieldDescription::Symbolic("Q(zeta5)".into())));
        let tw = crate::elliptic::quadratic_twist(&e, &BigInt::from(2));
        let r = classify5(&tw);
        assert_eq!(r.group, GroupType::from_cyclic_factors(&[2, 4]));
        assert_eq!(r.field, Some(FieldDescription::Symbolic("Q(zeta5, sqrt(2))".into())));
        // twisting by 5 stays inside Q(zeta5)
        let r = classify5(&crate::elliptic::quadratic_twist(&e, &BigInt::from(5)));
        assert_eq!(r.group, GroupType::cyclic(4));
        assert!(!classify5(&curve([1, 0, 1, 4, -6])).is_abelian());
    }

    #[test]
    fn level6() {
        let r = classify6(&curve([1, 0, 1, 4, -6]));
        assert_eq!(r.group, GroupType::elementary(2));
        assert_eq!(*r.mq_field().unwrap().as_ref(), *field_of(&[-3, -7]));
        assert!(!r.cyclotomic);
    }

    #[test]
    fn level8() {
        let r = classify8(&curve([1, 1, 1, -10, -10]));
        assert_eq!(r.group, GroupType::elementary(4));
        assert_eq!(*r.mq_field().unwrap().as_ref(), *field_of(&[-1, 2, 3, 5]));
        let r = classify8(&curve([0, 0, 0, 1, 0]));
        assert!(!r.is_abelian());
    }
}
