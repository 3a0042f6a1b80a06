//! Parametrized families of curves with abelian division fields, their j-lines,
//! sampled claim verification and exact audits of the supporting identities.

mod catalog;
mod claims;
mod expr;
mod identities;

pub use claims::{verify_family_claims, verify_family_claims_with, ClaimContext};
pub use expr::{parse_poly, ExprError};
pub use identities::{audit_proof_identities, proof_identities, RatFn};

use crate::algebra_core::{rat, squarefree_int, Rational, UniPoly};
use crate::division_fields::{classify, GroupType};
use crate::elliptic::{quadratic_twist, DivPolyRing, TorsionType, WeierstrassCurve};
use catalog::{RowModel, ROWS};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("t = {0} lies on the excluded locus")]
    SingularInstance(String),
    #[error("j-line has a pole at t = {0}")]
    PoleAt(String),
    #[error("t = {0} is outside the parameter domain")]
    OutsideDomain(String),
    #[error("no twist class available at t = {0}")]
    NoTwist(String),
    #[error("family has no j-line: {0}")]
    NoJLine(String),
}

/// Whether an equation is displayed in the source tables or derived from one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    #[serde(rename = "printed-in-paper")]
    Printed,
    /// Quadratic twists of printed families, used as negative controls.
    Control,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Rational,
    /// Integer parameters only; rational `t` can make the cubic reducible.
    Integer,
}

/// How a control family picks its twist class at each sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistRule {
    /// First class (in the order -1, 2, -2, 3, -3, 5, ...) that is not a square in
    /// `Q(E[n])` of the base instance; requires multiquadratic `Q(E[n])`.
    OutsideDivisionField(u32),
    /// First class not in the list.
    AvoidClasses(&'static [i64]),
}

/// A property asserted for every admissible member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `Gal(Q(E[n])/Q)` with these invariant factors.
    Group { n: u32, factors: &'static [u32] },
    /// `Q(E[n]) = Q(sqrt(d) : d in classes)`.
    Field { n: u32, classes: &'static [i64] },
    /// `Q(E[n])` is generated by square roots of the constants, of the polynomials
    /// evaluated at `t`, and of the twist class when `with_twist`; the group is
    /// `(Z/2)^generic_rank` when these classes are independent.
    FieldOfClasses {
        n: u32,
        constant: &'static [i64],
        in_t: &'static [&'static str],
        with_twist: bool,
        generic_rank: u32,
    },
    Cyclotomic(u32),
    Abelian(u32),
    /// `E(Q)[n] = Z/m1 x Z/m2`.
    TorsionAt { n: u32, pair: (u32, u32) },
    /// `E(Q)` has a point of exact order `m`.
    PointOfOrder(u32),
    IsogenyKernels { p: u32, at_least: usize },
    /// `E(Q)[n]` is `special` when `class(t)` is a square in `Q(sqrt(c) : c in constant)`
    /// and `generic` otherwise.
    TorsionByClass {
        n: u32,
        generic: (u32, u32),
        special: (u32, u32),
        constant: &'static [i64],
        class: &'static str,
    },
    /// A cyclic rational isogeny of this degree to a curve with `j = jline(s)`,
    /// `s = (a t + b) / (c t + d)` for `at = [a, b, c, d]`, with equal traces of Frobenius.
    IsogenousToJLine { degree: u32, jline: &'static str, at: [i64; 4] },
}

impl Claim {
    pub fn group(&self) -> Option<GroupType> {
        match self {
            Claim::Group { factors, .. } => Some(GroupType::from_cyclic_factors(factors)),
            _ => None,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Group { n, factors } => write!(f, "Gal(Q(E[{n}])/Q) = {}", GroupType::from_cyclic_factors(factors)),
            Claim::Field { n, classes } => {
                let gens: Vec<String> = classes.iter().map(|d| format!("sqrt({d})")).collect();
                write!(f, "Q(E[{n}]) = Q({})", gens.join(", "))
            }
            Claim::FieldOfClasses { n, constant, in_t, with_twist, generic_rank } => {
                let mut gens: Vec<String> = constant.iter().map(|d| format!("sqrt({d})")).collect();
                gens.extend(in_t.iter().map(|p| format!("sqrt({p})")));
                if *with_twist {
                    gens.push("sqrt(d)".into());
                }
                write!(f, "Q(E[{n}]) = Q({}), (Z/2)^{generic_rank} for generic t", gens.join(", "))
            }
            Claim::Cyclotomic(n) => write!(f, "Q(E[{n}]) = Q(zeta{n})"),
            Claim::Abelian(n) => write!(f, "Q(E[{n}]) abelian"),
            Claim::TorsionAt { n, pair: (a, b) } => match (a, b) {
                (1, 1) => write!(f, "E(Q)[{n}] = 0"),
                (1, b) => write!(f, "E(Q)[{n}] = Z/{b}"),
                (a, b) => write!(f, "E(Q)[{n}] = Z/{a} x Z/{b}"),
            },
            Claim::TorsionByClass { n, generic, special, constant, class } => write!(
                f,
                "E(Q)[{n}] = {}, or {} when {class} is a square in Q(sqrt(d) : d in {constant:?})",
                TorsionType::new(generic.0, generic.1),
                TorsionType::new(special.0, special.1)
            ),
            Claim::PointOfOrder(m) => write!(f, "rational point of order {m}"),
            Claim::IsogenyKernels { p, at_least } => write!(f, "at least {at_least} rational {p}-isogenies"),
            Claim::IsogenousToJLine { degree, jline, at } => {
                write!(f, "{degree}-isogenous to j = j_{{{jline}}}({})", mobius_text(at))
            }
        }
    }
}

fn mobius_text(&[a, b, c, d]: &[i64; 4]) -> String {
    let lin = |x: i64, y: i64| match (x, y) {
        (0, y) => y.to_string(),
        (x, 0) => format!("{}t", if x == 1 { String::new() } else { x.to_string() }),
        (x, y) => format!("{}t {} {}", if x == 1 { String::new() } else { x.to_string() }, if y < 0 { '-' } else { '+' }, y.abs()),
    };
    match (c, d) {
        (0, 1) => lin(a, b),
        _ => format!("({}) / ({})", lin(a, b), lin(c, d)),
    }
}

/// `s = (a t + b) / (c t + d)`; `None` at the pole.
pub fn mobius(&[a, b, c, d]: &[i64; 4], t: &Rational) -> Option<Rational> {
    let r = |v: i64| Rational::from_integer(v.into());
    let den = r(c) * t + r(d);
    (!den.is_zero()).then(|| (r(a) * t + r(b)) / den)
}

/// `j(t) = num(t) / den(t)` with coprime integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JLine {
    pub id: &'static str,
    pub num: UniPoly,
    pub den: UniPoly,
}

impl JLine {
    /// Normalizes to coprime primitive integer polynomials with positive leading denominator.
    pub fn new(id: &'static str, num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "j-line denominator is zero");
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        } else {
            (num, den)
        };
        let (cn, pn) = num.primitive_parts();
        let (cd, pd) = den.primitive_parts();
        let mut scale = cn / cd;
        let mut pd = UniPoly::from_bigints(&pd);
        if pd.lc().is_negative() {
            pd = -pd;
            scale = -scale;
        }
        // scale = a/b: num = a*pn, den = b*pd
        let num = UniPoly::from_bigints(&pn).scale(&Rational::from_integer(scale.numer().clone()));
        let den = pd.scale(&Rational::from_integer(scale.denom().clone()));
        JLine { id, num, den }
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, FamilyError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(FamilyError::PoleAt(fmt_t(t)));
        }
        Ok(self.num.eval(t) / d)
    }

    pub fn is_coprime(&self) -> bool {
        self.num.gcd(&self.den).deg() == 0
    }

    pub fn is_integral(&self) -> bool {
        self.num.coeffs().iter().chain(self.den.coeffs()).all(|c| c.is_integer())
    }

    pub fn as_ratfn(&self) -> RatFn {
        RatFn::new(self.num.clone(), self.den.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// `[a1, a2, a3, a4, a6]` in `Q[t]`.
    Weierstrass([UniPoly; 5]),
    FromJLine,
    Twist { base: &'static str, rule: TwistRule },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: &'static str,
    pub source: Source,
    pub domain: Domain,
    pub model: Model,
    pub jline: Option<JLine>,
    pub claims: &'static [Claim],
}

/// One member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: &'static str,
    pub t: Rational,
    pub curve: WeierstrassCurve,
    /// Twist class applied to the base family's member, for controls.
    pub twist: Option<BigInt>,
}

pub(crate) fn fmt_t(t: &Rational) -> String {
    crate::algebra_core::format_rational(t)
}

fn parse(src: &str) -> UniPoly {
    parse_poly(src, 't').unwrap_or_else(|e| panic!("catalog entry: {e}"))
}

/// The full catalog, parsed once.
pub fn catalog() -> &'static [FamilySpec] {
    static CATALOG: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        ROWS.iter()
            .map(|r| FamilySpec {
                id: r.id,
                source: r.source,
                domain: r.domain,
                model: match &r.model {
                    RowModel::Coeffs(cs) => Model::Weierstrass(cs.map(parse)),
                    RowModel::FromJLine => Model::FromJLine,
                    RowModel::Twist(base, rule) => Model::Twist { base, rule: *rule },
                },
                jline: r.jline.map(|(n, d)| JLine::new(r.id, parse(n), parse(d))),
                claims: r.claims,
            })
            .collect()
    })
}

pub fn family(id: &str) -> Result<&'static FamilySpec, FamilyError> {
    catalog().iter().find(|f| f.id == id).ok_or_else(|| FamilyError::UnknownFamily(id.to_string()))
}

/// Ids of the families whose equations are printed, in catalog order.
pub fn printed_families() -> Vec<&'static str> {
    catalog().iter().filter(|f| f.source == Source::Printed).map(|f| f.id).collect()
}

/// Discriminant of `[a1, a2, a3, a4, a6]` over any coefficient ring.
pub fn discriminant_generic<R: DivPolyRing>(a: &[R; 5]) -> R
where
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R>,
{
    let [a1, a2, a3, a4, a6] = a;
    let c = R::int;
    let b2 = &(a1 * a1) + &(&c(4) * a2);
    let b4 = &(&c(2) * a4) + &(a1 * a3);
    let b6 = &(a3 * a3) + &(&c(4) * a6);
    let b8 = [&(&(a1 * a1) * a6), &(&(&c(4) * a2) * a6), &(&(a2 * a3) * a3)]
        .into_iter()
        .fold(c(0), |s, t| &s + t);
    let b8 = &b8 - &(&(&(a1 * a3) * a4) + &(a4 * a4));
    let t1 = &(&b2 * &b2) * &b8;
    let t2 = &(&c(8) * &b4) * &(&b4 * &b4);
    let t3 = &(&c(27) * &b6) * &b6;
    let t4 = &(&(&c(9) * &b2) * &b4) * &b6;
    &t4 - &(&(&t1 + &t2) + &t3)
}

impl FamilySpec {
    pub fn base(&self) -> Option<&'static FamilySpec> {
        match self.model {
            Model::Twist { base, .. } => Some(family(base).expect("catalog base exists")),
            _ => None,
        }
    }

    /// Polynomial whose rational roots are the excluded parameters (singular members
    /// and j-line poles).
    pub fn excluded_locus(&self) -> UniPoly {
        match &self.model {
            Model::Weierstrass(a) => discriminant_generic(a),
            Model::FromJLine => {
                let j = self.jline.as_ref().expect("j-line model");
                // disc = num^2 den / (num - 1728 den)^3
                let k = &j.num - &j.den.scale(&rat(1728));
                &(&j.num * &j.den) * &k
            }
            Model::Twist { .. } => self.base().unwrap().excluded_locus(),
        }
    }

    pub fn in_domain(&self, t: &Rational) -> bool {
        match self.domain {
            Domain::Rational => true,
            Domain::Integer => t.is_integer(),
        }
    }

    /// In the domain and off the excluded locus. Twist controls may still fail to
    /// instantiate when no twist class qualifies.
    pub fn is_admissible(&self, t: &Rational) -> bool {
        self.in_domain(t) && !self.excluded_locus().eval(t).is_zero()
    }

    pub fn instantiate(&self, t: &Rational) -> Result<Instance, FamilyError> {
        if !self.in_domain(t) {
            return Err(FamilyError::OutsideDomain(fmt_t(t)));
        }
        let singular = || FamilyError::SingularInstance(fmt_t(t));
        let (curve, twist) = match &self.model {
            Model::Weierstrass(a) => {
                let coeffs = a.clone().map(|p| p.eval(t));
                (WeierstrassCurve::new(coeffs).map_err(|_| singular())?, None)
            }
            Model::FromJLine => {
                let j = self.jline.as_ref().expect("j-line model").eval(t)?;
                let k = &j - rat(1728);
                if j.is_zero() || k.is_zero() {
                    return Err(singular());
                }
                let a = [rat(1), rat(0), rat(0), rat(-36) / &k, rat(-1) / &k];
                (WeierstrassCurve::new(a).map_err(|_| singular())?, None)
            }
            Model::Twist { rule, .. } => {
                let base = self.base().unwrap().instantiate(t)?;
                let d = choose_twist(&base.curve, *rule).ok_or_else(|| FamilyError::NoTwist(fmt_t(t)))?;
                (quadratic_twist(&base.curve, &d), Some(d))
            }
        };
        Ok(Instance { family: self.id, t: t.clone(), curve, twist })
    }

    /// Deterministic admissible parameters in order of increasing height.
    pub fn samples(&self, count: usize) -> Vec<Rational> {
        let locus = self.excluded_locus();
        parameter_sequence(self.domain)
            .filter(|t| !locus.eval(t).is_zero())
            .filter(|t| !matches!(self.model, Model::Twist { .. }) || self.instantiate(t).is_ok())
            .take(count)
            .collect()
    }
}

/// `0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, ...` by height `max(|p|, q)`,
/// then denominator, then sign. Integers only for [`Domain::Integer`].
pub fn parameter_sequence(domain: Domain) -> impl Iterator<Item = Rational> {
    let zero = std::iter::once(Rational::zero());
    let rest = (1i64..).flat_map(move |h| {
        let mut out = Vec::new();
        let dens: Vec<i64> = match domain {
            Domain::Integer => vec![1],
            Domain::Rational => (1..=h).collect(),
        };
        for q in dens {
            let nums: Vec<i64> = if q == h && h > 1 { (1..h).collect() } else { vec![h] };
            for p in nums {
                if p.gcd(&q) == 1 {
                    out.push(Rational::new(p.into(), q.into()));
                    out.push(Rational::new((-p).into(), q.into()));
                }
            }
        }
        out
    });
    zero.chain(rest)
}

/// Squarefree integers `-1, 2, -2, 3, -3, 5, -5, 6, ...`.
pub fn twist_classes() -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::from(-1)).chain((2i64..).flat_map(|m| {
        let b = BigInt::from(m);
        if squarefree_int(&b).1.is_one() {
            vec![b.clone(), -b]
        } else {
            vec![]
        }
    }))
}

fn choose_twist(e: &WeierstrassCurve, rule: TwistRule) -> Option<BigInt> {
    match rule {
        TwistRule::AvoidClasses(avoid) => twist_classes().find(|d| !avoid.iter().any(|a| BigInt::from(*a) == *d)),
        TwistRule::OutsideDivisionField(n) => {
            let r = classify(e, n).ok()?;
            let field = r.mq_field()?.clone();
            twist_classes().take(64).find(|d| !field.contains_class(d))
        }
    }
}

pub fn instantiate(id: &str, t: &Rational) -> Result<Instance, FamilyError> {
    family(id)?.instantiate(t)
}

pub fn jline_eval(id: &str, t: &Rational) -> Result<Rational, FamilyError> {
    family(id)?.jline.as_ref().ok_or_else(|| FamilyError::NoJLine(id.to_string()))?.eval(t)
}

pub fn samples(id: &str, count: usize) -> Result<Vec<Rational>, FamilyError> {
    Ok(family(id)?.samples(count))
}

fn claims_json(f: &FamilySpec) -> Vec<String> {
    f.claims.iter().map(|c| c.to_string()).collect()
}

/// JSON export of the catalog: id, source, domain, model, j-line and claims.
pub fn catalog_json() -> Value {
    let fams: Vec<Value> = catalog()
        .iter()
        .map(|f| {
            let model = match &f.model {
                Model::Weierstrass(a) => json!({ "coefficients": a.iter().map(|p| p.to_string_var("t")).collect::<Vec<_>>() }),
                Model::FromJLine => json!({ "from_jline": "y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)" }),
                Model::Twist { base, rule } => {
                    let rule = match rule {
                        TwistRule::OutsideDivisionField(n) => format!("first class outside Q(E[{n}])"),
                        TwistRule::AvoidClasses(cs) => format!("first class not in {cs:?}"),
                    };
                    json!({ "twist_of": base, "rule": rule })
                }
            };
            let jline = f.jline.as_ref().map(|j| json!({ "num": j.num.to_string_var("t"), "den": j.den.to_string_var("t") }));
            json!({
                "id": f.id,
                "source": f.source,
                "domain": f.domain,
                "model": model,
                "jline": jline,
                "claims": claims_json(f),
            })
        })
        .collect();
    Value::Array(fams)
}

/// SHA-256 of the compact catalog JSON, pinned by a test.
pub fn catalog_checksum() -> String {
    let text = serde_json::to_string(&catalog_json()).expect("catalog serializes");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
