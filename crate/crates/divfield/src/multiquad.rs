//! Multiquadratic fields Q(sqrt d1, ..., sqrt dk).
//!
//! Elements are coordinate vectors on the subset basis `m_S = prod_{i in S} sqrt(d_i)`,
//! indexed by bitmask. Square roots are principal complex roots, so elements built
//! in different fields embed consistently into a common container.

use crate::algebra_core::{
    format_rational, int_rat, mul_squarefree, rational_sqrt, squarefree_part, Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Largest supported number of basis classes.
pub const MAX_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MqError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("multiquadratic depth exceeds {MAX_DEPTH}")]
    DepthExceeded,
    #[error("elements live in different fields")]
    FieldMismatch,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MqField {
    basis: Vec<BigInt>,
}

fn class_key(d: &BigInt) -> (BigInt, bool) {
    (d.abs(), d.is_negative())
}

/// Squarefree product of the classes selected by `mask`, with the square cofactor
/// and the number of negative factors.
fn mask_product(basis: &[BigInt], mask: usize) -> (BigInt, BigInt, usize) {
    let mut s = BigInt::one();
    let mut g = BigInt::one();
    let mut neg = 0;
    for (i, d) in basis.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (s2, g2) = mul_squarefree(&s, d);
            s = s2;
            g *= g2;
            if d.is_negative() {
                neg += 1;
            }
        }
    }
    (s, g, neg)
}

impl MqField {
    /// Canonical field spanned by the square classes of `gens`.
    pub fn new(gens: &[Rational]) -> Result<Arc<MqField>, MqError> {
        let mut classes = Vec::with_capacity(gens.len());
        for g in gens {
            let sc = squarefree_part(g).map_err(|_| MqError::ZeroInput)?;
            classes.push(sc.squarefree);
        }
        Self::from_classes(&classes)
    }

    /// Same as `new` for squarefree integers (no factoring).
    pub fn from_classes(classes: &[BigInt]) -> Result<Arc<MqField>, MqError> {
        let mut indep: Vec<BigInt> = Vec::new();
        let mut span: Vec<BigInt> = vec![BigInt::one()];
        for c in classes {
            if c.is_zero() {
                return Err(MqError::ZeroInput);
            }
            if span.contains(c) {
                continue;
            }
            if indep.len() == MAX_DEPTH {
                return Err(MqError::DepthExceeded);
            }
            let add: Vec<BigInt> = span.iter().map(|s| mul_squarefree(s, c).0).collect();
            span.extend(add);
            indep.push(c.clone());
        }
        // Greedy basis over the span in (|d|, sign) order.
        let mut elems: Vec<BigInt> = span.into_iter().filter(|d| !d.is_one()).collect();
        elems.sort_by_key(class_key);
        let mut basis: Vec<BigInt> = Vec::new();
        let mut sub: Vec<BigInt> = vec![BigInt::one()];
        for d in elems {
            if sub.contains(&d) {
                continue;
            }
            let add: Vec<BigInt> = sub.iter().map(|s| mul_squarefree(s, &d).0).collect();
            sub.extend(add);
            basis.push(d);
        }
        Ok(Arc::new(MqField { basis }))
    }

    pub fn rationals() -> Arc<MqField> {
        Arc::new(MqField { basis: vec![] })
    }

    pub fn basis(&self) -> &[BigInt] {
        &self.basis
    }

    pub fn depth(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.basis.len()
    }

    /// Every squarefree class in the span, including 1.
    pub fn span(&self) -> Vec<BigInt> {
        (0..self.degree()).map(|m| mask_product(&self.basis, m).0).collect()
    }

    /// Whether the squarefree class `d` lies in the field's class group.
    pub fn contains_class(&self, d: &BigInt) -> bool {
        self.span().contains(d)
    }

    /// Whether the rational `q` has a square root in the field.
    pub fn contains_sqrt_of(&self, q: &Rational) -> bool {
        q.is_zero() || squarefree_part(q).is_ok_and(|sc| self.contains_class(&sc.squarefree))
    }

    pub fn is_subfield_of(&self, other: &MqField) -> bool {
        self.basis.iter().all(|d| other.contains_class(d))
    }

    /// Compositum of two multiquadratic fields.
    pub fn compositum(&self, other: &MqField) -> Result<Arc<MqField>, MqError> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::from_classes(&all)
    }

    pub fn with_class(&self, d: &BigInt) -> Result<Arc<MqField>, MqError> {
        let mut all = self.basis.clone();
        all.push(d.clone());
        Self::from_classes(&all)
    }

    /// Mask and sign/cofactor expressing `sqrt(d)` as `sign * m_T / g`.
    fn locate_class(&self, d: &BigInt) -> Option<(usize, Rational)> {
        for m in 0..self.degree() {
            let (s, g, neg) = mask_product(&self.basis, m);
            if &s == d {
                let sign = if (neg / 2) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                return Some((m, Rational::new(sign, g)));
            }
        }
        None
    }

    /// Group of sign characters, one per basis class.
    pub fn galois_group(&self) -> Vec<GaloisAction2> {
        (0..self.degree()).map(|m| GaloisAction2::from_mask(m, self.depth())).collect()
    }

    pub fn name(&self) -> String {
        if self.basis.is_empty() {
            return "Q".into();
        }
        let parts: Vec<String> = self.basis.iter().map(|d| format!("sqrt({d})")).collect();
        format!("Q({})", parts.join(", "))
    }

    pub fn basis_i64(&self) -> Vec<i64> {
        self.basis.iter().map(|d| i64::try_from(d).unwrap_or(i64::MAX)).collect()
    }
}

impl fmt::Display for MqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn mq_field(gens: &[Rational]) -> Result<Arc<MqField>, MqError> {
    MqField::new(gens)
}

/// Sign flip on each basis square root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GaloisAction2 {
    pub character: Vec<i8>,
}

impl GaloisAction2 {
    fn from_mask(mask: usize, k: usize) -> Self {
        GaloisAction2 { character: (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect() }
    }

    fn mask(&self) -> usize {
        self.character.iter().enumerate().filter(|(_, &c)| c == -1).map(|(i, _)| 1 << i).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.character.iter().all(|&c| c == 1)
    }

    pub fn apply(&self, a: &MqElement) -> MqElement {
        a.conjugate(self.mask())
    }
}

#[derive(Clone, Debug)]
pub struct MqElement {
    field: Arc<MqField>,
    coords: Vec<Rational>,
}

impl PartialEq for MqElement {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.coords == o.coords
    }
}

impl Eq for MqElement {}

// ---- raw tower arithmetic on (basis, coords) ----

fn raw_mul(basis: &[BigInt], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    let prods: Vec<Rational> = (0..n)
        .map(|m| {
            let mut p = BigInt::one();
            for (i, d) in basis.iter().enumerate() {
                if m >> i & 1 == 1 {
                    p *= d;
                }
            }
            int_rat(&p)
        })
        .collect();
    for (s, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[s ^ t] += x * y * &prods[s & t];
        }
    }
    out
}

fn raw_is_zero(a: &[Rational]) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn split(a: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let h = a.len() / 2;
    (a[..h].to_vec(), a[h..].to_vec())
}

fn join(u: Vec<Rational>, v: Vec<Rational>) -> Vec<Rational> {
    let mut out = u;
    out.extend(v);
    out
}

fn raw_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn raw_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn raw_scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

/// `u^2 - d v^2` in the subfield.
fn raw_relative_norm(basis: &[BigInt], u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let k = basis.len() - 1;
    let d = int_rat(&basis[k]);
    let sub = &basis[..k];
    raw_sub(&raw_mul(sub, u, u), &raw_scale(&raw_mul(sub, v, v), &d))
}

fn raw_inv(basis: &[BigInt], a: &[Rational]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return (!a[0].is_zero()).then(|| vec![a[0].recip()]);
    }
    let k = basis.len() - 1;
    let (u, v) = split(a);
    let n = raw_relative_norm(basis, &u, &v);
    let ni = raw_inv(&basis[..k], &n)?;
    let nu = raw_mul(&basis[..k], &u, &ni);
    let nv: Vec<Rational> = raw_mul(&basis[..k], &v, &ni).into_iter().map(|c| -c).collect();
    Some(join(nu, nv))
}

fn raw_norm(basis: &[BigInt], a: &[Rational]) -> Rational {
    if basis.is_empty() {
        return a[0].clone();
    }
    let (u, v) = split(a);
    let n = raw_relative_norm(basis, &u, &v);
    raw_norm(&basis[..basis.len() - 1], &n)
}

fn raw_sqrt(basis: &[BigInt], a: &[Rational]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return rational_sqrt(&a[0]).map(|r| vec![r]);
    }
    let k = basis.len() - 1;
    let sub = &basis[..k];
    let d = int_rat(&basis[k]);
    let zero = vec![Rational::zero(); a.len() / 2];
    let (u, v) = split(a);
    if raw_is_zero(&v) {
        if let Some(s) = raw_sqrt(sub, &u) {
            return Some(join(s, zero));
        }
        let ud = raw_scale(&u, &d.recip());
        return raw_sqrt(sub, &ud).map(|t| join(zero, t));
    }
    let n = raw_relative_norm(basis, &u, &v);
    let w = raw_sqrt(sub, &n)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for z in [raw_add(&u, &w), raw_sub(&u, &w)] {
        let z = raw_scale(&z, &half);
        if raw_is_zero(&z) {
            continue;
        }
        let Some(x) = raw_sqrt(sub, &z) else { continue };
        let xi = raw_inv(sub, &x)?;
        let y = raw_scale(&raw_mul(sub, &v, &xi), &half);
        let cand = join(x, y);
        if raw_mul(basis, &cand, &cand) == a {
            return Some(cand);
        }
    }
    None
}

/// Squarefree q (up to the field's classes) with `a = q * s^2`, `s` in the field.
fn raw_rational_square_class(basis: &[BigInt], a: &[Rational]) -> Option<BigInt> {
    if basis.is_empty() {
        return squarefree_part(&a[0]).ok().map(|sc| sc.squarefree);
    }
    let k = basis.len() - 1;
    let sub = &basis[..k];
    let (u, v) = split(a);
    if raw_is_zero(&v) {
        return raw_rational_square_class(sub, &u);
    }
    let n = raw_relative_norm(basis, &u, &v);
    let w = raw_sqrt(sub, &n)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for z in [raw_add(&u, &w), raw_sub(&u, &w)] {
        let z = raw_scale(&z, &half);
        if raw_is_zero(&z) {
            continue;
        }
        let Some(q) = raw_rational_square_class(sub, &z) else { continue };
        if raw_sqrt(basis, &raw_scale(a, &int_rat(&q).recip())).is_some() {
            return Some(q);
        }
    }
    None
}

impl MqElement {
    pub fn field(&self) -> &Arc<MqField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn from_coords(field: &Arc<MqField>, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field.degree());
        MqElement { field: field.clone(), coords }
    }

    pub fn from_rational(field: &Arc<MqField>, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        MqElement { field: field.clone(), coords }
    }

    pub fn zero(field: &Arc<MqField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<MqField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The basis element `prod_{i in mask} sqrt(d_i)`.
    pub fn basis_element(field: &Arc<MqField>, mask: usize) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[mask] = Rational::one();
        MqElement { field: field.clone(), coords }
    }

    /// Principal square root of a rational whose class lies in the field.
    pub fn sqrt_rational(field: &Arc<MqField>, q: &Rational) -> Option<Self> {
        if q.is_zero() {
            return Some(Self::zero(field));
        }
        let sc = squarefree_part(q).ok()?;
        let (mask, c) = field.locate_class(&sc.squarefree)?;
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[mask] = c * sc.cofactor.abs();
        Some(MqElement { field: field.clone(), coords })
    }

    pub fn is_zero(&self) -> bool {
        raw_is_zero(&self.coords)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    fn check(&self, o: &Self) -> Result<(), MqError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(MqError::FieldMismatch)
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, MqError> {
        self.check(o)?;
        Ok(MqElement { field: self.field.clone(), coords: raw_mul(&self.field.basis, &self.coords, &o.coords) })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, MqError> {
        self.check(o)?;
        Ok(MqElement { field: self.field.clone(), coords: raw_add(&self.coords, &o.coords) })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MqElement { field: self.field.clone(), coords: raw_scale(&self.coords, c) }
    }

    pub fn inv(&self) -> Result<Self, MqError> {
        raw_inv(&self.field.basis, &self.coords)
            .map(|coords| MqElement { field: self.field.clone(), coords })
            .ok_or(MqError::ZeroInput)
    }

    pub fn norm(&self) -> Rational {
        raw_norm(&self.field.basis, &self.coords)
    }

    /// Applies the sign character flipping the generators in `mask`.
    pub fn conjugate(&self, mask: usize) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(s, c)| if (s & mask).count_ones() % 2 == 1 { -c } else { c.clone() })
            .collect();
        MqElement { field: self.field.clone(), coords }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_square(&self) -> Result<bool, MqError> {
        Ok(self.sqrt()?.is_some())
    }

    pub fn sqrt(&self) -> Result<Option<Self>, MqError> {
        if self.is_zero() {
            return Err(MqError::ZeroInput);
        }
        Ok(raw_sqrt(&self.field.basis, &self.coords).map(|coords| MqElement { field: self.field.clone(), coords }))
    }

    /// Bitmask of basis elements with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&m| !self.coords[m].is_zero()).collect()
    }

    /// Image under the inclusion into a field containing this one.
    pub fn embed(&self, target: &Arc<MqField>) -> Result<Self, MqError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let mut gens = Vec::with_capacity(self.field.depth());
        for d in &self.field.basis {
            let (mask, c) = target.locate_class(d).ok_or(MqError::FieldMismatch)?;
            gens.push(MqElement::basis_element(target, mask).scale(&c));
        }
        let mut out = MqElement::zero(target);
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = MqElement::from_rational(target, c.clone());
            for (i, g) in gens.iter().enumerate() {
                if s >> i & 1 == 1 {
                    m = &m * g;
                }
            }
            out = &out + &m;
        }
        Ok(out)
    }
}

impl fmt::Display for MqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = format_rational(c);
            for (i, d) in self.field.basis.iter().enumerate() {
                if s >> i & 1 == 1 {
                    t.push_str(&format!("*sqrt({d})"));
                }
            }
            parts.push(t);
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Add for &MqElement {
    type Output = MqElement;
    fn add(self, o: &MqElement) -> MqElement {
        self.try_add(o).expect("field mismatch")
    }
}

impl Sub for &MqElement {
    type Output = MqElement;
    fn sub(self, o: &MqElement) -> MqElement {
        self.check(o).expect("field mismatch");
        MqElement { field: self.field.clone(), coords: raw_sub(&self.coords, &o.coords) }
    }
}

impl Mul for &MqElement {
    type Output = MqElement;
    fn mul(self, o: &MqElement) -> MqElement {
        self.try_mul(o).expect("field mismatch")
    }
}

impl Neg for &MqElement {
    type Output = MqElement;
    fn neg(self) -> MqElement {
        self.scale(&-Rational::one())
    }
}

pub fn is_square_in(a: &MqElement) -> Result<bool, MqError> {
    a.is_square()
}

pub fn sqrt_in(a: &MqElement) -> Result<Option<MqElement>, MqError> {
    a.sqrt()
}

/// Squarefree q with `a = q * s^2` for some s in the field, if one exists.
/// The representative is the smallest in `(|q|, sign)` order within its coset.
pub fn rational_square_class(a: &MqElement) -> Result<Option<BigInt>, MqError> {
    if a.is_zero() {
        return Err(MqError::ZeroInput);
    }
    let Some(q) = raw_rational_square_class(&a.field.basis, &a.coords) else { return Ok(None) };
    let best = a
        .field
        .span()
        .iter()
        .map(|m| mul_squarefree(&q, m).0)
        .min_by_key(class_key)
        .unwrap();
    Ok(Some(best))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjoined {
    /// `a` is already a square; `root^2 = a`.
    Unchanged { field: Arc<MqField>, root: MqElement },
    /// New field with one more class; `root` lives in the new field.
    Extended { field: Arc<MqField>, root: MqElement },
    NotPolyquadratic,
}

pub fn adjoin_sqrt(a: &MqElement) -> Result<Adjoined, MqError> {
    if let Some(root) = a.sqrt()? {
        return Ok(Adjoined::Unchanged { field: a.field.clone(), root });
    }
    let Some(q) = rational_square_class(a)? else { return Ok(Adjoined::NotPolyquadratic) };
    let field = a.field.with_class(&q)?;
    let qr = int_rat(&q);
    let s = a.scale(&qr.recip()).sqrt()?.expect("class witness must be a square");
    let sq = MqElement::sqrt_rational(&field, &qr).expect("class just adjoined");
    let root = &s.embed(&field)? * &sq;
    Ok(Adjoined::Extended { field, root })
}

/// Smallest subfield containing `elems`, as the fixed field of their common stabilizer.
pub fn subfield_generated_by(elems: &[MqElement]) -> Result<(Arc<MqField>, Vec<GaloisAction2>), MqError> {
    let Some(first) = elems.first() else {
        let q = MqField::rationals();
        let g = q.galois_group();
        return Ok((q, g));
    };
    let field = first.field.clone();
    for e in elems {
        first.check(e)?;
    }
    let n = field.degree();
    let mut supports = vec![false; n];
    for e in elems {
        for m in e.support() {
            supports[m] = true;
        }
    }
    let stabilizer: Vec<usize> = (0..n)
        .filter(|&sig| (0..n).all(|s| !supports[s] || (s & sig).count_ones() % 2 == 0))
        .collect();
    let fixed: Vec<BigInt> = (0..n)
        .filter(|&s| stabilizer.iter().all(|&sig| (s & sig).count_ones() % 2 == 0))
        .map(|s| mask_product(&field.basis, s).0)
        .collect();
    let sub = MqField::from_classes(&fixed)?;
    let g = sub.galois_group();
    Ok((sub, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{is_rational_square, prime_divisors, rat};
    use proptest::prelude::*;

    fn field(gens: &[i64]) -> Arc<MqField> {
        mq_field(&gens.iter().map(|&g| rat(g)).collect::<Vec<_>>()).unwrap()
    }

    fn elem(f: &Arc<MqField>, cs: &[i64]) -> MqElement {
        MqElement::from_coords(f, cs.iter().map(|&c| rat(c)).collect())
    }

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_bases() {
        assert_eq!(field(&[-1, 2]).basis(), b(&[-1, 2]));
        assert_eq!(field(&[2, 8]).basis(), b(&[2]));
        assert_eq!(field(&[3, 5, 15]).basis(), b(&[3, 5]));
        assert_eq!(field(&[15, 5]).basis(), b(&[3, 5]));
        assert_eq!(field(&[-2, 2]).basis(), b(&[-1, 2]));
        assert_eq!(field(&[-1, 2]).degree(), 4);
    }

    #[test]
    fn square_roots() {
        let k = field(&[2]);
        let a = elem(&k, &[3, 2]);
        assert_eq!(sqrt_in(&a).unwrap().unwrap().pow(2), a);
        assert!(!is_square_in(&elem(&k, &[0, 1])).unwrap());
        let ki = field(&[-1]);
        let r = sqrt_in(&elem(&ki, &[-1, 0])).unwrap().unwrap();
        assert_eq!(r.pow(2), elem(&ki, &[-1, 0]));
        assert_eq!(sqrt_in(&MqElement::zero(&ki)), Err(MqError::ZeroInput));
    }

    #[test]
    fn square_classes() {
        let k = field(&[3]);
        assert_eq!(rational_square_class(&elem(&k, &[18, 0])).unwrap(), Some(BigInt::from(2)));
        assert_eq!(rational_square_class(&elem(&k, &[-9, 6])).unwrap(), None);
        let k2 = field(&[2]);
        assert_eq!(rational_square_class(&elem(&k2, &[0, 2])).unwrap(), None);
    }

    /// The documented prime-set search: signed squarefree products over the primes of
    /// the norm, 2, and the basis classes.
    fn square_class_by_search(a: &MqElement) -> Option<BigInt> {
        let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
        let n = a.norm();
        for x in [n.numer().clone(), n.denom().clone()] {
            primes.extend(prime_divisors(&x));
        }
        for d in a.field().basis() {
            primes.extend(prime_divisors(d));
        }
        primes.sort();
        primes.dedup();
        for mask in 0..(1usize << primes.len()) {
            let mut q = BigInt::one();
            for (i, p) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    q *= p;
                }
            }
            for q in [q.clone(), -q] {
                if a.scale(&int_rat(&q).recip()).is_square().unwrap() {
                    return Some(q);
                }
            }
        }
        None
    }

    #[test]
    fn square_class_agrees_with_prime_search() {
        let k = field(&[2, 3]);
        for cs in [[18, 0, 0, 0], [-9, 6, 0, 0], [0, 2, 0, 0], [5, 2, 0, 0], [3, 0, 2, 1], [7, 1, 1, 1]] {
            let a = elem(&k, &cs);
            let sq = a.pow(2).scale(&rat(-6));
            for x in [a.clone(), sq] {
                let fast = rational_square_class(&x).unwrap();
                let slow = square_class_by_search(&x);
                assert_eq!(fast.is_some(), slow.is_some(), "{x}");
                if let (Some(p), Some(q)) = (fast, slow) {
                    assert!(k.contains_class(&mul_squarefree(&p, &q).0));
                }
            }
        }
    }

    #[test]
    fn adjoin_cases() {
        let k = field(&[3]);
        match adjoin_sqrt(&elem(&k, &[-1, 0])).unwrap() {
            Adjoined::Extended { field, root } => {
                assert_eq!(field.basis(), b(&[-1, 3]));
                assert_eq!(root.pow(2), elem(&k, &[-1, 0]).embed(&field).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let k2 = field(&[2]);
        assert!(matches!(adjoin_sqrt(&elem(&k2, &[3, 2])).unwrap(), Adjoined::Unchanged { .. }));
        assert_eq!(adjoin_sqrt(&elem(&k, &[-9, 6])).unwrap(), Adjoined::NotPolyquadratic);
        // sqrt(2 + sqrt 3) * sqrt(2 - sqrt 3) = 1, and 2 + sqrt 3 = (sqrt 6 + sqrt 2)^2 / 4
        match adjoin_sqrt(&elem(&k, &[2, 1])).unwrap() {
            Adjoined::Extended { field, root } => {
                assert_eq!(field.basis(), b(&[2, 3]));
                assert_eq!(root.pow(2), elem(&k, &[2, 1]).embed(&field).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subfields() {
        let k = field(&[3, 5]);
        let (f, g) = subfield_generated_by(&[MqElement::basis_element(&k, 3)]).unwrap();
        assert_eq!(f.basis(), b(&[15]));
        assert_eq!(g.len(), 2);
        let (f, _) =
            subfield_generated_by(&[MqElement::basis_element(&k, 1), MqElement::basis_element(&k, 2)]).unwrap();
        assert_eq!(f, k);
        let (f, g) = subfield_generated_by(&[MqElement::from_rational(&k, rat(7))]).unwrap();
        assert_eq!((f.depth(), g.len()), (0, 1));
    }

    #[test]
    fn embedding_respects_principal_roots() {
        // sqrt(-1) * sqrt(-3) = -sqrt(3)
        let k = field(&[-1, -3]);
        assert_eq!(k.basis(), b(&[-1, 3]));
        let i = MqElement::sqrt_rational(&k, &rat(-1)).unwrap();
        let r3 = MqElement::sqrt_rational(&k, &rat(-3)).unwrap();
        let s3 = MqElement::sqrt_rational(&k, &rat(3)).unwrap();
        assert_eq!(&i * &r3, -&s3);
        let small = field(&[3]);
        let e = MqElement::basis_element(&small, 1).embed(&k).unwrap();
        assert_eq!(e, s3);
        // sqrt(15) = sqrt(6) sqrt(10) / 2 in Q(sqrt(-1), sqrt(6), sqrt(10))
        let big = field(&[-1, 6, 10]);
        let r15 = MqElement::basis_element(&field(&[-1, 15]), 2).embed(&big).unwrap();
        assert_eq!(&r15 * &r15, MqElement::from_rational(&big, rat(15)));
    }

    #[test]
    fn inverse_and_norm() {
        let k = field(&[2, 3, 5]);
        let a = elem(&k, &[1, 2, -1, 0, 3, 0, 1, 1]);
        let ai = a.inv().unwrap();
        assert_eq!(&a * &ai, MqElement::one(&k));
        let conj_prod = (0..8).fold(MqElement::one(&k), |acc, m| &acc * &a.conjugate(m));
        assert_eq!(conj_prod.as_rational().unwrap(), a.norm());
    }

    /// Classical criterion for u + v sqrt(d), v != 0: u^2 - d v^2 = w^2 and (u + w)/2
    /// or (u - w)/2 is a rational square or d times a rational square.
    fn classical(u: i64, v: i64, d: i64) -> bool {
        if v == 0 {
            return is_rational_square(&rat(u)) || is_rational_square(&(rat(u) / rat(d)));
        }
        let n = rat(u * u - d * v * v);
        let Some(w) = rational_sqrt(&n) else { return false };
        [(rat(u) + &w) / rat(2), (rat(u) - &w) / rat(2)]
            .iter()
            .any(|z| !z.is_zero() && is_rational_square(z))
    }

    #[test]
    fn degree_two_grid() {
        for d in [-7, -3, -2, -1, 2, 3, 5, 6, 7, 10] {
            let k = field(&[d]);
            for u in -12..=12 {
                for v in -6..=6 {
                    if u == 0 && v == 0 {
                        continue;
                    }
                    let a = elem(&k, &[u, v]);
                    assert_eq!(a.is_square().unwrap(), classical(u, v, d), "{u} + {v} sqrt({d})");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn squares_have_roots(cs in proptest::collection::vec(-20i64..20, 8), k in 0usize..4) {
            let f = [field(&[]), field(&[-1]), field(&[-1, 2]), field(&[-3, 5, 7])][k].clone();
            let a = elem(&f, &cs[..f.degree()]);
            prop_assume!(!a.is_zero());
            let sq = a.pow(2);
            let r = sqrt_in(&sq).unwrap().unwrap();
            prop_assert_eq!(r.pow(2), sq);
        }

        #[test]
        fn embedding_is_multiplicative(a in proptest::collection::vec(-9i64..9, 4), c in proptest::collection::vec(-9i64..9, 4), k in 0usize..3) {
            let (small, big) = [
                (field(&[-1, 15]), field(&[-1, 6, 10])),
                (field(&[6, 35]), field(&[2, 3, 5, 7])),
                (field(&[-2, 21]), field(&[-1, 2, 3, 7])),
            ][k].clone();
            let x = elem(&small, &a);
            let y = elem(&small, &c);
            let xy = (&x * &y).embed(&big).unwrap();
            prop_assert_eq!(xy, &x.embed(&big).unwrap() * &y.embed(&big).unwrap());
        }

        #[test]
        fn subfield_monotone(masks in proptest::collection::vec(0usize..8, 1..4), extra in 0usize..8) {
            let k = field(&[2, 3, -5]);
            let es: Vec<MqElement> = masks.iter().map(|&m| MqElement::basis_element(&k, m)).collect();
            let (f1, g1) = subfield_generated_by(&es).unwrap();
            prop_assert_eq!(g1.len(), f1.degree());
            let mut more = es.clone();
            more.push(MqElement::basis_element(&k, extra));
            let (f2, _) = subfield_generated_by(&more).unwrap();
            prop_assert!(f1.is_subfield_of(&f2));
            let embedded: Vec<MqElement> = f1.basis().iter()
                .map(|d| MqElement::sqrt_rational(&k, &int_rat(d)).unwrap()).collect();
            let (f3, _) = subfield_generated_by(&embedded).unwrap();
            prop_assert_eq!(f3, f1);
        }
    }
}
