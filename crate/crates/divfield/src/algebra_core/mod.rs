//! Exact rationals, univariate polynomials over Q and Z/pZ, factorization over Q,
//! and Galois groups of cubics and quartics.

mod bipoly;
mod factor;
mod galois;
mod modp;
mod poly;

pub use bipoly::{poly_identity_check, BiPoly};
pub use factor::{
    factor_mod_p, factor_over_q, hensel_lift, pick_factoring_prime, rational_roots, Factorization,
};
pub use galois::{cubic_discriminant, cubic_galois, quartic_discriminant, quartic_galois, CubicGalois, QuarticGalois};
pub use modp::ModPoly;
pub use poly::UniPoly;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the supported ceiling")]
    UnsupportedDegree(usize),
    #[error("polynomial has repeated roots")]
    RepeatedRoots,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `7`, `-3/4` or `+12`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `value = squarefree * cofactor^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareClass {
    pub squarefree: BigInt,
    pub cofactor: Rational,
}

/// Prime factorization of |n| for n != 0.
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigUint, usize> {
    let mut m = n.magnitude().clone();
    let mut out = BTreeMap::new();
    if m.is_zero() {
        return out;
    }
    for p in small_primes() {
        let pb = BigUint::from(*p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if m > BigUint::one() {
        if let Some(small) = m.to_u64() {
            for (p, e) in num_prime::nt_funcs::factorize64(small) {
                *out.entry(BigUint::from(p)).or_insert(0) += e;
            }
        } else {
            for (p, e) in num_prime::nt_funcs::factorize(m) {
                *out.entry(p).or_insert(0) += e;
            }
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| num_prime::nt_funcs::primes(20_000))
}

/// Distinct primes dividing a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factor_integer(n)
        .into_keys()
        .map(|p| BigInt::from_biguint(Sign::Plus, p))
        .collect()
}

/// `n = s * c^2` with `s` squarefree (sign kept on `s`) and `c > 0`.
pub fn squarefree_int(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    // Cheap exits before factoring.
    let mag = n.magnitude();
    let r = mag.sqrt();
    if &(&r * &r) == mag {
        let s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (s, BigInt::from_biguint(Sign::Plus, r));
    }
    let mut s = BigInt::one();
    let mut c = BigInt::one();
    for (p, e) in factor_integer(n) {
        let p = BigInt::from_biguint(Sign::Plus, p);
        if e % 2 == 1 {
            s *= &p;
        }
        c *= p.pow((e / 2) as u32);
    }
    if n.is_negative() {
        s = -s;
    }
    (s, c)
}

pub fn squarefree_part(q: &Rational) -> Result<SquareClass, AlgebraError> {
    if q.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    // a/b = a*b / b^2
    let n = q.numer() * q.denom();
    let (s, c) = squarefree_int(&n);
    Ok(SquareClass { squarefree: s, cofactor: Rational::new(c, q.denom().clone()) })
}

/// Exact k-th root of a rational when it exists (k = 2 or 3 in practice).
pub fn is_perfect_power(q: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() && k % 2 == 0 {
        return None;
    }
    let n = int_root(q.numer(), k)?;
    let d = int_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return int_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    is_perfect_power(q, 2)
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Squarefree integers with the same square class as `a*b`, for squarefree `a`, `b`.
/// Returns `(s, c)` with `a*b = s*c^2`; no factoring needed.
pub fn mul_squarefree(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let g = a.magnitude().gcd(b.magnitude());
    let g = BigInt::from_biguint(Sign::Plus, g);
    let s = (a / &g) * (b / &g);
    (s, g)
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let sc = squarefree_part(&rat(12)).unwrap();
        assert_eq!((sc.squarefree, sc.cofactor), (BigInt::from(3), rat(2)));
        let sc = squarefree_part(&rat(-50)).unwrap();
        assert_eq!((sc.squarefree, sc.cofactor), (BigInt::from(-2), rat(5)));
        let sc = squarefree_part(&ratio(49, 9)).unwrap();
        assert_eq!((sc.squarefree, sc.cofactor), (BigInt::from(1), ratio(7, 3)));
        assert_eq!(squarefree_part(&rat(0)), Err(AlgebraError::ZeroInput));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(is_perfect_power(&rat(16), 3), None);
        assert_eq!(is_perfect_power(&ratio(1, 8), 3), Some(ratio(1, 2)));
        assert_eq!(is_perfect_power(&ratio(9, 4), 2), Some(ratio(3, 2)));
        assert_eq!(is_perfect_power(&rat(-27), 3), Some(rat(-3)));
        assert_eq!(is_perfect_power(&rat(-4), 2), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("+12"), Some(rat(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn squarefree_products() {
        let (s, c) = mul_squarefree(&BigInt::from(-6), &BigInt::from(10));
        assert_eq!((s, c), (BigInt::from(-15), BigInt::from(2)));
    }
}
