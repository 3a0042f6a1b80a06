use super::factor::factor_unbounded;
use super::{is_rational_square, rational_roots, AlgebraError, Rational, UniPoly};
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CubicGalois {
    ReducibleSplit,
    ReducibleOneRoot,
    C3,
    S3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticGalois {
    C4,
    V4,
    D4,
    A4,
    S4,
}

fn expect_degree(f: &UniPoly, n: usize) -> Result<(), AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if f.deg() != n {
        return Err(AlgebraError::WrongDegree { expected: n, got: f.deg() });
    }
    Ok(())
}

/// Discriminant of `a x^3 + b x^2 + c x + d`.
pub fn cubic_discriminant(f: &UniPoly) -> Result<Rational, AlgebraError> {
    expect_degree(f, 3)?;
    let (d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    Ok(&b * &b * &c * &c - Rational::from_integer(4.into()) * &a * &c * &c * &c
        - Rational::from_integer(4.into()) * &b * &b * &b * &d
        - Rational::from_integer(27.into()) * &a * &a * &d * &d
        + Rational::from_integer(18.into()) * &a * &b * &c * &d)
}

/// Resolvent cubic with roots x1x2+x3x4, x1x3+x2x4, x1x4+x2x3 of the monic quartic.
fn resolvent_cubic(f: &UniPoly) -> (UniPoly, [Rational; 4]) {
    let m = f.monic();
    let (d, c, b, a) = (m.coeff(0), m.coeff(1), m.coeff(2), m.coeff(3));
    let four = Rational::from_integer(4.into());
    let r = UniPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b.clone(),
        Rational::from_integer(1.into()),
    ]);
    (r, [a, b, c, d])
}

pub fn quartic_discriminant(f: &UniPoly) -> Result<Rational, AlgebraError> {
    expect_degree(f, 4)?;
    let (r, _) = resolvent_cubic(f);
    let lc = f.lc();
    Ok(cubic_discriminant(&r)? * lc.pow(6))
}

pub fn cubic_galois(f: &UniPoly) -> Result<CubicGalois, AlgebraError> {
    let disc = cubic_discriminant(f)?;
    if disc.is_zero() {
        return Err(AlgebraError::RepeatedRoots);
    }
    Ok(match rational_roots(f)?.len() {
        3 => CubicGalois::ReducibleSplit,
        1 => CubicGalois::ReducibleOneRoot,
        _ if is_rational_square(&disc) => CubicGalois::C3,
        _ => CubicGalois::S3,
    })
}

/// Whether a rational is a square in Q(sqrt(delta)).
fn square_in_quadratic(z: &Rational, delta: &Rational) -> bool {
    z.is_zero() || is_rational_square(z) || is_rational_square(&(z * delta))
}

pub fn quartic_galois(f: &UniPoly) -> Result<QuarticGalois, AlgebraError> {
    let disc = quartic_discriminant(f)?;
    if disc.is_zero() {
        return Err(AlgebraError::RepeatedRoots);
    }
    if !factor_unbounded(f).is_irreducible() {
        return Err(AlgebraError::NotIrreducible);
    }
    let (res, [a, b, _c, d]) = resolvent_cubic(f);
    let roots = rational_roots(&res)?;
    let square = is_rational_square(&disc);
    Ok(match roots.len() {
        0 if square => QuarticGalois::A4,
        0 => QuarticGalois::S4,
        3 => QuarticGalois::V4,
        _ => {
            let r = &roots[0];
            let four = Rational::from_integer(4.into());
            let z1 = r * r - &four * &d;
            let z2 = &a * &a - &four * (&b - r);
            if square_in_quadratic(&z1, &disc) && square_in_quadratic(&z2, &disc) {
                QuarticGalois::C4
            } else {
                QuarticGalois::D4
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{factor_mod_p, rat};
    use std::collections::BTreeSet;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn cubics() {
        assert_eq!(cubic_galois(&p(&[-1, -3, 0, 1])).unwrap(), CubicGalois::C3);
        assert_eq!(cubic_galois(&p(&[0, -1, 0, 1])).unwrap(), CubicGalois::ReducibleSplit);
        assert_eq!(cubic_galois(&p(&[-2, 0, 0, 1])).unwrap(), CubicGalois::S3);
        assert_eq!(cubic_discriminant(&p(&[-2, 0, 0, 1])).unwrap(), rat(-108));
        assert_eq!(cubic_galois(&p(&[0, 0, 1, 1])), Err(AlgebraError::RepeatedRoots));
    }

    #[test]
    fn quartics() {
        assert_eq!(quartic_galois(&p(&[1, -4, -2, -4, 1])).unwrap(), QuarticGalois::D4);
        assert_eq!(quartic_galois(&p(&[1, 1, 1, 1, 1])).unwrap(), QuarticGalois::C4);
        assert_eq!(quartic_galois(&p(&[1, 0, 0, 0, 1])).unwrap(), QuarticGalois::V4);
        assert_eq!(quartic_galois(&p(&[-2, 0, 0, 0, 1])).unwrap(), QuarticGalois::D4);
        assert_eq!(quartic_galois(&p(&[-1, -1, 0, 0, 1])).unwrap(), QuarticGalois::S4);
        assert_eq!(quartic_galois(&p(&[12, 8, 0, 0, 1])).unwrap(), QuarticGalois::A4);
        assert_eq!(quartic_galois(&p(&[-1, 0, 0, 0, 1])), Err(AlgebraError::NotIrreducible));
    }

    #[test]
    fn quartic_discriminant_known() {
        // disc(x^4 + 1) = 256
        assert_eq!(quartic_discriminant(&p(&[1, 0, 0, 0, 1])).unwrap(), rat(256));
        // disc(x^4 + x^3 + x^2 + x + 1) = 125
        assert_eq!(quartic_discriminant(&p(&[1, 1, 1, 1, 1])).unwrap(), rat(125));
    }

    /// Cycle types of Frobenius over many primes.
    fn cycle_types(f: &UniPoly) -> BTreeSet<Vec<usize>> {
        let disc = quartic_discriminant(f).unwrap();
        let mut out = BTreeSet::new();
        for q in num_prime::nt_funcs::primes(3000).into_iter().skip(1) {
            if crate::algebra_core::modp::rat_mod(&disc, q) == Some(0) {
                continue;
            }
            let Some(fs) = factor_mod_p(f, q) else { continue };
            let mut t: Vec<usize> = fs.iter().map(|(g, _)| g.deg()).collect();
            t.sort_unstable();
            out.insert(t);
        }
        out
    }

    /// Dedekind oracle: C4 never shows a transposition pattern (2,1,1); D4 does;
    /// V4 only shows (1,1,1,1) and (2,2); A4 shows 3-cycles but no 4-cycles.
    #[test]
    fn dedekind_oracle_agrees() {
        let polys = [
            p(&[1, -4, -2, -4, 1]),
            p(&[1, 1, 1, 1, 1]),
            p(&[1, 0, 0, 0, 1]),
            p(&[-2, 0, 0, 0, 1]),
            p(&[-1, -1, 0, 0, 1]),
            p(&[12, 8, 0, 0, 1]),
            p(&[5, 0, -5, 0, 1]),
            p(&[1, 0, -10, 0, 1]),
            p(&[2, 0, 4, 0, 1]),
        ];
        for f in polys {
            let ct = cycle_types(&f);
            let oracle = if ct.contains(&vec![1, 3]) {
                if ct.contains(&vec![4]) || ct.contains(&vec![1, 1, 2]) {
                    QuarticGalois::S4
                } else {
                    QuarticGalois::A4
                }
            } else if ct.contains(&vec![4]) {
                if ct.contains(&vec![1, 1, 2]) {
                    QuarticGalois::D4
                } else {
                    QuarticGalois::C4
                }
            } else if ct.contains(&vec![1, 1, 2]) {
                QuarticGalois::D4
            } else {
                QuarticGalois::V4
            };
            assert_eq!(quartic_galois(&f).unwrap(), oracle, "{f}");
        }
    }
}
