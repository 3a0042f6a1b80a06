//! Traces of Frobenius by naive point counting, and trace-determinant fingerprints of
//! the mod-n image used to certify that it is not abelian.

use crate::algebra_core::{ModPoly, Rational, UniPoly};
use crate::elliptic::{division_polynomial, WeierstrassCurve};
use crate::matgroups::{abelian_candidates, AbelianCandidate};
use num_bigint::BigInt;
use num_integer::Integer;
use num_prime::nt_funcs::{is_prime64, primes};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
pub const MAX_PRIME: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("prime {0} exceeds the counting limit")]
    PrimeTooLarge(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level {0} is not supported")]
    UnsupportedModulus(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FrobeniusSample {
    pub ell: u64,
    pub ap: i64,
}

impl FrobeniusSample {
    /// `(a_l mod n, l mod n)`: trace and determinant of Frobenius on E[n].
    pub fn pair(&self, n: u32) -> (u32, u32) {
        (self.ap.rem_euclid(n as i64) as u32, (self.ell % n as u64) as u32)
    }
}

fn big_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

fn divides(l: u64, q: &Rational) -> bool {
    big_mod(q.numer(), l) == 0 || big_mod(q.denom(), l) == 0
}

/// Integral model with its invariants as integers, ready for reduction.
struct IntegralModel {
    curve: WeierstrassCurve,
    a: [BigInt; 5],
    b: [BigInt; 3],
    disc: Rational,
    disc_int: BigInt,
}

impl IntegralModel {
    fn new(e: &WeierstrassCurve) -> Self {
        let (m, _) = e.integral_model();
        let a = m.a_invariants().clone().map(|c| c.to_integer());
        let b = [m.b2.to_integer(), m.b4.to_integer(), m.b6.to_integer()];
        IntegralModel { disc: e.disc.clone(), disc_int: m.disc.to_integer(), curve: m, a, b }
    }

    fn check(&self, l: u64) -> Result<(), FrobeniusError> {
        if !is_prime64(l) {
            return Err(FrobeniusError::NotPrime(l));
        }
        if l > MAX_PRIME {
            return Err(FrobeniusError::PrimeTooLarge(l));
        }
        if divides(l, &self.disc) || big_mod(&self.disc_int, l) == 0 {
            return Err(FrobeniusError::BadReduction(l));
        }
        Ok(())
    }

    /// `l + 1 - #E(F_l)` for a good prime.
    fn trace(&self, l: u64, chi: &mut Vec<i8>) -> i64 {
        if l == 2 {
            let a: Vec<u64> = self.a.iter().map(|c| big_mod(c, 2)).collect();
            let mut count = 1;
            for x in 0..2u64 {
                for y in 0..2u64 {
                    let lhs = y * y + a[0] * x * y + a[2] * y;
                    let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                    if (lhs + rhs) % 2 == 0 {
                        count += 1;
                    }
                }
            }
            return 3 - count;
        }
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 = B(x)
        quadratic_character_table(l, chi);
        let [b2, b4, b6] = [&self.b[0], &self.b[1], &self.b[2]].map(|c| big_mod(c, l));
        let (c3, c2, c1, c0) = (4 % l, b2, 2 * b4 % l, b6);
        let mut sum = 0i64;
        for x in 0..l {
            let v = ((c3 * x + c2) % l * x + c1) % l * x % l;
            sum += chi[((v + c0) % l) as usize] as i64;
        }
        -sum
    }
}

/// Legendre symbol table for an odd prime, built from the squares.
fn quadratic_character_table(l: u64, chi: &mut Vec<i8>) {
    chi.clear();
    chi.resize(l as usize, -1);
    chi[0] = 0;
    for x in 1..=(l / 2) {
        chi[(x * x % l) as usize] = 1;
    }
}

/// Trace of Frobenius at a prime of good reduction, by counting points.
pub fn ap(e: &WeierstrassCurve, l: u64) -> Result<i64, FrobeniusError> {
    let m = IntegralModel::new(e);
    m.check(l)?;
    Ok(m.trace(l, &mut Vec::new()))
}

/// `a_l` for every good prime `l <= bound`.
pub fn frobenius_samples(e: &WeierstrassCurve, bound: u64) -> Vec<FrobeniusSample> {
    let m = IntegralModel::new(e);
    let mut chi = Vec::new();
    primes(bound.min(MAX_PRIME))
        .into_iter()
        .filter(|&l| m.check(l).is_ok())
        .map(|l| FrobeniusSample { ell: l, ap: m.trace(l, &mut chi) })
        .collect()
}

/// Realized Frobenius data for the mod-n image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub n: u32,
    /// `{(a_l mod n, l mod n)}` over good `l <= bound` with `l` prime to n.
    pub pairs: BTreeSet<(u32, u32)>,
    /// For `n = p^e`, `e >= 2`: `{(tr N, det N) mod p}` for `Frob_l = 1 + pN` at primes
    /// with `E[p]` rational over `F_l`. Empty otherwise.
    pub lifted: BTreeSet<(u32, u32)>,
    pub bound: u64,
    pub primes_used: usize,
}

/// Whether all of `E[p]` is defined over `F_l`, for odd `l` prime to `p` and good reduction.
fn full_p_torsion_mod(model: &IntegralModel, psi_p: Option<&UniPoly>, p: u32, l: u64) -> bool {
    let two_div = ModPoly::from_bigints(&[model.b[2].clone(), 2 * &model.b[1], model.b[0].clone(), BigInt::from(4)], l);
    let Some(psi) = psi_p else {
        debug_assert_eq!(p, 2);
        return two_div.count_roots() == 3;
    };
    let roots = ModPoly::from_unipoly(psi, l).expect("integral model").roots();
    if roots.len() != ((p * p - 1) / 2) as usize {
        return false;
    }
    let mut chi = Vec::new();
    quadratic_character_table(l, &mut chi);
    roots.iter().all(|&x| chi[two_div.eval(x) as usize] == 1)
}

pub fn fingerprint_from_samples(e: &WeierstrassCurve, n: u32, bound: u64, samples: &[FrobeniusSample]) -> Fingerprint {
    let usable: Vec<&FrobeniusSample> =
        samples.iter().filter(|s| s.ell <= bound && n as u64 % s.ell != 0).collect();
    let pairs = usable.iter().map(|s| s.pair(n)).collect();
    let mut lifted = BTreeSet::new();
    if let Some((p, _)) = crate::matgroups::higher_prime_power(n) {
        let model = IntegralModel::new(e);
        let psi = (p != 2).then(|| division_polynomial(&model.curve, p).expect("small prime"));
        let (pi, p2) = (p as i64, (p * p) as i64);
        for s in &usable {
            let (l, a) = (s.ell as i64, s.ap);
            // Frob = 1 mod p forces a = 2 and l = 1 mod p, and p^2 | det(Frob - 1) = l + 1 - a
            if l == 2 || (a - 2) % pi != 0 || (l - 1) % pi != 0 || (l + 1 - a) % p2 != 0 {
                continue;
            }
            if full_p_torsion_mod(&model, psi.as_ref(), p, s.ell) {
                let t = ((a - 2) / pi).rem_euclid(pi) as u32;
                let d = ((l + 1 - a) / p2).rem_euclid(pi) as u32;
                lifted.insert((t, d));
            }
        }
    }
    Fingerprint { n, pairs, lifted, bound, primes_used: usable.len() }
}

/// Fingerprint of the mod-n image from good primes up to `bound`.
pub fn fingerprint(e: &WeierstrassCurve, n: u32, bound: u64) -> Fingerprint {
    fingerprint_from_samples(e, n, bound, &frobenius_samples(e, bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Datum {
    /// A realized `(tr, det)` pair missing from the candidate.
    Pair(u32, u32),
    /// A realized lifted characteristic polynomial missing from the candidate.
    Lifted(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSummary {
    pub index: usize,
    pub structure: String,
    pub order: usize,
}

impl CandidateSummary {
    fn of(index: usize, c: &AbelianCandidate) -> Self {
        CandidateSummary { index, structure: c.structure(), order: c.order() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Every abelian candidate misses some realized datum.
    CertifiedNonAbelian { witnesses: Vec<(CandidateSummary, Datum)> },
    /// `survivors` contain all realized data; `matching` have exactly the realized pair set.
    Inconclusive { survivors: Vec<CandidateSummary>, matching: Vec<CandidateSummary> },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedNonAbelian { .. })
    }
}

fn missing(c: &AbelianCandidate, fp: &Fingerprint) -> Option<Datum> {
    if let Some(&(t, d)) = fp.pairs.iter().find(|x| !c.pairs.contains(x)) {
        return Some(Datum::Pair(t, d));
    }
    fp.lifted.iter().find(|x| !c.lifted.contains(x)).map(|&(t, d)| Datum::Lifted(t, d))
}

/// Compares a fingerprint against every abelian candidate of its level.
pub fn certify_fingerprint(fp: &Fingerprint) -> Result<Certificate, FrobeniusError> {
    let cands = abelian_candidates(fp.n).map_err(|_| FrobeniusError::UnsupportedModulus(fp.n))?;
    let mut witnesses = Vec::new();
    let mut survivors = Vec::new();
    let mut matching = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        match missing(c, fp) {
            Some(d) => witnesses.push((CandidateSummary::of(i, c), d)),
            None => {
                survivors.push(CandidateSummary::of(i, c));
                if c.pairs == fp.pairs {
                    matching.push(CandidateSummary::of(i, c));
                }
            }
        }
    }
    Ok(if survivors.is_empty() {
        Certificate::CertifiedNonAbelian { witnesses }
    } else {
        Certificate::Inconclusive { survivors, matching }
    })
}

/// Sound non-abelian certificate for the mod-n image, `n` in 2..=9, at the default bound.
pub fn certify_nonabelian(e: &WeierstrassCurve, n: u32) -> Result<Certificate, FrobeniusError> {
    if !(2..=9).contains(&n) {
        return Err(FrobeniusError::UnsupportedModulus(n));
    }
    certify_fingerprint(&fingerprint(e, n, DEFAULT_PRIME_BOUND))
}
