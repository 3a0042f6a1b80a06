use super::modp::{big_mod, inv_mod, mul_mod};
use super::{AlgebraError, ModPoly, Rational, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Degree ceiling for `factor_over_q`.
pub const MAX_FACTOR_DEGREE: usize = 24;

/// `f = content * prod factor_i^mult_i`, factors primitive in Z[x] with positive
/// leading coefficient, ordered by degree then coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = &UniPoly> {
        self.factors.iter().map(|(g, _)| g)
    }
}

pub fn factor_over_q(f: &UniPoly) -> Result<Factorization, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if f.deg() > MAX_FACTOR_DEGREE {
        return Err(AlgebraError::UnsupportedDegree(f.deg()));
    }
    Ok(factor_unbounded(f))
}

/// Same as `factor_over_q` without the degree ceiling.
pub(crate) fn factor_unbounded(f: &UniPoly) -> Factorization {
    assert!(!f.is_zero());
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    for (a, e) in f.squarefree_decomposition() {
        let g = a.primitive_parts().1;
        for h in factor_squarefree_primitive(&g) {
            factors.push((UniPoly::from_bigints(&h), e));
        }
    }
    factors.sort_by(|(a, _), (b, _)| factor_order(a, b));
    let mut prod = UniPoly::one();
    for (g, e) in &factors {
        prod = &prod * &g.pow(*e);
    }
    let content = f.lc() / prod.lc();
    Factorization { content, factors }
}

fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        let ka: Vec<BigInt> = a.coeffs().iter().map(|c| c.to_integer()).collect();
        let kb: Vec<BigInt> = b.coeffs().iter().map(|c| c.to_integer()).collect();
        ka.cmp(&kb)
    })
}

fn primitive_int(g: &[BigInt]) -> Vec<BigInt> {
    let mut c = g.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if g.last().is_some_and(|x| x.is_negative()) {
        c = -c;
    }
    g.iter().map(|x| x / &c).collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division of integer polynomials with monic divisor.
fn monic_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg].clone();
        if !c.is_zero() {
            for (j, gc) in g.iter().enumerate() {
                r[i + j] -= &c * gc;
            }
        }
        q[i] = c;
    }
    r[..dg].iter().all(|c| c.is_zero()).then_some(q)
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Small primes tried when choosing a factoring prime.
fn candidate_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| num_prime::nt_funcs::is_prime64(n))
}

/// Picks among the first eight primes where `f` stays squarefree of full degree
/// the one giving the fewest irreducible factors.
pub fn pick_factoring_prime(f: &[BigInt]) -> (u64, Vec<ModPoly>) {
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in candidate_primes() {
        if big_mod(f.last().unwrap(), p) == 0 {
            continue;
        }
        let fp = ModPoly::from_bigints(f, p);
        if !fp.is_squarefree() {
            continue;
        }
        let fs = fp.factor_squarefree();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 8 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.unwrap()
}

/// Lifts `f ≡ g*h (mod p)` with monic `f`, `g`, `h` coprime mod p to `f ≡ G*H (mod p^k)`.
pub fn hensel_lift(f: &[BigInt], g: &ModPoly, h: &ModPoly, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = g.modulus();
    let pb = BigInt::from(p);
    let (one, s, t) = g.ext_gcd(h);
    debug_assert_eq!(one.deg(), 0);
    let mut gg: Vec<BigInt> = g.coeffs().iter().map(|&c| BigInt::from(c)).collect();
    let mut hh: Vec<BigInt> = h.coeffs().iter().map(|&c| BigInt::from(c)).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = int_mul(&gg, &hh);
        let n = f.len().max(prod.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b) / &pj
            })
            .collect();
        let e = ModPoly::from_bigints(&diff, p);
        if !e.is_zero() {
            let (q, r) = t.mul(&e).div_rem(g);
            let sigma = s.mul(&e).add(&q.mul(h));
            for (i, c) in r.coeffs().iter().enumerate() {
                gg[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in sigma.coeffs().iter().enumerate() {
                hh[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (gg, hh)
}

fn multi_lift(f: &[BigInt], fs: &[ModPoly], k: u32, m: &BigInt) -> Vec<Vec<BigInt>> {
    if fs.len() == 1 {
        return vec![f.iter().map(|c| c.mod_floor(m)).collect()];
    }
    let p = fs[0].modulus();
    let mid = fs.len() / 2;
    let g = fs[..mid].iter().fold(ModPoly::one(p), |a, x| a.mul(x));
    let h = fs[mid..].iter().fold(ModPoly::one(p), |a, x| a.mul(x));
    let (gg, hh) = hensel_lift(f, &g, &h, k);
    let mut out = multi_lift(&gg, &fs[..mid], k, m);
    out.extend(multi_lift(&hh, &fs[mid..], k, m));
    out
}

fn symmetric(v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.into_iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

/// Coefficient bound for any factor of `f`: 2^n * ||f||_2 (rounded up).
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    norm << (f.len() - 1)
}

/// Irreducible factors of a squarefree primitive integer polynomial.
fn factor_squarefree_primitive(g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let g = primitive_int(g);
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g];
    }
    if g[0].is_zero() {
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&g[1..]));
        return out;
    }
    // Monic transform F(x) = lc^(n-1) g(x/lc).
    let lc = g[n].clone();
    let mut f = vec![BigInt::zero(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        f[i] = &g[i] * &pw;
        pw *= &lc;
    }
    f[n] = BigInt::one();
    let back = |h: &[BigInt]| -> Vec<BigInt> {
        // h(lc*x), then primitive
        let mut pw = BigInt::one();
        let v: Vec<BigInt> = h
            .iter()
            .map(|c| {
                let r = c * &pw;
                pw *= &lc;
                r
            })
            .collect();
        primitive_int(&v)
    };
    let (p, fs) = pick_factoring_prime(&f);
    if fs.len() == 1 {
        return vec![g];
    }
    let bound = mignotte_bound(&f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = multi_lift(&f, &fs, k, &m);
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        for subset in Subsets::new(remaining.len(), s) {
            let mut prod = vec![BigInt::one()];
            for &i in &subset {
                prod = int_mul(&prod, &remaining[i]).into_iter().map(|c| c.mod_floor(&m)).collect();
            }
            let cand = trim(symmetric(prod, &m));
            // Constant-term screen before the trial division.
            if !current[0].is_zero() && (cand[0].is_zero() || !(&current[0] % &cand[0]).is_zero()) {
                continue;
            }
            if let Some(q) = monic_div(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(back(&cand));
                current = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => s += 1,
        }
    }
    if current.len() > 1 {
        found.push(back(&current));
    }
    found
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Complete factorization mod p with multiplicities, monic factors sorted.
/// `None` when p divides a denominator or the reduction is zero.
pub fn factor_mod_p(f: &UniPoly, p: u64) -> Option<Vec<(ModPoly, u32)>> {
    let fp = ModPoly::from_unipoly(f, p)?;
    if fp.is_zero() {
        return None;
    }
    let mut irr = Vec::new();
    collect_irreducibles(&fp.monic(), &mut irr);
    irr.sort_by(|a: &ModPoly, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    irr.dedup();
    let mut out = Vec::new();
    for g in irr {
        let mut h = fp.clone();
        let mut e = 0;
        loop {
            let (q, r) = h.div_rem(&g);
            if !r.is_zero() {
                break;
            }
            h = q;
            e += 1;
        }
        out.push((g, e));
    }
    Some(out)
}

fn collect_irreducibles(f: &ModPoly, out: &mut Vec<ModPoly>) {
    if f.deg() == 0 {
        return;
    }
    let p = f.modulus();
    let d = f.derivative();
    if d.is_zero() {
        let root: Vec<u64> = f.coeffs().iter().step_by(p as usize).copied().collect();
        collect_irreducibles(&ModPoly::new(p, root), out);
        return;
    }
    let g = f.gcd(&d);
    let s = f.div_rem(&g).0.monic();
    out.extend(s.factor_squarefree());
    collect_irreducibles(&g, out);
}

/// All rational roots with multiplicity, ascending. No degree ceiling.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rational>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (a, e) in f.squarefree_decomposition() {
        let g = a.primitive_parts().1;
        for r in squarefree_rational_roots(&g) {
            for _ in 0..e {
                out.push(r.clone());
            }
        }
    }
    out.sort();
    Ok(out)
}

fn squarefree_rational_roots(g: &[BigInt]) -> Vec<Rational> {
    let n = g.len() - 1;
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![Rational::new(-g[0].clone(), g[1].clone())];
    }
    let mut out = Vec::new();
    let mut g = g.to_vec();
    if g[0].is_zero() {
        out.push(Rational::zero());
        g.remove(0);
        if g.len() == 1 {
            return out;
        }
    }
    let n = g.len() - 1;
    let lc = g[n].clone();
    let mut f = vec![BigInt::zero(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        f[i] = &g[i] * &pw;
        pw *= &lc;
    }
    f[n] = BigInt::one();
    // Integer roots of monic f divide f(0); Cauchy bound 1 + max|f_i|.
    let bound = f.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let mut p = 0;
    let mut fp = None;
    for q in candidate_primes() {
        let r = ModPoly::from_bigints(&f, q);
        if r.is_squarefree() {
            p = q;
            fp = Some(r);
            break;
        }
    }
    let fp = fp.unwrap();
    let dfp = fp.derivative();
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut k = 1;
    while m <= &bound * 2 {
        m *= &pb;
        k += 1;
    }
    for r0 in fp.roots() {
        let inv = inv_mod(dfp.eval(r0), p);
        let mut r = BigInt::from(r0);
        let mut pj = pb.clone();
        for _ in 1..k {
            let v = eval_int(&f, &r);
            let t = big_mod(&(-(v / &pj)), p);
            r += &pj * BigInt::from(mul_mod(t, inv, p));
            pj *= &pb;
        }
        let r = symmetric(vec![r], &m).pop().unwrap();
        if r.abs() <= bound && eval_int(&f, &r).is_zero() {
            out.push(Rational::new(r, lc.clone()));
        }
    }
    out
}
