use super::divpoly::{division_polynomial, doubling_map, raw_division_poly};
use super::{EllipticError, WeierstrassCurve};
use crate::algebra_core::{factor_over_q, rat, rational_roots, Rational, UniPoly};
use num_traits::Zero;

/// Finite subgroup given by its x-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    Trivial,
    /// Order 2, generated by the point with this x-coordinate.
    TwoTorsion(Rational),
    /// Odd order `2 deg + 1`; monic polynomial whose roots are the x-coordinates
    /// of the nonzero kernel points, each counted once.
    Odd(UniPoly),
}

impl Kernel {
    pub fn order(&self) -> u32 {
        match self {
            Kernel::Trivial => 1,
            Kernel::TwoTorsion(_) => 2,
            Kernel::Odd(g) => 2 * g.deg() as u32 + 1,
        }
    }

    pub fn polynomial(&self) -> UniPoly {
        match self {
            Kernel::Trivial => UniPoly::one(),
            Kernel::TwoTorsion(x0) => UniPoly::linear_root(x0),
            Kernel::Odd(g) => g.clone(),
        }
    }
}

/// `g(x(2P))` vanishes on the roots of `g`, tested as `g` dividing `D^deg g * g(N/D)`.
fn doubling_stable(e: &WeierstrassCurve, g: &UniPoly) -> bool {
    let (n, d) = doubling_map(e);
    let h = g.eval_homogeneous(&n, &d, g.deg());
    h.rem(g).is_zero()
}

/// Galois-stable cyclic subgroups of order p, for p in {2, 3, 5, 7}.
pub fn rational_isogeny_kernels(e: &WeierstrassCurve, p: u32) -> Result<Vec<Kernel>, EllipticError> {
    match p {
        2 => Ok(rational_roots(&e.two_division_poly()).unwrap().into_iter().map(Kernel::TwoTorsion).collect()),
        3 => {
            let psi3 = division_polynomial(e, 3)?;
            Ok(rational_roots(&psi3).unwrap().iter().map(|r| Kernel::Odd(UniPoly::linear_root(r))).collect())
        }
        5 | 7 => {
            let psi = division_polynomial(e, p)?;
            let fac = factor_over_q(&psi).expect("degree at most 24");
            let target = ((p - 1) / 2) as usize;
            let parts: Vec<UniPoly> =
                fac.irreducibles().filter(|g| g.deg() <= target).map(|g| g.monic()).collect();
            let mut out = Vec::new();
            for mask in 1u64..(1u64 << parts.len()) {
                let chosen: Vec<&UniPoly> = (0..parts.len()).filter(|i| mask >> i & 1 == 1).map(|i| &parts[i]).collect();
                if chosen.iter().map(|g| g.deg()).sum::<usize>() != target {
                    continue;
                }
                let g = chosen.iter().fold(UniPoly::one(), |a, b| &a * *b);
                if doubling_stable(e, &g) {
                    out.push(Kernel::Odd(g));
                }
            }
            Ok(out)
        }
        _ => Err(EllipticError::UnsupportedPrime(p)),
    }
}

/// Codomain of the isogeny with the given kernel (Velu, in Kohel's symmetric-function form).
pub fn velu_isogeny(e: &WeierstrassCurve, kernel: &Kernel) -> Result<WeierstrassCurve, EllipticError> {
    let [a1, a2, a3, a4, a6] = e.a_invariants().clone();
    let (t, w) = match kernel {
        Kernel::Trivial => return Ok(e.clone()),
        Kernel::TwoTorsion(x0) => {
            if !e.two_division_poly().eval(x0).is_zero() {
                return Err(EllipticError::InvalidKernel);
            }
            let y0 = -(&a1 * x0 + &a3) / rat(2);
            let t = rat(3) * x0 * x0 + rat(2) * &a2 * x0 + &a4 - &a1 * &y0;
            let w = x0 * &t;
            (t, w)
        }
        Kernel::Odd(g) => {
            let d = g.deg();
            if d == 0 || g.lc() != rat(1) {
                return Err(EllipticError::InvalidKernel);
            }
            let f = raw_division_poly(e, 2 * d + 1);
            if !g.divides(&f) || !doubling_stable(e, g) {
                return Err(EllipticError::InvalidKernel);
            }
            // g = x^d - s1 x^(d-1) + s2 x^(d-2) - s3 x^(d-3) ...
            let s = |k: usize| if k > d { rat(0) } else if k % 2 == 0 { g.coeff(d - k) } else { -g.coeff(d - k) };
            let (s1, s2, s3) = (s(1), s(2), s(3));
            let p1 = s1.clone();
            let p2 = &s1 * &s1 - rat(2) * &s2;
            let p3 = &s1 * &s1 * &s1 - rat(3) * &s1 * &s2 + rat(3) * &s3;
            let dq = rat(d as i64);
            let t = rat(6) * &p2 + &e.b2 * &p1 + &dq * &e.b4;
            let w = rat(10) * &p3 + rat(2) * &e.b2 * &p2 + rat(3) * &e.b4 * &p1 + &dq * &e.b6;
            (t, w)
        }
    };
    let a4n = &a4 - rat(5) * &t;
    let a6n = &a6 - &e.b2 * &t - rat(7) * &w;
    WeierstrassCurve::new([a1, a2, a3, a4n, a6n])
}
