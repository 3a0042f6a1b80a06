//! Finite subgroups of GL(2, Z/nZ): Borel and Cartan structure, diagonalizability,
//! exhaustive audits of the structural lemmas, and abelian image candidates.

mod audits;
mod candidates;
mod mat;
mod subgroup;

pub use audits::{
    audit_borel_lemma, audit_diagonalizability, audit_mod_p2_diagonal, mod_p2_hypothesis_witness, AuditReport,
};
pub use candidates::{abelian_candidates, AbelianCandidate};
pub(crate) use candidates::higher_prime_power;
pub use mat::{gl2_elements, Mat2};
pub use subgroup::Gl2Subgroup;

use num_prime::nt_funcs::{factorize64, is_prime64};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatGroupError {
    #[error("unsupported modulus {0}")]
    UnsupportedModulus(u32),
    #[error("matrix {0} is not invertible")]
    NotInvertible(Mat2),
    #[error("element set is not a subgroup")]
    NotASubgroup,
}

/// `|GL(2, Z/nZ)| = n^4 prod_{p | n} (1 - 1/p)(1 - 1/p^2)`.
pub fn group_order(n: u32) -> u64 {
    let mut order = (n as u64).pow(4);
    for (p, _) in factorize64(n as u64) {
        order = order / p * (p - 1);
        order = order / (p * p) * (p * p - 1);
    }
    order
}

/// Least positive quadratic non-residue mod an odd prime.
pub fn least_nonresidue(p: u32) -> u32 {
    (2..p).find(|&e| (1..p).all(|x| x * x % p != e)).expect("odd prime has a non-residue")
}

#[derive(Clone, Debug)]
pub struct Cartans {
    pub split: Gl2Subgroup,
    pub split_normalizer: Gl2Subgroup,
    pub nonsplit: Gl2Subgroup,
    pub nonsplit_normalizer: Gl2Subgroup,
    pub epsilon: u32,
}

/// Split and non-split Cartan subgroups of GL(2, F_p) and their normalizers.
pub fn cartan_subgroups(p: u32) -> Result<Cartans, MatGroupError> {
    if p == 2 || p > 7 || !is_prime64(p as u64) {
        return Err(MatGroupError::UnsupportedModulus(p));
    }
    let eps = least_nonresidue(p);
    let pi = p as i64;
    let mut split = Vec::new();
    let mut split_n = Vec::new();
    let mut ns = Vec::new();
    for a in 1..pi {
        for b in 1..pi {
            split.push(Mat2::diag(p, a, b));
            split_n.push(Mat2::diag(p, a, b));
            split_n.push(Mat2::new(p, 0, a, b, 0));
        }
    }
    for a in 0..pi {
        for b in 0..pi {
            if (a, b) != (0, 0) {
                ns.push(Mat2::new(p, a, eps as i64 * b, b, a));
            }
        }
    }
    let nonsplit = Gl2Subgroup::from_elements(p, &ns)?;
    // C_ns together with diag(1, -1), which acts on it by conjugation
    let mut ns_gens = nonsplit.elements().to_vec();
    ns_gens.push(Mat2::diag(p, 1, -1));
    Ok(Cartans {
        split: Gl2Subgroup::from_elements(p, &split)?,
        split_normalizer: Gl2Subgroup::from_elements(p, &split_n)?,
        nonsplit_normalizer: Gl2Subgroup::generate(p, &ns_gens)?,
        nonsplit,
        epsilon: eps,
    })
}

pub fn is_borel(g: &Gl2Subgroup) -> bool {
    g.elements().iter().all(Mat2::is_upper)
}

/// `(B1, Bd)`: unipotent elements and diagonal elements of an upper-triangular group.
pub fn borel_parts(g: &Gl2Subgroup) -> Option<(Gl2Subgroup, Gl2Subgroup)> {
    if !is_borel(g) {
        return None;
    }
    let b1: Vec<Mat2> = g.elements().iter().copied().filter(|m| m.a == 1 && m.d == 1).collect();
    let bd: Vec<Mat2> = g.elements().iter().copied().filter(Mat2::is_diagonal).collect();
    Some((
        Gl2Subgroup::from_elements(g.n, &b1).expect("kernel of the diagonal map"),
        Gl2Subgroup::from_elements(g.n, &bd).expect("intersection of subgroups"),
    ))
}

fn prime_power(n: u32) -> Option<(u32, u32)> {
    match factorize64(n as u64).into_iter().collect::<Vec<_>>()[..] {
        [(p, e)] => Some((p as u32, e as u32)),
        _ => None,
    }
}

/// Primitive vectors up to unit scaling: `(1, t)` and `(s, 1)` with `p | s`.
fn lines(n: u32, p: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..n).map(|t| (1, t)).collect();
    v.extend((0..n).step_by(p as usize).map(|s| (s, 1)));
    v
}

fn is_eigenline(g: &Mat2, (x, y): (u32, u32)) -> bool {
    let n = g.n as u64;
    let (x, y) = (x as u64, y as u64);
    let gx = (g.a as u64 * x + g.b as u64 * y) % n;
    let gy = (g.c as u64 * x + g.d as u64 * y) % n;
    if x == 1 {
        gy == gx * y % n
    } else {
        gx == gy * x % n
    }
}

/// A matrix `h` with `h^-1 G h` diagonal, found as two common eigenlines spanning
/// the module. Supported moduli: p in {3, 5, 7} and p^2 in {9, 25}.
pub fn is_diagonalizable(g: &Gl2Subgroup) -> Result<Option<Mat2>, MatGroupError> {
    let n = g.n;
    let p = match prime_power(n) {
        Some((p @ (3 | 5 | 7), 1)) | Some((p @ (3 | 5), 2)) => p,
        _ => return Err(MatGroupError::UnsupportedModulus(n)),
    };
    let common: Vec<(u32, u32)> =
        lines(n, p).into_iter().filter(|&v| g.generators.iter().all(|m| is_eigenline(m, v))).collect();
    for (i, &(x1, y1)) in common.iter().enumerate() {
        for &(x2, y2) in &common[i + 1..] {
            let h = Mat2::new(n, x1 as i64, x2 as i64, y1 as i64, y2 as i64);
            if h.is_invertible() {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}
