use super::{gl2_elements, Gl2Subgroup, Mat2, MatGroupError};
use num_prime::nt_funcs::factorize64;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

/// Abelian subgroup of GL(2, Z/nZ) that could be the image of a mod-n Galois representation.
#[derive(Clone, Debug)]
pub struct AbelianCandidate {
    pub group: Gl2Subgroup,
    pub invariants: Vec<u32>,
    /// `{(tr h, det h)}`.
    pub pairs: BTreeSet<(u32, u32)>,
    /// For `n = p^e` with `e >= 2`: `{(tr N, det N) mod p}` over `h = 1 + pN` in the group,
    /// read modulo p^2. Empty otherwise.
    pub lifted: BTreeSet<(u32, u32)>,
}

impl AbelianCandidate {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `"Z/2 x Z/4"`, or `"0"` when trivial.
    pub fn structure(&self) -> String {
        if self.invariants.is_empty() {
            return "0".into();
        }
        self.invariants.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" x ")
    }
}

/// `(p, e)` when n is a prime power with `e >= 2`.
pub(crate) fn higher_prime_power(n: u32) -> Option<(u32, u32)> {
    match factorize64(n as u64).into_iter().collect::<Vec<_>>()[..] {
        [(p, e)] if e >= 2 => Some((p as u32, e as u32)),
        _ => None,
    }
}

fn lifted_pairs(g: &Gl2Subgroup) -> BTreeSet<(u32, u32)> {
    let Some((p, _)) = higher_prime_power(g.n) else { return BTreeSet::new() };
    g.elements()
        .iter()
        .map(|h| h.reduce(p * p))
        .filter(|h| h.reduce(p).is_identity())
        .map(|h| {
            let nm = Mat2::new(p, (h.a / p) as i64, (h.b / p) as i64, (h.c / p) as i64, (h.d / p) as i64);
            (nm.tr(), nm.det())
        })
        .collect()
}

fn conj_key(g: &Gl2Subgroup, h: &Mat2, hi: &Mat2) -> Vec<u32> {
    let mut k: Vec<u32> = g.elements().iter().map(|x| hi.mul(x).mul(h).encode()).collect();
    k.sort_unstable();
    k
}

fn enumerate(n: u32) -> Vec<AbelianCandidate> {
    let all = gl2_elements(n);
    let inverses: Vec<Mat2> = all.iter().map(|h| h.inv().unwrap()).collect();
    let minus_one = n - 1;
    let conj_elems: Vec<Mat2> =
        all.iter().copied().filter(|c| c.tr() == 0 && c.det() == minus_one && c.mul(c).is_identity()).collect();
    // conjugacy class representatives
    let mut covered: HashSet<Mat2> = HashSet::new();
    let mut reps = Vec::new();
    for c in &conj_elems {
        if covered.contains(c) {
            continue;
        }
        reps.push(*c);
        for (h, hi) in all.iter().zip(&inverses) {
            covered.insert(hi.mul(c).mul(h));
        }
    }
    // all abelian subgroups containing some representative
    let mut found: HashSet<Vec<u32>> = HashSet::new();
    let mut groups: Vec<Gl2Subgroup> = Vec::new();
    for c in reps {
        let centralizer: Vec<Mat2> = all.iter().copied().filter(|z| z.commutes(&c)).collect();
        let start = Gl2Subgroup::generate(n, &[c]).unwrap();
        found.insert(start.key());
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for z in &centralizer {
                if a.contains(z) || !a.generators.iter().all(|g| g.commutes(z)) {
                    continue;
                }
                let mut gens = a.generators.clone();
                gens.push(*z);
                let b = Gl2Subgroup::generate(n, &gens).unwrap();
                if found.insert(b.key()) {
                    queue.push_back(b);
                }
            }
            groups.push(a);
        }
    }
    groups.retain(Gl2Subgroup::is_det_surjective);
    groups.sort_by_key(|g| (g.order(), g.key()));
    // one representative per GL-conjugacy class
    let mut orbit_seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for g in groups {
        if orbit_seen.contains(&g.key()) {
            continue;
        }
        for (h, hi) in all.iter().zip(&inverses) {
            orbit_seen.insert(conj_key(&g, h, hi));
        }
        out.push(AbelianCandidate {
            invariants: g.abelian_invariants().expect("abelian by construction"),
            pairs: g.fingerprint(),
            lifted: lifted_pairs(&g),
            group: g,
        });
    }
    out
}

static CACHE: [OnceLock<Vec<AbelianCandidate>>; 10] = [const { OnceLock::new() }; 10];

/// Abelian subgroups of GL(2, Z/nZ) with surjective determinant containing an element
/// `c` with `c^2 = 1`, `tr c = 0`, `det c = -1`, one per conjugacy class. Computed once.
pub fn abelian_candidates(n: u32) -> Result<&'static [AbelianCandidate], MatGroupError> {
    if !(2..=9).contains(&n) {
        return Err(MatGroupError::UnsupportedModulus(n));
    }
    Ok(CACHE[n as usize].get_or_init(|| enumerate(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(n: u32) -> BTreeSet<usize> {
        abelian_candidates(n).unwrap().iter().map(AbelianCandidate::order).collect()
    }

    #[test]
    fn small_levels() {
        assert_eq!(orders(2), BTreeSet::from([1, 2, 3]));
        assert_eq!(orders(3), BTreeSet::from([2, 4]));
        assert_eq!(orders(5), BTreeSet::from([4, 8, 16]));
        let s: Vec<String> = abelian_candidates(5).unwrap().iter().map(|c| c.structure()).collect();
        assert!(s.contains(&"Z/4".to_string()) && s.contains(&"Z/2 x Z/4".to_string()) && s.contains(&"Z/4 x Z/4".to_string()));
        assert!(abelian_candidates(10).is_err());
        assert!(abelian_candidates(1).is_err());
    }

    #[test]
    fn candidates_are_pairwise_nonconjugate_and_valid() {
        for n in [3, 4, 5, 6] {
            let cands = abelian_candidates(n).unwrap();
            let all = gl2_elements(n);
            for (i, a) in cands.iter().enumerate() {
                assert!(a.group.is_abelian() && a.group.is_det_surjective() && a.group.has_conjugation_element());
                for b in &cands[i + 1..] {
                    if a.order() == b.order() {
                        assert!(all.iter().all(|h| a.group.conjugate(h).key() != b.group.key()));
                    }
                }
            }
        }
    }

    #[test]
    fn level_9_lifts() {
        let cands = abelian_candidates(9).unwrap();
        assert!(!cands.is_empty());
        for c in cands {
            assert!(c.group.is_abelian());
            // the kernel of reduction mod 3 always contains the identity, so (tr 0, det 0)
            assert!(c.lifted.contains(&(0, 0)));
            // diagonalizable mod 9, so every lifted characteristic polynomial splits mod 3
            for &(t, d) in &c.lifted {
                assert!((0..3).any(|x| (x * x + 3 * 3 - t * x + d) % 3 == 0), "{t} {d}");
            }
        }
        assert!(abelian_candidates(3).unwrap().iter().all(|c| c.lifted.is_empty()));
    }
}
