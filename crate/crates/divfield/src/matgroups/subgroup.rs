use super::mat::{is_unit, Mat2};
use super::MatGroupError;
use num_prime::nt_funcs::factorize64;
use std::collections::{BTreeSet, HashSet};

/// Finite subgroup of GL(2, Z/nZ) with its full element list, sorted by encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Subgroup {
    pub n: u32,
    pub generators: Vec<Mat2>,
    elements: Vec<Mat2>,
}

fn closure(n: u32, gens: &[Mat2]) -> Vec<Mat2> {
    let id = Mat2::identity(n);
    let mut seen: HashSet<Mat2> = HashSet::from([id]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut v: Vec<Mat2> = seen.into_iter().collect();
    v.sort_by_key(Mat2::encode);
    v
}

impl Gl2Subgroup {
    /// Subgroup generated by `gens`; every generator must be invertible mod n.
    pub fn generate(n: u32, gens: &[Mat2]) -> Result<Self, MatGroupError> {
        for g in gens {
            if g.n != n || !g.is_invertible() {
                return Err(MatGroupError::NotInvertible(*g));
            }
        }
        Ok(Gl2Subgroup { n, generators: gens.to_vec(), elements: closure(n, gens) })
    }

    /// Checks closure under products and inverses.
    pub fn from_elements(n: u32, elements: &[Mat2]) -> Result<Self, MatGroupError> {
        let set: HashSet<Mat2> = elements.iter().copied().collect();
        if !set.contains(&Mat2::identity(n)) {
            return Err(MatGroupError::NotASubgroup);
        }
        for x in &set {
            if x.n != n || !x.is_invertible() {
                return Err(MatGroupError::NotInvertible(*x));
            }
            for y in &set {
                if !set.contains(&x.mul(y)) {
                    return Err(MatGroupError::NotASubgroup);
                }
            }
        }
        let mut v: Vec<Mat2> = set.into_iter().collect();
        v.sort_by_key(Mat2::encode);
        Ok(Gl2Subgroup { n, generators: v.clone(), elements: v })
    }

    pub fn full(n: u32) -> Self {
        let elements = super::gl2_elements(n);
        Gl2Subgroup { n, generators: elements.clone(), elements }
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Mat2) -> bool {
        self.elements.binary_search_by_key(&g.encode(), Mat2::encode).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Gl2Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, x)| gens[i + 1..].iter().all(|y| x.commutes(y)))
    }

    /// `h^-1 G h`.
    pub fn conjugate(&self, h: &Mat2) -> Gl2Subgroup {
        let hi = h.inv().expect("invertible conjugator");
        let map = |g: &Mat2| hi.mul(g).mul(h);
        let mut elements: Vec<Mat2> = self.elements.iter().map(map).collect();
        elements.sort_by_key(Mat2::encode);
        Gl2Subgroup { n: self.n, generators: self.generators.iter().map(map).collect(), elements }
    }

    /// Image modulo a divisor `m` of n.
    pub fn reduce(&self, m: u32) -> Gl2Subgroup {
        let gens: Vec<Mat2> = self.generators.iter().map(|g| g.reduce(m)).collect();
        Gl2Subgroup { n: m, elements: closure(m, &gens), generators: gens }
    }

    pub fn centralizer_in(&self, ambient: &Gl2Subgroup) -> Gl2Subgroup {
        let elements: Vec<Mat2> =
            ambient.elements.iter().copied().filter(|x| self.generators.iter().all(|g| g.commutes(x))).collect();
        Gl2Subgroup { n: self.n, generators: elements.clone(), elements }
    }

    /// Subgroup generated by all commutators `x^-1 y^-1 x y`.
    pub fn commutator_subgroup(&self) -> Gl2Subgroup {
        let mut comms: BTreeSet<Mat2> = BTreeSet::new();
        for x in &self.elements {
            let xi = x.inv().unwrap();
            for y in &self.elements {
                comms.insert(xi.mul(&y.inv().unwrap()).mul(x).mul(y));
            }
        }
        let gens: Vec<Mat2> = comms.into_iter().collect();
        Gl2Subgroup { n: self.n, elements: closure(self.n, &gens), generators: gens }
    }

    pub fn det_image(&self) -> BTreeSet<u32> {
        self.elements.iter().map(Mat2::det).collect()
    }

    pub fn is_det_surjective(&self) -> bool {
        let units = (0..self.n).filter(|&u| is_unit(u, self.n)).count();
        self.det_image().len() == units
    }

    /// Contains an element with the characteristic polynomial of complex conjugation.
    pub fn has_conjugation_element(&self) -> bool {
        self.elements.iter().any(|g| g.tr() == 0 && g.det() == self.n - 1 && g.mul(g).is_identity())
    }

    /// `{(tr g, det g)}` over the group.
    pub fn fingerprint(&self) -> BTreeSet<(u32, u32)> {
        self.elements.iter().map(|g| (g.tr(), g.det())).collect()
    }

    /// Invariant factors `d1 | d2 | ...` of an abelian group (empty for trivial).
    pub fn abelian_invariants(&self) -> Option<Vec<u32>> {
        if !self.is_abelian() {
            return None;
        }
        let order = self.order() as u64;
        // per prime p: partition of the p-part, from counts of elements killed by p^i
        let mut factors_by_rank: Vec<u32> = Vec::new();
        for (p, e) in factorize64(order) {
            let p = p as u32;
            let mut ranks = vec![0u32];
            for i in 1..=e as u32 {
                let k = p.pow(i) as u64;
                let killed = self.elements.iter().filter(|g| g.pow(k).is_identity()).count() as f64;
                ranks.push(killed.log(p as f64).round() as u32);
            }
            // number of cyclic factors of order >= p^i is ranks[i] - ranks[i-1]
            let mut exps: Vec<u32> = Vec::new();
            for i in 1..ranks.len() {
                let ge_i = ranks[i] - ranks[i - 1];
                let ge_next = if i + 1 < ranks.len() { ranks[i + 1] - ranks[i] } else { 0 };
                for _ in 0..(ge_i - ge_next) {
                    exps.push(i as u32);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (j, x) in exps.iter().enumerate() {
                if factors_by_rank.len() <= j {
                    factors_by_rank.push(1);
                }
                factors_by_rank[j] *= p.pow(*x);
            }
        }
        factors_by_rank.reverse();
        Some(factors_by_rank)
    }

    /// Sorted element encodings, usable as a set key.
    pub fn key(&self) -> Vec<u32> {
        self.elements.iter().map(Mat2::encode).collect()
    }
}
